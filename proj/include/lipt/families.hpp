#ifndef LIPT_FAMILIES_HPP
#define LIPT_FAMILIES_HPP

#include <functional>
#include <vector>

#include "lipt/boolfn.hpp"
#include "lipt/systems.hpp"

namespace lipt {

/// Family whose free functions are exactly the degree-<=d polynomials: one
/// matrix of shape (2^(d+1)-d-2) x 2^(d+1) encoding the linear relations of
/// the evaluation pattern {alpha + sum_{i in S} alpha_i}, paired with every
/// odd-weight sigma. d <= 3.
Family rm_family(int d);

/// The shared matrix of rm_family(d) before pairing with sigmas (RREF).
F2Matrix rm_matrix(int d);

/// Degree test via the ANF (Moebius transform).
bool rm_membership(const BooleanFunction& f, int d);

/// Degree test via the derivative identity, enumerating all
/// (alpha, alpha_1..alpha_{d+1}) tuples; budget n*(d+2) <= 26. The two
/// implementations must agree; tests cross-check them.
bool rm_membership_via_identity(const BooleanFunction& f, int d);

/// System whose induced solutions are the linear images L: F_2^d -> F_2^n
/// with f(L(p)) = 1_S(p) for every p; for injective L that is a d-dim
/// subspace restriction with support exactly S.
struct ObstructionSystem {
    int d = 0;
    std::uint32_t point_set = 0;  // S as a bitmask over F_2^d point indices
    InducedSystem system;         // (M_d, sigma_S); degenerate flag set when k <= 2
};

/// M_d of shape (2^d - d) x 2^d with M_d A_d = 0, A_d the point-evaluation
/// matrix of F_2^d in little-endian order; sigma_S = indicator of S. d <= 4.
ObstructionSystem obstruction_system(int d, std::uint32_t point_set);

/// Minimal obstructions of a linear-invariant subspace-hereditary predicate:
/// all (d, S) with d <= max_d where 1_S fails the predicate but every proper
/// subspace restriction satisfies it. The predicate is verified exhaustively
/// for linear invariance and heredity on dimensions <= max_d first.
Family family_from_oracle(const std::function<bool(const BooleanFunction&)>& prop,
                          int max_d);

} // namespace lipt

#endif
