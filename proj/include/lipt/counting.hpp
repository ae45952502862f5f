#ifndef LIPT_COUNTING_HPP
#define LIPT_COUNTING_HPP

#include <cstdint>
#include <vector>

#include "lipt/boolfn.hpp"
#include "lipt/rational.hpp"
#include "lipt/systems.hpp"

namespace lipt {

/// gamma = (eta^k/2)^(1/(k-2)) and delta = eta^k/2. gamma is generally
/// irrational; gamma_approx is rounded toward zero and for exact gating use
/// below_gamma, which compares m^(k-2) < eta^k/2 in rational arithmetic.
struct CountingConstants {
    Q eta;
    int k = 0;
    Q delta;
    Q gamma_pow;         // eta^k / 2 = gamma^(k-2), exact
    double gamma_approx; // rounded toward zero

    /// Exact test for m < gamma (m >= 0): m^(k-2) < eta^k/2.
    bool below_gamma(const Q& m) const { return m.pow(k - 2) < gamma_pow; }
};

CountingConstants counting_constants(const Q& eta, int k);

/// Hypothesis of the counting lemma at a coset tuple: M u = 0 in the
/// quotient, each restriction gamma-uniform, density >= eta where sigma=1
/// and <= 1-eta where sigma=0.
struct CountingHypothesis {
    InducedSystem sys;
    Subspace h;
    std::vector<F2Vector> u; // coset representatives, one per column
    Q eta;

    CountingHypothesis(const InducedSystem& s, const Subspace& hh,
                       std::vector<F2Vector> uu, const Q& e)
        : sys(s), h(hh), u(std::move(uu)), eta(e) {}
};

struct CountingReport {
    bool quotient_solution = false; // M u = 0 in F_2^n/H
    bool hypothesis_holds = false;
    std::vector<Q> densities;
    std::vector<Q> max_coeffs;
    CountingConstants constants;
    std::uint64_t count = 0;
    Q threshold;            // delta * |H|^(k-m) (k-1 for single equations)
    bool bound_asserted = false; // single-equation case: count >= threshold is hard
    bool bound_holds = false;
};

/// Measures the hypothesis and counts solutions confined to the prescribed
/// cosets. For one-row systems the bound count >= delta |H|^{k-1} is a hard
/// assertion whenever the hypothesis verifies; for higher-rank complexity-1
/// systems the count and threshold are reported without an assertion.
CountingReport check_and_count(const BooleanFunction& f, const CountingHypothesis& hyp);

/// Exact count of inducing tuples with x_i in u_i + H, via kernel enumeration
/// of the coset-shifted system over H^(k-m).
std::uint64_t coset_restricted_count(const BooleanFunction& f, const InducedSystem& sys,
                                     const Subspace& h, const std::vector<F2Vector>& u);

} // namespace lipt

#endif
