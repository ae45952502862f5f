#ifndef LIPT_REGULARITY_HPP
#define LIPT_REGULARITY_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "lipt/boolfn.hpp"
#include "lipt/f2core.hpp"
#include "lipt/rational.hpp"

namespace lipt {

/// Per-coset annotation of an H-based partition: the coset g+H identified by
/// its canonical representative, the ones-count of f there, and the maximal
/// nontrivial Fourier coefficient of the restriction (numerator over 2^dim H,
/// witness character in H-basis coordinates).
struct CosetRecord {
    F2Vector rep;
    std::uint64_t ones = 0;
    std::int64_t max_num = 0;
    std::uint32_t max_alpha = 0;
};

struct RegularityPartition {
    Subspace h;
    int order = 0;       // codimension of h
    Q eps_used;          // uniformity parameter this partition was built for
    std::vector<CosetRecord> cosets;
    Q index;             // (1/2^n) sum over g of rho^2(f_H^{+g})
    Q bad_fraction;      // fraction of cosets not eps_used-uniform
    bool budget_flag = false;

    RegularityPartition() : h(0) {}

    Q coset_density(size_t i) const {
        return Q::dyadic(std::int64_t(cosets[i].ones), h.dim());
    }
    Q coset_max_coeff(size_t i) const {
        return Q::dyadic(cosets[i].max_num, h.dim());
    }
    /// Number of cosets whose restriction is not eps-uniform.
    int bad_count(const Q& eps) const;
};

/// Exact index ind(f,H) = mean squared coset density.
Q index(const BooleanFunction& f, const Subspace& h);

/// Full per-coset measurement (densities, spectra maxima, index).
RegularityPartition measure_partition(const BooleanFunction& f, const Subspace& h,
                                      const Q& eps);

/// Refines H_init until at most an eps-fraction of cosets is non-uniform, by
/// pooling up to 4 witness characters per round and intersecting H with their
/// orthogonal complements. Stops at max_order with the budget flag set.
RegularityPartition green_regularize(const BooleanFunction& f, const Q& eps,
                                     const Subspace& h_init, int max_order);

struct DefectReport {
    Q rho;
    Q phi;        // fraction of cosets with |rho - rho_g| > threshold
    Q threshold;
    bool applicable = false; // phi >= threshold
    Q bound;      // rho^2 + min(phi, threshold)^3 / 2
    Q index;
    bool holds = false; // index > bound (must hold whenever applicable)
};

DefectReport defect_check(const BooleanFunction& f, const Subspace& h, const Q& threshold);

struct IndexGapReport {
    Q gap;                  // index(f,H') - index(f,H)
    bool hypothesis = false; // gap <= eps^4/2
    std::int64_t bad_cosets = 0; // H-cosets with too many deviating subcosets
    std::int64_t allowed = 0;    // eps * 2^k
    bool conclusion = false;     // bad_cosets <= allowed
};

/// Verifies the small-index-gap => stable-densities implication on an
/// instance. Whenever `hypothesis` holds, `conclusion` must.
IndexGapReport index_gap_to_density(const BooleanFunction& f, const Subspace& h,
                                    const Subspace& h_prime, const Q& eps);

struct FunctionalDiagnostics {
    bool order_bounds = false;      // order(H) >= m, order(H') <= max_order
    bool coarse_uniformity = false; // few non-E(0)-uniform H-cosets
    bool fine_uniformity = false;   // per-H-coset count of non-E(k)-uniform H'-cosets
    bool density_transfer = false;  // few H-cosets with many deviating subcosets
    bool budget_flag = false;
    int rounds = 0;
};

struct FunctionalResult {
    RegularityPartition coarse; // H
    RegularityPartition fine;   // H' <= H
    FunctionalDiagnostics diagnostics;
};

/// Iterates green_regularize with uniformity E(order)*2^-order until the
/// index gap drops below E(0)^4/2 or budgets run out. E is clamped to be
/// monotone non-increasing.
FunctionalResult functional_regularize(const BooleanFunction& f, int m,
                                       const std::function<Q(int)>& E,
                                       int max_order, int max_rounds);

/// Injective linear map I : F_2^n/H -> F_2^n/H' with I(u)+H' inside u+H.
/// Quotient elements are addressed by their transversal index.
class UniformTransversal {
  public:
    UniformTransversal(const Subspace& h, const Subspace& h_prime,
                       std::vector<std::uint32_t> basis_shifts);

    const Subspace& h() const { return h_; }
    const Subspace& h_prime() const { return hp_; }

    /// Shift vector representing I(u) for quotient index u, canonical mod H'.
    F2Vector shift(std::uint32_t quotient_index) const;

  private:
    Subspace h_, hp_;
    std::vector<std::uint32_t> basis_shifts_; // image shifts of quotient basis
};

struct TransversalResult {
    UniformTransversal transversal;
    int tries = 0;
};

/// Samples random coset shifts per quotient basis vector and retries until
/// both guarantees hold on this instance: every nonzero u has an
/// eps_uniform-uniform restriction f_{H'}^{+I(u)}, and at most a
/// density_eps-fraction of g deviate in density by more than density_eps.
TransversalResult pick_uniform_transversal(const BooleanFunction& f, const Subspace& h,
                                           const Subspace& h_prime, const Q& eps_uniform,
                                           const Q& density_eps, Rng& rng, int max_tries);

struct StructuredBlock {
    Subspace h;          // ambient partition subspace
    Subspace k_quotient; // d-dim subspace of F_2^order(h) (quotient coordinates)
    bool dense = false;  // all nonzero u in K have rho >= 1/2; else all < 1/2
    Q gamma;

    StructuredBlock() : h(0), k_quotient(0) {}

    /// Shifts in the ambient space representing the nonzero elements of K.
    std::vector<F2Vector> nonzero_shifts() const;
    /// W = preimage of K: the subspace spanned by H and the K shifts.
    Subspace w_subspace() const;
};

/// Regularity + Turan + Ramsey pipeline: finds H and a d-dim quotient
/// subspace K whose nonzero cosets are all gamma-uniform and all lie on one
/// side of density 1/2. Re-verified from scratch before returning.
StructuredBlock find_structured_block(const BooleanFunction& f, int d, const Q& gamma,
                                      int max_r, int max_order);

} // namespace lipt

#endif
