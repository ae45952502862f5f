#ifndef LIPT_TESTER_HPP
#define LIPT_TESTER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipt/boolfn.hpp"
#include "lipt/rational.hpp"
#include "lipt/regularity.hpp"
#include "lipt/systems.hpp"

namespace lipt {

enum class SampleMode {
    subspace, // uniform over d-dimensional subspaces
    points    // span of d i.i.d. uniform points (dimension may be < d)
};

struct TesterConfig {
    Q eps = Q(1, 4);
    int d = 1;              // subspace dimension, the stand-in for d(eps)
    int trials = 1;
    int small_n_cutoff = 0; // exhaustive below this, the stand-in for N_F(eps)
    std::uint64_t seed = 0;
    SampleMode mode = SampleMode::subspace;
};

struct Verdict {
    bool accept = true;
    std::optional<Witness> witness; // lifted to F_2^n and re-verified
    std::uint64_t queries_made = 0;
    bool exhaustive = false;
    int rejecting_trial = -1;
};

/// One-sided oblivious tester: query a random d-dim subspace in full and
/// reject exactly when the restriction is not F-free. Witnesses are lifted
/// back to the ambient space and re-verified against f before rejecting.
Verdict oblivious_test(const BooleanFunction& f, const Family& fam, const TesterConfig& cfg);

struct RejectEstimate {
    int trials = 0;
    int rejections = 0;
    Q estimate;
    double wilson_low = 0.0; // 95% Wilson interval
    double wilson_high = 0.0;
};

/// Fraction of independent single-subspace trials that reject.
RejectEstimate estimate_reject_prob(const BooleanFunction& f, const Family& fam, int d,
                                    int trials, std::uint64_t seed,
                                    SampleMode mode = SampleMode::subspace);

struct SpanQueries {
    Subspace h;
    std::vector<bool> answers; // f on enumerate(h), in enumeration order
};

/// The adaptive-to-span transformation: query all points in the span of a
/// trace. The random-nonsingular-composition distribution property is
/// exercised in the tests.
SpanQueries canonical_wrap(const std::vector<F2Vector>& trace, const BooleanFunction& f);

struct CosetRewrite {
    F2Vector rep;          // H-coset representative (or 0 for the final step)
    std::string old_rule;  // "mixed", "const0", "const1"
    bool new_value = false;
    int step = 0;          // 1, 2 or 3
};

struct ModifiedFunction {
    BooleanFunction fn;
    std::vector<CosetRewrite> change_log;
    Q dist; // distance(fn, f), asserted <= eps

    explicit ModifiedFunction(const BooleanFunction& base) : fn(base) {}
};

/// The three-step rounding procedure: (1) cosets whose density disagrees
/// with their transversal subcoset by more than eps/8 become constant on the
/// majority side of the subcoset; (2) near-constant subcosets (within eps/4)
/// round their whole coset; (3) H itself is rounded to the density side of
/// the structured block W/H''. The result is asserted eps-close to f.
ModifiedFunction build_modified_function(const BooleanFunction& f, const Subspace& h,
                                         const Subspace& h_prime,
                                         const UniformTransversal& trans,
                                         const Subspace& w, const Subspace& h_dprime,
                                         const Q& eps);

/// mu(u) = 1 if F is constant 1 on u+H, 0 if constant 0, * otherwise.
/// codim(H) <= 8.
PartialPattern pattern_of(const BooleanFunction& fn, const Subspace& h);

} // namespace lipt

#endif
