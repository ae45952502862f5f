#include "lipt/tester.hpp"

#include <cmath>

#include "lipt/parallel.hpp"

namespace lipt {

namespace {

Subspace sample_subspace(int n, int d, SampleMode mode, Rng& rng) {
    if (mode == SampleMode::subspace) return random_subspace(n, d, rng);
    std::vector<F2Vector> pts;
    for (int i = 0; i < d; ++i) pts.push_back(F2Vector(rng.bits(n), n));
    return span(pts);
}

/// Decision core: sees only the restricted table and the family. Keeping n
/// out of this function is what makes the tester oblivious.
std::optional<Witness> decide_restriction(const BooleanFunction& restricted,
                                          const Family& fam) {
    FreenessResult r = is_free(restricted, fam);
    if (r.free) return std::nullopt;
    return r.witness;
}

Witness lift_witness(const Witness& w, const Subspace& h) {
    Witness out;
    out.system_index = w.system_index;
    std::vector<F2Vector> basis = h.basis();
    for (const F2Vector& y : w.x) {
        std::uint32_t acc = 0;
        for (int i = 0; i < y.dim; ++i)
            if (y.get(i)) acc ^= basis[i].bits;
        out.x.push_back(F2Vector(acc, h.ambient_dim()));
    }
    return out;
}

} // namespace

Verdict oblivious_test(const BooleanFunction& f, const Family& fam, const TesterConfig& cfg) {
    if (cfg.d < 1 || cfg.trials < 1) throw input_error("oblivious_test: bad config");
    int n = f.dim();
    Verdict v;
    if (n <= cfg.small_n_cutoff || cfg.d >= n) {
        v.exhaustive = true;
        v.queries_made = f.size();
        FreenessResult r = is_free(f, fam);
        v.accept = r.free;
        if (!r.free) {
            v.witness = r.witness;
            v.rejecting_trial = 0;
        }
        return v;
    }
    std::vector<InducedSystem> systems = fam.realized();
    Rng base = make_rng(cfg.seed);
    auto run_trial = [&](int t, Verdict& out) {
        Rng trial_rng = base.split(std::uint64_t(t));
        Subspace h = sample_subspace(n, cfg.d, cfg.mode, trial_rng);
        BooleanFunction restricted = restrict(f, h, F2Vector(0, n));
        out.queries_made = restricted.size();
        if (auto w = decide_restriction(restricted, fam)) {
            Witness lifted = lift_witness(*w, h);
            if (!induces_at(f, systems[lifted.system_index], lifted.x))
                throw std::logic_error("lifted witness failed re-verification");
            out.accept = false;
            out.witness = lifted;
            out.rejecting_trial = t;
        }
    };
    if (thread_count() > 1 && cfg.trials > 1) {
        // all trials evaluated; aggregation mirrors the sequential walk (first
        // rejection by trial index, queries counted up to that trial), so the
        // verdict does not depend on scheduling or worker count
        std::vector<Verdict> per_trial(cfg.trials);
        parallel_chunks(cfg.trials, [&](int t) { run_trial(t, per_trial[t]); });
        for (const Verdict& tv : per_trial) {
            v.queries_made += tv.queries_made;
            if (!tv.accept) {
                v.accept = false;
                v.witness = tv.witness;
                v.rejecting_trial = tv.rejecting_trial;
                break;
            }
        }
        return v;
    }
    for (int t = 0; t < cfg.trials; ++t) {
        Verdict tv;
        run_trial(t, tv);
        v.queries_made += tv.queries_made;
        if (!tv.accept) {
            v.accept = false;
            v.witness = tv.witness;
            v.rejecting_trial = t;
            return v;
        }
    }
    return v;
}

RejectEstimate estimate_reject_prob(const BooleanFunction& f, const Family& fam, int d,
                                    int trials, std::uint64_t seed, SampleMode mode) {
    RejectEstimate est;
    est.trials = trials;
    TesterConfig cfg;
    cfg.d = d;
    cfg.trials = 1;
    cfg.small_n_cutoff = 0;
    cfg.mode = mode;
    for (int t = 0; t < trials; ++t) {
        cfg.seed = seed * 0x10001 + std::uint64_t(t);
        if (!oblivious_test(f, fam, cfg).accept) ++est.rejections;
    }
    est.estimate = Q(est.rejections, trials);
    double p = double(est.rejections) / trials;
    double z = 1.959963984540054; // 95%
    double nn = trials;
    double denom = 1 + z * z / nn;
    double center = p + z * z / (2 * nn);
    double spread = z * std::sqrt(p * (1 - p) / nn + z * z / (4 * nn * nn));
    est.wilson_low = est.rejections == 0 ? 0.0 : std::max(0.0, (center - spread) / denom);
    est.wilson_high =
        est.rejections == trials ? 1.0 : std::min(1.0, (center + spread) / denom);
    return est;
}

SpanQueries canonical_wrap(const std::vector<F2Vector>& trace, const BooleanFunction& f) {
    if (trace.empty()) throw input_error("canonical_wrap: empty trace");
    SpanQueries q{span(trace), {}};
    for (const F2Vector& x : enumerate(q.h)) q.answers.push_back(f.eval(x));
    return q;
}

ModifiedFunction build_modified_function(const BooleanFunction& f, const Subspace& h,
                                         const Subspace& h_prime,
                                         const UniformTransversal& trans,
                                         const Subspace& w, const Subspace& h_dprime,
                                         const Q& eps) {
    int n = f.dim();
    if (!h.contains_subspace(h_prime) || !h_prime.contains_subspace(w) ||
        !w.contains_subspace(h_dprime))
        throw input_error("build_modified_function: need H'' <= W <= H' <= H");

    ModifiedFunction out(f);
    BooleanFunction& F = out.fn;
    int k = h.codim();
    std::uint64_t coset_size = std::uint64_t(1) << h.dim();

    auto coset_points = [&](const F2Vector& rep) {
        std::vector<std::uint32_t> pts;
        pts.reserve(coset_size);
        for (const F2Vector& e : enumerate(h)) pts.push_back(rep.bits ^ e.bits);
        return pts;
    };
    auto coset_ones_of = [&](const BooleanFunction& fn, const F2Vector& rep) {
        std::uint64_t c = 0;
        for (std::uint32_t p : coset_points(rep)) c += fn.get(p);
        return c;
    };
    auto rewrite = [&](const F2Vector& rep, bool value, int step) {
        std::uint64_t ones = coset_ones_of(F, rep);
        std::string old_rule =
            ones == 0 ? "const0" : (ones == coset_size ? "const1" : "mixed");
        bool changed = value ? ones != coset_size : ones != 0;
        for (std::uint32_t p : coset_points(rep)) F.set(p, value);
        if (changed) out.change_log.push_back(CosetRewrite{rep, old_rule, value, step});
    };
    auto density_on = [&](const BooleanFunction& fn, const Subspace& sub, const F2Vector& g) {
        return density(restrict(fn, sub, g));
    };

    // Step 1: density mismatch between a coset and its transversal subcoset.
    for (std::uint32_t u = 1; u < (std::uint32_t(1) << k); ++u) {
        F2Vector rep = h.rep_of_index(u);
        Q rho_coset = Q::dyadic(std::int64_t(coset_ones_of(F, rep)), h.dim());
        Q rho_sub = density_on(F, h_prime, trans.shift(u));
        if ((rho_coset - rho_sub).abs() > eps / Q(8))
            rewrite(rep, !(rho_sub < Q(1, 2)), 1);
    }

    // Step 2: near-constant transversal subcosets round their whole coset.
    for (std::uint32_t u = 1; u < (std::uint32_t(1) << k); ++u) {
        F2Vector rep = h.rep_of_index(u);
        Q rho_sub = density_on(F, h_prime, trans.shift(u));
        if (rho_sub > Q(1) - eps / Q(4)) rewrite(rep, true, 2);
        else if (rho_sub < eps / Q(4)) rewrite(rep, false, 2);
    }

    // Step 3: H itself takes the uniform density side of W/H''.
    {
        std::vector<F2Vector> comp;
        {
            std::vector<F2Vector> acc = h_dprime.basis();
            for (const F2Vector& b : w.basis()) {
                Subspace before(n, acc);
                acc.push_back(b);
                if (Subspace(n, acc).dim() > before.dim()) comp.push_back(b);
                else acc.pop_back();
            }
        }
        Subspace comp_span = comp.empty() ? Subspace(n) : Subspace(n, comp);
        bool all_dense = true, all_sparse = true;
        for (const F2Vector& v : enumerate(comp_span)) {
            if (v.is_zero()) continue; // nonzero cosets of W/H'' only
            Q rho = density_on(F, h_dprime, v);
            if (rho < Q(1, 2)) all_dense = false;
            else all_sparse = false;
        }
        if (!all_dense && !all_sparse)
            throw input_error("build_modified_function: W/H'' cosets are not one-sided "
                              "(inputs do not come from a structured block)");
        rewrite(F2Vector(0, n), all_dense, 3);
    }

    out.dist = distance(out.fn, f);
    if (out.dist > eps)
        throw input_error("modified function is not eps-close; regularity "
                          "preconditions violated");
    return out;
}

PartialPattern pattern_of(const BooleanFunction& fn, const Subspace& h) {
    int ell = h.codim();
    if (ell > 8) throw budget_error("pattern_of: codimension > 8");
    PartialPattern mu(ell);
    for (std::uint32_t u = 0; u < (std::uint32_t(1) << ell); ++u) {
        BooleanFunction r = restrict(fn, h, h.rep_of_index(u));
        std::uint64_t ones = r.ones();
        if (ones == 0) mu.set(u, 0);
        else if (ones == r.size()) mu.set(u, 1);
        else mu.set(u, PartialPattern::kStar);
    }
    return mu;
}

} // namespace lipt
