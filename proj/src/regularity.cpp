#include "lipt/regularity.hpp"

#include <algorithm>

#include "lipt/extremal.hpp"
#include "lipt/parallel.hpp"

namespace lipt {

namespace {

/// Ones-count of f on every coset of H, indexed by transversal index.
std::vector<std::uint64_t> coset_ones(const BooleanFunction& f, const Subspace& h) {
    std::vector<std::uint64_t> counts(std::uint64_t(1) << h.codim(), 0);
    CosetWalker walker(h);
    std::uint32_t idx = 0;
    if (f.get(0)) ++counts[0];
    for (std::uint32_t x = 1; x < f.size(); ++x) {
        std::uint32_t gray = x ^ (x >> 1);
        idx = walker.flip(ctz32(x));
        if (f.get(gray)) ++counts[idx];
    }
    return counts;
}

Q index_from_counts(const std::vector<std::uint64_t>& counts, int n, int order) {
    std::int64_t sum = 0;
    for (std::uint64_t c : counts) sum += std::int64_t(c) * std::int64_t(c);
    return Q::dyadic(sum, 2 * n - order);
}

/// Lifts a character beta on H (basis coordinates) to alpha in F_2^n with
/// <b_i, alpha> = beta_i: scatter beta onto the pivot positions.
std::uint32_t lift_character(const Subspace& h, std::uint32_t beta) {
    std::uint32_t alpha = 0;
    const auto& pivots = h.pivots();
    for (size_t i = 0; i < pivots.size(); ++i)
        if ((beta >> i) & 1u) alpha |= 1u << pivots[i];
    return alpha;
}

/// H intersected with the hyperplane orthogonal to alpha.
Subspace intersect_orthogonal(const Subspace& h, std::uint32_t alpha) {
    int n = h.ambient_dim();
    F2Vector a(alpha, n);
    std::vector<F2Vector> keep;
    std::optional<F2Vector> pivot;
    for (const F2Vector& b : h.basis()) {
        if (dot(b, a)) {
            if (!pivot) pivot = b;
            else keep.push_back(b ^ *pivot);
        } else {
            keep.push_back(b);
        }
    }
    if (keep.empty()) return Subspace(n);
    return Subspace(n, keep);
}

/// Complement basis of H' inside H: vectors of H spanning H/H'.
std::vector<F2Vector> quotient_complement(const Subspace& h, const Subspace& h_prime) {
    if (!h.contains_subspace(h_prime))
        throw input_error("expected H' <= H");
    std::vector<F2Vector> acc = h_prime.basis();
    std::vector<F2Vector> complement;
    for (const F2Vector& b : h.basis()) {
        Subspace before(h.ambient_dim(), acc);
        acc.push_back(b);
        Subspace after(h.ambient_dim(), acc);
        if (after.dim() > before.dim()) complement.push_back(b);
        else acc.pop_back();
    }
    return complement;
}

} // namespace

int RegularityPartition::bad_count(const Q& eps) const {
    int bad = 0;
    for (size_t i = 0; i < cosets.size(); ++i)
        if (!(coset_max_coeff(i) < eps)) ++bad;
    return bad;
}

Q index(const BooleanFunction& f, const Subspace& h) {
    if (h.ambient_dim() != f.dim()) throw input_error("index: dimension mismatch");
    return index_from_counts(coset_ones(f, h), f.dim(), h.codim());
}

RegularityPartition measure_partition(const BooleanFunction& f, const Subspace& h,
                                      const Q& eps) {
    if (h.ambient_dim() != f.dim()) throw input_error("measure_partition: dimension mismatch");
    RegularityPartition p;
    p.h = h;
    p.order = h.codim();
    p.eps_used = eps;
    std::uint32_t ncosets = std::uint32_t(1) << p.order;
    p.cosets.resize(ncosets);
    parallel_chunks(int(ncosets), [&](int i) {
        CosetRecord& rec = p.cosets[i];
        rec.rep = h.rep_of_index(std::uint32_t(i));
        BooleanFunction r = restrict(f, h, rec.rep);
        rec.ones = r.ones();
        if (r.dim() >= 1) {
            MaxCoeff mc = max_nontrivial_coeff(r);
            rec.max_num = mc.value.num() * (std::int64_t(1) << r.dim()) / mc.value.den();
            rec.max_alpha = mc.alpha.bits;
        }
    });
    std::vector<std::uint64_t> counts;
    for (const CosetRecord& rec : p.cosets) counts.push_back(rec.ones);
    p.index = index_from_counts(counts, f.dim(), p.order);
    p.bad_fraction = Q(p.bad_count(eps), std::int64_t(1) << p.order);
    return p;
}

RegularityPartition green_regularize(const BooleanFunction& f, const Q& eps,
                                     const Subspace& h_init, int max_order) {
    if (!(eps > Q(0)) || !(eps < Q(1)))
        throw input_error("green_regularize: eps must be in (0,1)");
    constexpr int kWitnessPool = 4;
    Subspace h = h_init;
    while (true) {
        RegularityPartition p = measure_partition(f, h, eps);
        if (p.bad_fraction <= eps) return p;
        if (p.order >= max_order) {
            p.budget_flag = true;
            return p;
        }
        // Witness characters of the worst non-uniform cosets, largest
        // coefficient first (energy increment), ties by representative.
        std::vector<size_t> bad;
        for (size_t i = 0; i < p.cosets.size(); ++i)
            if (!(p.coset_max_coeff(i) < eps)) bad.push_back(i);
        std::sort(bad.begin(), bad.end(), [&](size_t a, size_t b) {
            if (p.cosets[a].max_num != p.cosets[b].max_num)
                return p.cosets[a].max_num > p.cosets[b].max_num;
            return p.cosets[a].rep.bits < p.cosets[b].rep.bits;
        });
        std::vector<std::uint32_t> alphas;
        for (size_t i : bad) {
            std::uint32_t alpha = lift_character(h, p.cosets[i].max_alpha);
            if (alpha == 0) continue;
            if (std::find(alphas.begin(), alphas.end(), alpha) == alphas.end())
                alphas.push_back(alpha);
            if (int(alphas.size()) >= kWitnessPool) break;
        }
        for (std::uint32_t alpha : alphas) {
            if (h.codim() >= max_order) break;
            Subspace refined = intersect_orthogonal(h, alpha);
            if (refined.dim() < h.dim()) h = refined;
        }
    }
}

DefectReport defect_check(const BooleanFunction& f, const Subspace& h, const Q& threshold) {
    if (!(threshold > Q(0))) throw input_error("defect_check: threshold must be positive");
    DefectReport rep;
    rep.rho = density(f);
    rep.threshold = threshold;
    int order = h.codim();
    int hd = h.dim();
    auto counts = coset_ones(f, h);
    std::int64_t deviating = 0;
    for (std::uint64_t c : counts) {
        Q rho_g = Q::dyadic(std::int64_t(c), hd);
        if ((rep.rho - rho_g).abs() > threshold) ++deviating;
    }
    rep.phi = Q(deviating, std::int64_t(1) << order);
    rep.applicable = rep.phi >= threshold;
    Q m = rep.phi < threshold ? rep.phi : threshold;
    rep.bound = rep.rho * rep.rho + m.pow(3) / Q(2);
    rep.index = index_from_counts(counts, f.dim(), order);
    rep.holds = rep.index > rep.bound;
    return rep;
}

IndexGapReport index_gap_to_density(const BooleanFunction& f, const Subspace& h,
                                    const Subspace& h_prime, const Q& eps) {
    if (!h.contains_subspace(h_prime)) throw input_error("index_gap_to_density: need H' <= H");
    IndexGapReport rep;
    int n = f.dim();
    int k = h.codim(), ell = h_prime.codim();
    auto counts_h = coset_ones(f, h);
    auto counts_hp = coset_ones(f, h_prime);
    rep.gap = index_from_counts(counts_hp, n, ell) - index_from_counts(counts_h, n, k);
    rep.hypothesis = rep.gap <= eps.pow(4) / Q(2);

    std::vector<F2Vector> comp = quotient_complement(h, h_prime);
    Subspace comp_span(n, comp);
    std::vector<F2Vector> inner = enumerate(comp_span); // H/H' transversal
    // Inner count threshold: more than eps*2^{n-k} many h of |H| deviating;
    // each H'-coset contributes |H'| points, so compare subcoset counts
    // against eps * 2^{ell-k}.
    std::int64_t bad = 0;
    for (std::uint32_t gi = 0; gi < counts_h.size(); ++gi) {
        F2Vector g = h.rep_of_index(gi);
        Q rho_h = Q::dyadic(std::int64_t(counts_h[gi]), n - k);
        std::int64_t deviating = 0;
        for (const F2Vector& w : inner) {
            std::uint32_t idx = h_prime.coset_index(g ^ w);
            Q rho_hp = Q::dyadic(std::int64_t(counts_hp[idx]), n - ell);
            if ((rho_h - rho_hp).abs() > eps) ++deviating;
        }
        if (Q(deviating, std::int64_t(1) << (ell - k)) > eps) ++bad;
    }
    rep.bad_cosets = bad;
    rep.allowed = 0;
    // bad H-cosets allowed: eps * 2^k (each coset is 2^{n-k} many g)
    Q limit = eps * Q(std::int64_t(1) << k);
    rep.conclusion = Q(bad) <= limit;
    rep.allowed = limit.num() / limit.den();
    return rep;
}

FunctionalResult functional_regularize(const BooleanFunction& f, int m,
                                       const std::function<Q(int)>& E,
                                       int max_order, int max_rounds) {
    int n = f.dim();
    if (m > n) m = n;
    if (max_order > n) max_order = n;
    if (max_order < m) max_order = m;

    // Monotone non-increasing clamp of E.
    Q running_min(1);
    std::vector<Q> evals;
    auto E_clamped = [&](int r) {
        while (int(evals.size()) <= r) {
            Q v = E(int(evals.size()));
            if (!(v > Q(0)) || !(v < Q(1)))
                throw input_error("functional_regularize: E(r) must be in (0,1)");
            if (int(evals.size()) == 0) running_min = v;
            else if (v < running_min) running_min = v;
            evals.push_back(running_min);
        }
        return evals[r];
    };

    std::vector<F2Vector> init_gens;
    for (int i = m; i < n; ++i) init_gens.push_back(F2Vector(1u << i, n));
    Subspace h_init = init_gens.empty() ? Subspace(n) : Subspace(n, init_gens);

    Q e0 = E_clamped(0);
    FunctionalResult res;
    res.coarse = green_regularize(f, e0, h_init, max_order);
    res.fine = res.coarse;
    Q stop_gap = e0.pow(4) / Q(2);
    bool stopped = false;
    int rounds = 0;
    for (rounds = 1; rounds <= max_rounds; ++rounds) {
        int k = res.coarse.order;
        Q eps_i = E_clamped(k) / Q(std::int64_t(1) << k);
        RegularityPartition next = green_regularize(f, eps_i, res.coarse.h, max_order);
        Q gap = next.index - res.coarse.index;
        res.fine = next;
        if (gap < stop_gap) {
            stopped = true;
            break;
        }
        if (rounds < max_rounds) res.coarse = next;
    }
    res.diagnostics.rounds = std::min(rounds, max_rounds);
    res.diagnostics.budget_flag =
        res.coarse.budget_flag || res.fine.budget_flag || !stopped;

    // Post-hoc checks of the four guarantees on this instance.
    const RegularityPartition& ph = res.coarse;
    const RegularityPartition& pf = res.fine;
    int k = ph.order;
    res.diagnostics.order_bounds = (k >= m) && (pf.order <= max_order);
    res.diagnostics.coarse_uniformity =
        Q(ph.bad_count(e0), std::int64_t(1) << ph.order) <= e0;
    {
        // For every H-coset: the fraction of its H'-subcosets that are not
        // E(k)-uniform must be at most E(k) (counting h in H).
        Q ek = E_clamped(k);
        int ell = pf.order;
        bool ok = true;
        std::vector<F2Vector> comp = quotient_complement(ph.h, pf.h);
        std::vector<F2Vector> inner = enumerate(Subspace(n, comp));
        for (std::uint32_t gi = 0; gi < (std::uint32_t(1) << k) && ok; ++gi) {
            F2Vector g = ph.h.rep_of_index(gi);
            std::int64_t badsub = 0;
            for (const F2Vector& w : inner) {
                std::uint32_t idx = pf.h.coset_index(g ^ w);
                if (!(pf.coset_max_coeff(idx) < ek)) ++badsub;
            }
            if (Q(badsub, std::int64_t(1) << (ell - k)) > ek) ok = false;
        }
        res.diagnostics.fine_uniformity = ok;
    }
    res.diagnostics.density_transfer =
        index_gap_to_density(f, ph.h, pf.h, e0).conclusion;
    return res;
}

UniformTransversal::UniformTransversal(const Subspace& h, const Subspace& h_prime,
                                       std::vector<std::uint32_t> basis_shifts)
    : h_(h), hp_(h_prime), basis_shifts_(std::move(basis_shifts)) {
    if (int(basis_shifts_.size()) != h_.codim())
        throw input_error("UniformTransversal: wrong number of basis shifts");
    // Structural invariants: I linear by construction; I(u)+H' inside u+H.
    for (size_t i = 0; i < basis_shifts_.size(); ++i) {
        F2Vector s(basis_shifts_[i], h_.ambient_dim());
        if (h_.coset_index(s) != (std::uint32_t(1) << i))
            throw input_error("UniformTransversal: shift leaves its H-coset");
    }
}

F2Vector UniformTransversal::shift(std::uint32_t quotient_index) const {
    std::uint32_t acc = 0;
    std::uint32_t q = quotient_index;
    while (q) {
        int b = ctz32(q);
        acc ^= basis_shifts_[b];
        q &= q - 1;
    }
    return hp_.coset_rep(F2Vector(acc, h_.ambient_dim()));
}

TransversalResult pick_uniform_transversal(const BooleanFunction& f, const Subspace& h,
                                           const Subspace& h_prime, const Q& eps_uniform,
                                           const Q& density_eps, Rng& rng, int max_tries) {
    if (!h.contains_subspace(h_prime))
        throw input_error("pick_uniform_transversal: need H' <= H");
    int n = f.dim();
    int k = h.codim();
    std::vector<F2Vector> comp = quotient_complement(h, h_prime); // basis of H/H'
    auto counts_h = coset_ones(f, h);
    auto counts_hp = coset_ones(f, h_prime);

    for (int attempt = 1; attempt <= max_tries; ++attempt) {
        std::vector<std::uint32_t> shifts(k);
        for (int i = 0; i < k; ++i) {
            std::uint32_t v = 0;
            for (const F2Vector& c : comp)
                if (rng.next() & 1u) v ^= c.bits;
            shifts[i] = h.rep_of_index(std::uint32_t(1) << i).bits ^ v;
        }
        UniformTransversal trans(h, h_prime, shifts);

        bool ok = true;
        // every nonzero u: restriction to I(u)+H' is eps_uniform-uniform
        for (std::uint32_t u = 1; u < (std::uint32_t(1) << k) && ok; ++u) {
            BooleanFunction r = restrict(f, h_prime, trans.shift(u));
            if (r.dim() >= 1 && !(max_nontrivial_coeff(r).value < eps_uniform)) ok = false;
        }
        if (ok) {
            // density closeness for all but a density_eps fraction of g
            std::int64_t bad = 0;
            for (std::uint32_t u = 0; u < (std::uint32_t(1) << k); ++u) {
                Q rho_h = Q::dyadic(std::int64_t(counts_h[u]), n - k);
                std::uint32_t idx = h_prime.coset_index(trans.shift(u));
                Q rho_i = Q::dyadic(std::int64_t(counts_hp[idx]), h_prime.dim());
                if ((rho_h - rho_i).abs() > density_eps) ++bad;
            }
            if (Q(bad, std::int64_t(1) << k) > density_eps) ok = false;
        }
        if (ok) return TransversalResult{trans, attempt};
    }
    throw budget_error("pick_uniform_transversal: no admissible transversal in " +
                       std::to_string(max_tries) + " tries");
}

std::vector<F2Vector> StructuredBlock::nonzero_shifts() const {
    std::vector<F2Vector> shifts;
    for (const F2Vector& u : enumerate(k_quotient))
        if (!u.is_zero()) shifts.push_back(h.rep_of_index(u.bits));
    return shifts;
}

Subspace StructuredBlock::w_subspace() const {
    std::vector<F2Vector> gens = h.basis();
    for (const F2Vector& s : nonzero_shifts()) gens.push_back(s);
    return Subspace(h.ambient_dim(), gens);
}

namespace {

// One Turan + Ramsey attempt on a measured partition: a d-dim monochromatic
// subspace inside an r-dim all-uniform subspace of the quotient.
std::optional<StructuredBlock> block_attempt(const BooleanFunction& f,
                                             const RegularityPartition& p, int r, int d,
                                             const Q& gamma) {
    int n = f.dim();
    int order = p.order;
    if (order < r || r > 16) return std::nullopt;

    PointSet uniform_set(order);
    for (std::uint32_t u = 1; u < (std::uint32_t(1) << order); ++u)
        if (p.coset_max_coeff(u) < gamma) uniform_set.insert(u);
    auto l_sub = find_subspace_in_set(uniform_set, r);
    if (!l_sub) return std::nullopt;

    // 2-color L by density side and look for a monochromatic d-dim subspace.
    std::vector<F2Vector> l_basis = l_sub->basis();
    PointSet dense_pts(r);
    for (std::uint32_t y = 0; y < (std::uint32_t(1) << r); ++y) {
        std::uint32_t u = 0;
        std::uint32_t yy = y;
        while (yy) { u ^= l_basis[ctz32(yy)].bits; yy &= yy - 1; }
        if (!(Q::dyadic(std::int64_t(p.cosets[u].ones), n - order) < Q(1, 2)))
            dense_pts.insert(y);
    }
    auto cert = ramsey_find(dense_pts, d);
    if (!cert) return std::nullopt;

    StructuredBlock blk;
    blk.h = p.h;
    blk.k_quotient = lift_through_basis(cert->h, l_basis);
    blk.dense = cert->in_set;
    blk.gamma = gamma;
    return blk;
}

} // namespace

StructuredBlock find_structured_block(const BooleanFunction& f, int d, const Q& gamma,
                                      int max_r, int max_order) {
    int n = f.dim();
    if (d < 0) throw input_error("find_structured_block: d >= 0");
    std::optional<StructuredBlock> found;
    // Coarser partitions have more uniform cosets, so attempt the Turan and
    // Ramsey steps at every order along the refinement path rather than only
    // after the target uniformity is reached.
    for (int r = d; r <= max_r && r <= n && !found; ++r) {
        Q eps_r = gamma < Q::dyadic(1, r + 2) ? gamma : Q::dyadic(1, r + 2);
        std::vector<F2Vector> gens;
        for (int i = r; i < n; ++i) gens.push_back(F2Vector(1u << i, n));
        Subspace h_init = gens.empty() ? Subspace(n) : Subspace(n, gens);
        for (int target = r; target <= max_order; ++target) {
            RegularityPartition p = green_regularize(f, eps_r, h_init, target);
            found = block_attempt(f, p, r, d, gamma);
            if (found) break;
            // an unflagged partition met eps_r, so the Turan step cannot be
            // the obstruction; only a larger r can help the Ramsey step
            if (!p.budget_flag) break;
        }
    }
    if (!found)
        throw budget_error("find_structured_block: no block within r <= " +
                           std::to_string(max_r));

    // Re-verify the two per-coset guarantees from scratch.
    for (const F2Vector& shift : found->nonzero_shifts()) {
        BooleanFunction rest = restrict(f, found->h, shift);
        if (rest.dim() >= 1 && !(max_nontrivial_coeff(rest).value < gamma))
            throw std::logic_error("structured block lost uniformity on re-check");
        Q rho = density(rest);
        bool side = !(rho < Q(1, 2));
        if (side != found->dense)
            throw std::logic_error("structured block lost density side on re-check");
    }
    return *found;
}

} // namespace lipt
