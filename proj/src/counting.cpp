#include "lipt/counting.hpp"

#include <cmath>

namespace lipt {

CountingConstants counting_constants(const Q& eta, int k) {
    if (k <= 2) throw input_error("counting_constants: k > 2 required");
    if (!(eta > Q(0)) || !(eta < Q(1))) throw input_error("counting_constants: eta in (0,1)");
    CountingConstants c;
    c.eta = eta;
    c.k = k;
    c.delta = eta.pow(k) / Q(2);
    c.gamma_pow = c.delta;
    double g = std::pow(c.gamma_pow.to_double(), 1.0 / double(k - 2));
    c.gamma_approx = std::nextafter(g, 0.0); // toward zero: stays below gamma
    return c;
}

std::uint64_t coset_restricted_count(const BooleanFunction& f, const InducedSystem& sys,
                                     const Subspace& h, const std::vector<F2Vector>& u) {
    int n = f.dim();
    int k = sys.k(), m = sys.rank();
    if (h.ambient_dim() != n) throw input_error("coset_restricted_count: subspace mismatch");
    if (int(u.size()) != k) throw input_error("coset_restricted_count: tuple length mismatch");
    for (const F2Vector& ui : u)
        if (ui.dim != n) throw input_error("coset_restricted_count: vector dim mismatch");

    // M u must vanish in the quotient; then shift to an exact solution v with
    // v_i in u_i + H by correcting the pivot coordinates with the row sums
    // (which lie in H).
    std::vector<std::uint32_t> v(k);
    for (int i = 0; i < k; ++i) v[i] = u[i].bits;
    for (int r = 0; r < sys.m.rows; ++r) {
        std::uint32_t row = sys.m.row_bits[r];
        std::uint32_t acc = 0;
        std::uint32_t rr = row;
        while (rr) { acc ^= u[ctz32(rr)].bits; rr &= rr - 1; }
        if (!h.contains(F2Vector(acc, n)))
            throw input_error("coset_restricted_count: M u != 0 in the quotient");
        v[ctz32(row)] ^= acc;
    }

    int c = k - m;
    int hd = h.dim();
    if (hd * c > kKernelBudgetBits)
        throw budget_error("coset_restricted_count: enumeration budget exceeded");

    std::vector<F2Vector> kcols = kernel_columns(sys.m);
    std::vector<std::uint32_t> x(v);
    int cnt = 0;
    std::vector<char> ok(k);
    for (int i = 0; i < k; ++i) {
        ok[i] = f.get(x[i]) == bool((sys.sigma >> i) & 1u);
        cnt += ok[i];
    }
    std::uint64_t total = cnt == k ? 1 : 0;
    std::uint64_t steps = (std::uint64_t(1) << (hd * c)) - 1;
    const auto& hb = h.basis_bits();
    for (std::uint64_t t = 1; t <= steps; ++t) {
        int bit = __builtin_ctzll(t);
        int j = bit / hd, s = bit % hd;
        std::uint32_t mask = kcols[j].bits;
        std::uint32_t stepv = hb[s];
        while (mask) {
            int i = ctz32(mask);
            mask &= mask - 1;
            cnt -= ok[i];
            x[i] ^= stepv;
            ok[i] = f.get(x[i]) == bool((sys.sigma >> i) & 1u);
            cnt += ok[i];
        }
        if (cnt == k) ++total;
    }
    return total;
}

CountingReport check_and_count(const BooleanFunction& f, const CountingHypothesis& hyp) {
    const InducedSystem& sys = hyp.sys;
    int k = sys.k(), m = sys.rank();
    CountingReport rep;
    rep.constants = counting_constants(hyp.eta, k);

    rep.quotient_solution = true;
    for (int r = 0; r < sys.m.rows; ++r) {
        std::uint32_t row = sys.m.row_bits[r];
        std::uint32_t acc = 0;
        while (row) { acc ^= hyp.u[ctz32(row)].bits; row &= row - 1; }
        if (!hyp.h.contains(F2Vector(acc, f.dim()))) rep.quotient_solution = false;
    }
    if (!rep.quotient_solution) return rep;

    rep.hypothesis_holds = true;
    for (int i = 0; i < k; ++i) {
        BooleanFunction r = restrict(f, hyp.h, hyp.u[i]);
        Q rho = density(r);
        Q maxc = r.dim() >= 1 ? max_nontrivial_coeff(r).value : Q(0);
        rep.densities.push_back(rho);
        rep.max_coeffs.push_back(maxc);
        if (!rep.constants.below_gamma(maxc)) rep.hypothesis_holds = false;
        bool want = (sys.sigma >> i) & 1u;
        if (want && rho < hyp.eta) rep.hypothesis_holds = false;
        if (!want && rho > Q(1) - hyp.eta) rep.hypothesis_holds = false;
    }

    rep.count = coset_restricted_count(f, sys, hyp.h, hyp.u);
    int hd = hyp.h.dim();
    rep.threshold = rep.constants.delta * Q(std::int64_t(1) << (hd * (k - m)));
    rep.bound_holds = Q(std::int64_t(rep.count)) >= rep.threshold;
    if (rep.hypothesis_holds && m == 1) {
        rep.bound_asserted = true;
        if (!rep.bound_holds)
            throw std::logic_error("counting bound violated under a verified hypothesis");
    }
    return rep;
}

} // namespace lipt
