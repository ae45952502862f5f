#include "lipt/boolfn.hpp"

#include <bit>

namespace lipt {

BooleanFunction::BooleanFunction(int n) : n_(n) {
    require_dim(n);
    words_.assign(((std::uint64_t(1) << n) + 63) / 64, 0);
}

BooleanFunction::BooleanFunction(int n, const std::vector<bool>& table) : BooleanFunction(n) {
    if (table.size() != size()) throw input_error("truth table length != 2^n");
    for (std::uint32_t x = 0; x < size(); ++x)
        if (table[x]) set(x, true);
}

BooleanFunction BooleanFunction::constant(int n, bool value) {
    BooleanFunction f(n);
    if (value) {
        for (auto& w : f.words_) w = ~std::uint64_t(0);
        if (n < 6) f.words_[0] = (std::uint64_t(1) << (1 << n)) - 1;
    }
    return f;
}

BooleanFunction BooleanFunction::hyperplane(const F2Vector& a) {
    if (a.is_zero()) throw input_error("hyperplane direction must be nonzero");
    BooleanFunction f(a.dim);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if ((popcount32(x & a.bits) & 1) == 0) f.set(x, true);
    return f;
}

BooleanFunction BooleanFunction::inner_product_bent(int n) {
    if (n % 2 != 0 || n <= 0) throw input_error("bent function needs even n");
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < f.size(); ++x) {
        int acc = 0;
        for (int i = 0; i + 1 < n; i += 2)
            acc ^= ((x >> i) & 1u) & ((x >> (i + 1)) & 1u);
        if (acc) f.set(x, true);
    }
    return f;
}

BooleanFunction BooleanFunction::random(int n, double density, Rng& rng) {
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (rng.coin(density)) f.set(x, true);
    return f;
}

BooleanFunction BooleanFunction::from_predicate(int n, const std::function<bool(std::uint32_t)>& p) {
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (p(x)) f.set(x, true);
    return f;
}

std::uint64_t BooleanFunction::ones() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

BooleanFunction BooleanFunction::complement() const {
    BooleanFunction g(n_);
    for (size_t i = 0; i < words_.size(); ++i) g.words_[i] = ~words_[i];
    if (n_ < 6) g.words_[0] &= (std::uint64_t(1) << (1 << n_)) - 1;
    return g;
}

Q density(const BooleanFunction& f) {
    return Q::dyadic(std::int64_t(f.ones()), f.dim());
}

FourierSpectrum wht(const BooleanFunction& f) {
    int n = f.dim();
    FourierSpectrum s;
    s.dim = n;
    s.numerators.resize(size_t(1) << n);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        s.numerators[x] = f.get(x) ? 1 : 0;
    auto& a = s.numerators;
    for (int len = 1; len < (1 << n); len <<= 1) {
        for (std::uint32_t i = 0; i < (std::uint32_t(1) << n); i += 2 * len) {
            for (std::uint32_t j = i; j < i + len; ++j) {
                std::int32_t u = a[j], v = a[j + len];
                a[j] = u + v;
                a[j + len] = u - v;
            }
        }
    }
    return s;
}

MaxCoeff max_nontrivial_coeff(const BooleanFunction& f) {
    if (f.dim() < 1) throw input_error("max_nontrivial_coeff needs n >= 1");
    FourierSpectrum s = wht(f);
    std::uint32_t best = 1;
    std::int64_t best_abs = -1;
    for (std::uint32_t alpha = 1; alpha < f.size(); ++alpha) {
        std::int64_t v = std::abs(std::int64_t(s.numerators[alpha]));
        if (v > best_abs) { best_abs = v; best = alpha; }
    }
    return MaxCoeff{F2Vector(best, f.dim()), Q::dyadic(best_abs, f.dim())};
}

bool is_uniform(const BooleanFunction& f, const Q& eps) {
    return max_nontrivial_coeff(f).value < eps;
}

BooleanFunction restrict(const BooleanFunction& f, const Subspace& h, const F2Vector& g) {
    if (h.ambient_dim() != f.dim() || g.dim != f.dim())
        throw input_error("restrict: dimension mismatch");
    int d = h.dim();
    BooleanFunction out(d);
    // Gray walk: point for gray(t) differs from point for gray(t-1) by one
    // basis vector, so each step is a single XOR.
    std::uint32_t point = g.bits;
    out.set(0, f.get(point));
    for (std::uint32_t t = 1; t < (std::uint32_t(1) << d); ++t) {
        point ^= h.basis_bits()[ctz32(t)];
        out.set(t ^ (t >> 1), f.get(point));
    }
    return out;
}

Q distance(const BooleanFunction& f, const BooleanFunction& g) {
    if (f.dim() != g.dim()) throw input_error("distance: dimension mismatch");
    std::uint64_t diff = 0;
    for (size_t i = 0; i < f.words().size(); ++i)
        diff += std::popcount(f.words()[i] ^ g.words()[i]);
    return Q::dyadic(std::int64_t(diff), f.dim());
}

BooleanFunction compose_linear(const BooleanFunction& f, const LinearMap& l) {
    if (l.codomain_dim() != f.dim()) throw input_error("compose_linear: dimension mismatch");
    BooleanFunction out(l.domain_dim());
    for (std::uint32_t x = 0; x < out.size(); ++x)
        out.set(x, f.get(l.apply_bits(x)));
    return out;
}

std::vector<std::uint64_t> anf_coefficients(const BooleanFunction& f) {
    int n = f.dim();
    std::vector<std::uint8_t> a(size_t(1) << n);
    for (std::uint32_t x = 0; x < f.size(); ++x) a[x] = f.get(x);
    for (int b = 0; b < n; ++b)
        for (std::uint32_t x = 0; x < f.size(); ++x)
            if (x & (1u << b)) a[x] ^= a[x ^ (1u << b)];
    std::vector<std::uint64_t> words(((std::uint64_t(1) << n) + 63) / 64, 0);
    for (std::uint32_t x = 0; x < f.size(); ++x)
        if (a[x]) words[x >> 6] |= std::uint64_t(1) << (x & 63);
    return words;
}

int anf_degree(const BooleanFunction& f) {
    auto coeffs = anf_coefficients(f);
    int deg = -1; // degree of the zero function
    for (std::uint32_t m = 0; m < f.size(); ++m)
        if ((coeffs[m >> 6] >> (m & 63)) & 1u)
            deg = std::max(deg, popcount32(m));
    return deg;
}

} // namespace lipt
