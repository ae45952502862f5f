#ifndef LIPT_BOOLFN_HPP
#define LIPT_BOOLFN_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "lipt/f2core.hpp"
#include "lipt/rational.hpp"

namespace lipt {

/// Dense truth table of f: F_2^n -> {0,1}, bit-packed; table bit index(x)
/// with index(x) the little-endian integer of x.
class BooleanFunction {
  public:
    explicit BooleanFunction(int n);
    BooleanFunction(int n, const std::vector<bool>& table);

    static BooleanFunction constant(int n, bool value);
    /// Indicator of the hyperplane <x,a> = 0 (a nonzero).
    static BooleanFunction hyperplane(const F2Vector& a);
    /// f(x) = x1 x2 + x3 x4 + ... on an even number of variables.
    static BooleanFunction inner_product_bent(int n);
    static BooleanFunction random(int n, double density, Rng& rng);
    static BooleanFunction from_predicate(int n, const std::function<bool(std::uint32_t)>& p);

    int dim() const { return n_; }
    std::uint64_t size() const { return std::uint64_t(1) << n_; }

    bool get(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    bool eval(const F2Vector& x) const { return get(x.bits); }
    void set(std::uint32_t x, bool v) {
        if (v) words_[x >> 6] |= std::uint64_t(1) << (x & 63);
        else words_[x >> 6] &= ~(std::uint64_t(1) << (x & 63));
    }

    std::uint64_t ones() const;
    BooleanFunction complement() const;

    friend bool operator==(const BooleanFunction& a, const BooleanFunction& b) {
        return a.n_ == b.n_ && a.words_ == b.words_;
    }
    friend bool operator!=(const BooleanFunction& a, const BooleanFunction& b) {
        return !(a == b);
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

  private:
    int n_;
    std::vector<std::uint64_t> words_;
};

/// Exact Fourier spectrum: f_hat(alpha) = numerators[index(alpha)] / 2^n.
struct FourierSpectrum {
    int dim = 0;
    std::vector<std::int32_t> numerators;

    Q coefficient(std::uint32_t alpha) const {
        return Q::dyadic(numerators[alpha], dim);
    }
};

Q density(const BooleanFunction& f);

/// Exact spectrum by the in-place fast transform, O(n 2^n) integer ops.
FourierSpectrum wht(const BooleanFunction& f);

struct MaxCoeff {
    F2Vector alpha;  // argmax over nonzero alpha, ties to smallest index
    Q value;         // |f_hat(alpha)|, exact
};

MaxCoeff max_nontrivial_coeff(const BooleanFunction& f);

/// max_{alpha != 0} |f_hat(alpha)| < eps, exact strict comparison.
bool is_uniform(const BooleanFunction& f, const Q& eps);

/// f_H^{+g} expressed on F_2^dim(H) through the canonical RREF basis of H:
/// result(y) = f(g + sum_i y_i b_i).
BooleanFunction restrict(const BooleanFunction& f, const Subspace& h, const F2Vector& g);

Q distance(const BooleanFunction& f, const BooleanFunction& g);

/// (f o L)(x) = f(L(x)); the result lives on the domain of L.
BooleanFunction compose_linear(const BooleanFunction& f, const LinearMap& l);

/// ANF (algebraic normal form) coefficients via the Moebius transform:
/// bit index(m) set iff the monomial prod_{i in m} x_i appears.
std::vector<std::uint64_t> anf_coefficients(const BooleanFunction& f);
int anf_degree(const BooleanFunction& f);

} // namespace lipt

#endif
