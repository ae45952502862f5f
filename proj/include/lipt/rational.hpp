#ifndef LIPT_RATIONAL_HPP
#define LIPT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace lipt {

/// Exact rational arithmetic on int64 numerator/denominator.
///
/// Every quantity the library manipulates (densities, Fourier coefficients,
/// indexes, thresholds) is a rational with small numerator and denominator,
/// so int64 components with 128-bit intermediates are exact at the supported
/// problem sizes. Overflow throws instead of wrapping.
class Q {
  public:
    constexpr Q() : num_(0), den_(1) {}
    constexpr Q(std::int64_t v) : num_(v), den_(1) {}
    Q(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    static Q dyadic(std::int64_t num, int log2_den) {
        if (log2_den < 0 || log2_den > 62) throw std::overflow_error("Q::dyadic exponent");
        return Q(num, std::int64_t(1) << log2_den);
    }

    std::int64_t num() const { return num_; }
    std::int64_t den() const { return den_; }

    bool is_zero() const { return num_ == 0; }
    Q abs() const { return num_ < 0 ? Q(-num_, den_) : *this; }

    friend Q operator+(const Q& a, const Q& b) {
        return Q::from128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                          i128(a.den_) * b.den_);
    }
    friend Q operator-(const Q& a, const Q& b) {
        return Q::from128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                          i128(a.den_) * b.den_);
    }
    friend Q operator*(const Q& a, const Q& b) {
        return Q::from128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
    }
    friend Q operator/(const Q& a, const Q& b) {
        if (b.num_ == 0) throw std::domain_error("Q division by zero");
        return Q::from128(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
    }
    Q operator-() const { return Q(-num_, den_); }

    friend bool operator==(const Q& a, const Q& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }
    friend bool operator!=(const Q& a, const Q& b) { return !(a == b); }
    friend bool operator<(const Q& a, const Q& b) {
        return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
    }
    friend bool operator<=(const Q& a, const Q& b) { return !(b < a); }
    friend bool operator>(const Q& a, const Q& b) { return b < a; }
    friend bool operator>=(const Q& a, const Q& b) { return !(a < b); }

    /// Small integer power; exponent >= 0.
    Q pow(int e) const {
        Q r(1);
        for (int i = 0; i < e; ++i) r = r * (*this);
        return r;
    }

    double to_double() const { return double(num_) / double(den_); }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Parses "a", "a/b", or a decimal like "0.25" (converted exactly).
    static Q parse(const std::string& s);

  private:
    using i128 = __int128;

    static Q from128(i128 num, i128 den) {
        if (den == 0) throw std::domain_error("Q zero denominator");
        if (den < 0) { num = -num; den = -den; }
        i128 a = num < 0 ? -num : num;
        i128 g = gcd128(a, den);
        if (g > 1) { num /= g; den /= g; }
        if (num > INT64_MAX || num < INT64_MIN || den > INT64_MAX)
            throw std::overflow_error("Q overflow");
        Q q;
        q.num_ = std::int64_t(num);
        q.den_ = std::int64_t(den);
        return q;
    }

    static i128 gcd128(i128 a, i128 b) {
        while (b) { i128 t = a % b; a = b; b = t; }
        return a;
    }

    void normalize() {
        Q q = from128(num_, den_);
        num_ = q.num_;
        den_ = q.den_;
    }

    std::int64_t num_;
    std::int64_t den_;
};

inline Q Q::parse(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    if (slash != std::string::npos) {
        std::int64_t a = std::stoll(s.substr(0, slash));
        std::int64_t b = std::stoll(s.substr(slash + 1));
        return Q(a, b);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac = s.size() - dot - 1;
        if (frac > 18) throw std::invalid_argument("decimal too long");
        std::int64_t den = 1;
        for (size_t i = 0; i < frac; ++i) den *= 10;
        return Q(std::stoll(digits), den);
    }
    return Q(std::stoll(s));
}

} // namespace lipt

#endif
