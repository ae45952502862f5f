#ifndef LIPT_COMMON_HPP
#define LIPT_COMMON_HPP

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace lipt {

/// Malformed or out-of-contract input (dimension mismatch, bad syntax, ...).
class input_error : public std::runtime_error {
  public:
    explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

/// A size or enumeration budget was exceeded. Budgets stand in for the
/// tower-type constants; hitting one is a resource condition, not a bug.
class budget_error : public std::runtime_error {
  public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kMaxDim = 24;

inline void require_dim(int n) {
    if (n < 0 || n > kMaxDim)
        throw input_error("ambient dimension must be in [0," + std::to_string(kMaxDim) +
                          "], got " + std::to_string(n));
}

/// Seedable deterministic RNG. All randomized operations take one of these
/// explicitly; there is no global generator. Sampling goes through the raw
/// 64-bit stream so results are reproducible across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }

    /// Uniform value in [0, bound), bound > 0; rejection sampling.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw input_error("Rng::below(0)");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do { v = gen_(); } while (v >= limit);
        return v % bound;
    }

    /// Uniform n-bit value, 0 <= n <= 32.
    std::uint32_t bits(int n) {
        if (n == 0) return 0;
        return std::uint32_t(gen_() >> (64 - n));
    }

    bool coin(double p) { return double(gen_() >> 11) * 0x1.0p-53 < p; }

    /// Derives an independent stream (for per-trial determinism).
    Rng split(std::uint64_t tag) const {
        std::uint64_t h = seed_mix_ ^ (tag + 0x9e3779b97f4a7c15ULL);
        h ^= h >> 30; h *= 0xbf58476d1ce4e5b9ULL;
        h ^= h >> 27; h *= 0x94d049bb133111ebULL;
        h ^= h >> 31;
        return Rng(h);
    }

    void note_seed(std::uint64_t s) { seed_mix_ = s; }

  private:
    std::mt19937_64 gen_;
    std::uint64_t seed_mix_ = 0;
};

inline Rng make_rng(std::uint64_t seed) {
    Rng r(seed);
    r.note_seed(seed);
    return r;
}

inline int popcount32(std::uint32_t x) { return __builtin_popcount(x); }
inline int ctz32(std::uint32_t x) { return __builtin_ctz(x); }

} // namespace lipt

#endif
