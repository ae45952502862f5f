#ifndef LIPT_EXTREMAL_HPP
#define LIPT_EXTREMAL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipt/f2core.hpp"

namespace lipt {

/// Subset of F_2^n as a membership bitset over point indices.
class PointSet {
  public:
    explicit PointSet(int n);

    int dim() const { return n_; }
    std::uint64_t size() const { return std::uint64_t(1) << n_; }
    bool contains(std::uint32_t x) const { return (words_[x >> 6] >> (x & 63)) & 1u; }
    void insert(std::uint32_t x) { words_[x >> 6] |= std::uint64_t(1) << (x & 63); }
    void erase(std::uint32_t x) { words_[x >> 6] &= ~(std::uint64_t(1) << (x & 63)); }
    std::uint64_t count() const;
    PointSet complement() const;

    static PointSet everything(int n);

  private:
    int n_;
    std::vector<std::uint64_t> words_;
};

/// A d-dimensional subspace H with H - {0} contained in S, or nullopt.
/// Greedy basis extension with backtracking; first hit in deterministic order.
std::optional<Subspace> find_subspace_in_set(const PointSet& s, int d);

/// The tight extremal set F_2^n minus a complementary (n-d+1)-dim subspace:
/// size 2^n - 2^(n-d+1), contains no H - {0} with dim(H) = d.
PointSet turan_extremal_set(int n, int d);

struct MonochromeCertificate {
    Subspace h;
    bool in_set; // true: H - {0} inside S; false: inside the complement
};

std::optional<MonochromeCertificate> ramsey_find(const PointSet& s, int d);

/// N_a(d) = 2^(N_a(d-1)+1) + N_a(d-1), N_a(1) = 1. Exact for d <= 4; beyond
/// that the value exceeds 128-bit range (d=5 already has ~10^20 digits).
unsigned __int128 affine_ramsey_bound(int d);
std::string affine_ramsey_bound_str(int d);

struct RamseyMinN {
    int min_n = 0;
    /// A coloring of F_2^(min_n - 1) - {0} with no monochromatic d-dim
    /// subspace minus 0 (absent when min_n == 1).
    std::optional<PointSet> counterexample;
};

/// Smallest N such that every S <= F_2^N has a monochromatic d-subspace
/// minus 0; exhaustive over colorings with GL(N,2) orbit pruning. d <= 2.
RamseyMinN ramsey_min_N(int d);

/// Monochromatic strict affine d-flat (shift outside the subspace), by
/// exhaustive flat enumeration. d >= 0; a 0-flat is a single nonzero point.
std::optional<AffineCoset> strict_affine_ramsey_find(const PointSet& s, int d);

} // namespace lipt

#endif
