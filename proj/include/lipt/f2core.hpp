#ifndef LIPT_F2CORE_HPP
#define LIPT_F2CORE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lipt/common.hpp"

namespace lipt {

/// A vector in F_2^dim, bit i of `bits` = coordinate x_{i+1}. dim <= 24.
struct F2Vector {
    std::uint32_t bits = 0;
    int dim = 0;

    F2Vector() = default;
    F2Vector(std::uint32_t b, int d) : bits(b), dim(d) {
        require_dim(d);
        if (d < 32 && (b >> d) != 0) throw input_error("F2Vector bits beyond dim");
    }

    bool get(int i) const { return (bits >> i) & 1u; }
    int weight() const { return popcount32(bits); }
    bool is_zero() const { return bits == 0; }

    friend F2Vector operator^(const F2Vector& a, const F2Vector& b) {
        if (a.dim != b.dim) throw input_error("F2Vector dim mismatch");
        return F2Vector(a.bits ^ b.bits, a.dim);
    }
    friend bool operator==(const F2Vector& a, const F2Vector& b) {
        return a.dim == b.dim && a.bits == b.bits;
    }
    friend bool operator!=(const F2Vector& a, const F2Vector& b) { return !(a == b); }
    friend bool operator<(const F2Vector& a, const F2Vector& b) {
        return a.bits < b.bits;
    }

    /// "0101..." with coordinate x_1 first.
    std::string str() const;
    static F2Vector parse(const std::string& s);
};

inline std::uint32_t dot(const F2Vector& a, const F2Vector& b) {
    return popcount32(a.bits & b.bits) & 1u;
}

/// Row-major matrix over F_2; every row is a `cols`-bit mask.
struct F2Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint32_t> row_bits;

    F2Matrix() = default;
    F2Matrix(int r, int c) : rows(r), cols(c), row_bits(r, 0) { require_dim(c); }

    bool get(int r, int c) const { return (row_bits[r] >> c) & 1u; }
    void set(int r, int c, bool v) {
        if (v) row_bits[r] |= 1u << c;
        else row_bits[r] &= ~(1u << c);
    }
    F2Vector row(int r) const { return F2Vector(row_bits[r], cols); }
    F2Vector column(int c) const;
    F2Matrix transpose() const;

    friend bool operator==(const F2Matrix& a, const F2Matrix& b) {
        return a.rows == b.rows && a.cols == b.cols && a.row_bits == b.row_bits;
    }
};

struct RrefResult {
    F2Matrix matrix; // RREF with zero rows removed
    int rank = 0;
};

/// Reduced row-echelon form. Pivot of a row is its lowest set bit; rows are
/// ordered by pivot and every pivot column is cleared in the other rows.
RrefResult rref(const F2Matrix& m);

/// Basis of {x : Mx = 0} as a cols x (cols - rank) matrix whose columns are
/// the basis vectors, one per free column in increasing column order.
F2Matrix kernel_basis(const F2Matrix& m);

/// Convenience: the kernel basis as column vectors of dim = cols(M).
std::vector<F2Vector> kernel_columns(const F2Matrix& m);

bool rowspace_contains(const F2Matrix& m, const F2Vector& v);

/// A subspace of F_2^n held in canonical form: the basis is the RREF of any
/// generating set, so equal subspaces compare equal structurally.
class Subspace {
  public:
    /// The zero subspace of F_2^n.
    explicit Subspace(int ambient_dim);
    /// Canonicalizes the given generating vectors.
    Subspace(int ambient_dim, const std::vector<F2Vector>& generators);

    static Subspace full(int n);

    int ambient_dim() const { return n_; }
    int dim() const { return int(basis_.size()); }
    int codim() const { return n_ - dim(); }
    const std::vector<std::uint32_t>& basis_bits() const { return basis_; }
    F2Vector basis_vector(int i) const { return F2Vector(basis_[i], n_); }
    std::vector<F2Vector> basis() const;

    bool contains(const F2Vector& v) const;
    bool contains_subspace(const Subspace& other) const;

    /// Canonical coset representative: the lexicographically minimal element
    /// of v + H (all pivot coordinates reduced to zero).
    F2Vector coset_rep(const F2Vector& v) const;

    /// Index of v's coset in the transversal order, in [0, 2^codim).
    std::uint32_t coset_index(const F2Vector& v) const;
    /// Canonical representative of the coset with the given index.
    F2Vector rep_of_index(std::uint32_t idx) const;

    /// Pivot coordinate positions of the canonical basis, ascending.
    const std::vector<int>& pivots() const { return pivots_; }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.n_ == b.n_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

  private:
    int n_;
    std::vector<std::uint32_t> basis_;  // RREF rows, pivots ascending
    std::vector<int> pivots_;
    std::uint32_t pivot_mask_ = 0;
    std::vector<int> free_pos_;         // non-pivot positions, ascending
    friend class QuotientMap;
};

/// Coset g + H with the shift stored canonically (lex-minimal element).
struct AffineCoset {
    F2Vector shift;
    Subspace subspace;

    AffineCoset(const F2Vector& g, const Subspace& h)
        : shift(h.coset_rep(g)), subspace(h) {}

    /// Strict in the sense used for affine Ramsey: shift not in H.
    bool strict() const { return !shift.is_zero(); }

    friend bool operator==(const AffineCoset& a, const AffineCoset& b) {
        return a.shift == b.shift && a.subspace == b.subspace;
    }
};

/// F_2-linear map given by the images of the standard basis vectors.
class LinearMap {
  public:
    LinearMap(int domain_dim, int codomain_dim)
        : dom_(domain_dim), cod_(codomain_dim), cols_(domain_dim, 0) {
        require_dim(domain_dim);
        require_dim(codomain_dim);
    }

    static LinearMap identity(int n);

    int domain_dim() const { return dom_; }
    int codomain_dim() const { return cod_; }
    void set_column(int i, const F2Vector& image);
    F2Vector column(int i) const { return F2Vector(cols_[i], cod_); }

    F2Vector apply(const F2Vector& x) const;
    std::uint32_t apply_bits(std::uint32_t x) const;

    bool has_inverse() const { return !inv_cols_.empty(); }
    LinearMap inverse() const;

    /// Computes and stores the inverse; throws input_error if singular.
    void verify_invertible();

  private:
    int dom_, cod_;
    std::vector<std::uint32_t> cols_;
    std::vector<std::uint32_t> inv_cols_;
};

/// Span of the given vectors (all the same dim) in canonical form.
Subspace span(const std::vector<F2Vector>& vs);

/// All 2^dim elements of S, first element 0, Gray-code order over the basis.
std::vector<F2Vector> enumerate(const Subspace& s);

/// Uniformly random d-dimensional subspace of F_2^n: d i.i.d. uniform
/// vectors, resampled until linearly independent.
Subspace random_subspace(int n, int d, Rng& rng);

/// Uniformly random element of GL(n,2), with inverse attached.
LinearMap random_nonsingular(int n, Rng& rng);

/// One representative per coset of H, 2^(n-dim H) entries; the representative
/// of H itself is 0 and every representative is lex-minimal in its coset.
std::vector<F2Vector> coset_transversal(int n, const Subspace& h);

/// Walks x over all of F_2^n in Gray-code order while tracking the coset
/// index of x with respect to a fixed subspace in O(1) per step.
class CosetWalker {
  public:
    explicit CosetWalker(const Subspace& h);
    /// Coset index after flipping bit b of the current point.
    std::uint32_t flip(int b) { return cur_ ^= step_[b]; }
    std::uint32_t current() const { return cur_; }
    void reset() { cur_ = 0; }

  private:
    std::vector<std::uint32_t> step_;
    std::uint32_t cur_ = 0;
};

/// Lifts a subspace expressed in the coordinates of a basis (rows of `basis`,
/// vectors in F_2^n) back to the ambient space.
Subspace lift_through_basis(const Subspace& inner, const std::vector<F2Vector>& basis);

/// All d-dimensional subspaces of F_2^n (canonical RREF enumeration).
std::vector<Subspace> all_subspaces(int n, int d);

} // namespace lipt

#endif
