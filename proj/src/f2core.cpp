#include "lipt/f2core.hpp"

#include <algorithm>

namespace lipt {

std::string F2Vector::str() const {
    std::string s(dim, '0');
    for (int i = 0; i < dim; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

F2Vector F2Vector::parse(const std::string& s) {
    if (s.empty() || s.size() > kMaxDim) throw input_error("bad vector literal: " + s);
    std::uint32_t bits = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '1') bits |= 1u << i;
        else if (s[i] != '0') throw input_error("bad vector literal: " + s);
    }
    return F2Vector(bits, int(s.size()));
}

F2Vector F2Matrix::column(int c) const {
    std::uint32_t bits = 0;
    for (int r = 0; r < rows; ++r)
        if (get(r, c)) bits |= 1u << r;
    require_dim(rows);
    return F2Vector(bits, rows);
}

F2Matrix F2Matrix::transpose() const {
    F2Matrix t(cols, rows);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (get(r, c)) t.set(c, r, true);
    return t;
}

RrefResult rref(const F2Matrix& m) {
    std::vector<std::uint32_t> rows = m.row_bits;
    std::vector<std::uint32_t> out;
    for (int col = 0; col < m.cols; ++col) {
        std::uint32_t mask = 1u << col;
        auto it = std::find_if(rows.begin(), rows.end(), [&](std::uint32_t r) {
            return r != 0 && ctz32(r) == col;
        });
        if (it == rows.end()) continue;
        std::uint32_t pivot = *it;
        rows.erase(it);
        for (auto& r : rows)
            if (r & mask) r ^= pivot;
        for (auto& r : out)
            if (r & mask) r ^= pivot;
        out.push_back(pivot);
    }
    // Rows whose lowest set bit never became a pivot are linear combinations
    // and have been zeroed by the sweep above.
    RrefResult res;
    res.matrix = F2Matrix(int(out.size()), m.cols);
    res.matrix.row_bits = out;
    res.rank = int(out.size());
    return res;
}

F2Matrix kernel_basis(const F2Matrix& m) {
    RrefResult r = rref(m);
    std::vector<int> pivot_of_col(m.cols, -1);
    for (int i = 0; i < r.rank; ++i)
        pivot_of_col[ctz32(r.matrix.row_bits[i])] = i;

    F2Matrix k(m.cols, m.cols - r.rank);
    int j = 0;
    for (int c = 0; c < m.cols; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        k.set(c, j, true);
        for (int i = 0; i < r.rank; ++i)
            if (r.matrix.get(i, c)) k.set(ctz32(r.matrix.row_bits[i]), j, true);
        ++j;
    }
    return k;
}

std::vector<F2Vector> kernel_columns(const F2Matrix& m) {
    F2Matrix k = kernel_basis(m);
    std::vector<F2Vector> cols;
    cols.reserve(k.cols);
    for (int j = 0; j < k.cols; ++j) {
        std::uint32_t bits = 0;
        for (int r = 0; r < k.rows; ++r)
            if (k.get(r, j)) bits |= 1u << r;
        cols.push_back(F2Vector(bits, k.rows));
    }
    return cols;
}

bool rowspace_contains(const F2Matrix& m, const F2Vector& v) {
    if (v.dim != m.cols) throw input_error("rowspace_contains: dimension mismatch");
    RrefResult r = rref(m);
    std::uint32_t x = v.bits;
    for (std::uint32_t row : r.matrix.row_bits) {
        std::uint32_t mask = 1u << ctz32(row);
        if (x & mask) x ^= row;
    }
    return x == 0;
}

Subspace::Subspace(int ambient_dim) : n_(ambient_dim) {
    require_dim(ambient_dim);
    std::uint32_t all = ambient_dim == 32 ? ~0u : (1u << ambient_dim) - 1;
    for (int i = 0; i < ambient_dim; ++i)
        if (all & (1u << i)) free_pos_.push_back(i);
}

Subspace::Subspace(int ambient_dim, const std::vector<F2Vector>& generators)
    : Subspace(ambient_dim) {
    F2Matrix m(int(generators.size()), ambient_dim);
    for (size_t i = 0; i < generators.size(); ++i) {
        if (generators[i].dim != ambient_dim)
            throw input_error("subspace generator dimension mismatch");
        m.row_bits[i] = generators[i].bits;
    }
    RrefResult r = rref(m);
    basis_ = r.matrix.row_bits;
    pivots_.clear();
    pivot_mask_ = 0;
    for (std::uint32_t row : basis_) {
        int p = ctz32(row);
        pivots_.push_back(p);
        pivot_mask_ |= 1u << p;
    }
    free_pos_.clear();
    for (int i = 0; i < n_; ++i)
        if (!(pivot_mask_ & (1u << i))) free_pos_.push_back(i);
}

Subspace Subspace::full(int n) {
    std::vector<F2Vector> gens;
    for (int i = 0; i < n; ++i) gens.push_back(F2Vector(1u << i, n));
    return Subspace(n, gens);
}

std::vector<F2Vector> Subspace::basis() const {
    std::vector<F2Vector> b;
    for (std::uint32_t row : basis_) b.push_back(F2Vector(row, n_));
    return b;
}

bool Subspace::contains(const F2Vector& v) const {
    if (v.dim != n_) throw input_error("Subspace::contains dimension mismatch");
    return coset_rep(v).is_zero();
}

bool Subspace::contains_subspace(const Subspace& other) const {
    if (other.n_ != n_) return false;
    for (std::uint32_t row : other.basis_)
        if (!contains(F2Vector(row, n_))) return false;
    return true;
}

F2Vector Subspace::coset_rep(const F2Vector& v) const {
    if (v.dim != n_) throw input_error("coset_rep dimension mismatch");
    std::uint32_t x = v.bits;
    for (size_t i = 0; i < basis_.size(); ++i)
        if (x & (1u << pivots_[i])) x ^= basis_[i];
    return F2Vector(x, n_);
}

std::uint32_t Subspace::coset_index(const F2Vector& v) const {
    std::uint32_t rep = coset_rep(v).bits;
    std::uint32_t idx = 0;
    for (size_t i = 0; i < free_pos_.size(); ++i)
        if (rep & (1u << free_pos_[i])) idx |= 1u << i;
    return idx;
}

F2Vector Subspace::rep_of_index(std::uint32_t idx) const {
    std::uint32_t bits = 0;
    for (size_t i = 0; i < free_pos_.size(); ++i)
        if (idx & (1u << i)) bits |= 1u << free_pos_[i];
    return F2Vector(bits, n_);
}

LinearMap LinearMap::identity(int n) {
    LinearMap l(n, n);
    for (int i = 0; i < n; ++i) l.cols_[i] = 1u << i;
    l.inv_cols_ = l.cols_;
    return l;
}

void LinearMap::set_column(int i, const F2Vector& image) {
    if (image.dim != cod_) throw input_error("LinearMap column dimension mismatch");
    cols_[i] = image.bits;
    inv_cols_.clear();
}

F2Vector LinearMap::apply(const F2Vector& x) const {
    if (x.dim != dom_) throw input_error("LinearMap::apply dimension mismatch");
    return F2Vector(apply_bits(x.bits), cod_);
}

std::uint32_t LinearMap::apply_bits(std::uint32_t x) const {
    std::uint32_t y = 0;
    while (x) {
        int b = ctz32(x);
        y ^= cols_[b];
        x &= x - 1;
    }
    return y;
}

LinearMap LinearMap::inverse() const {
    if (inv_cols_.empty()) throw input_error("LinearMap has no verified inverse");
    LinearMap inv(cod_, dom_);
    inv.cols_ = inv_cols_;
    inv.inv_cols_ = cols_;
    return inv;
}

void LinearMap::verify_invertible() {
    if (dom_ != cod_) throw input_error("only square maps can be inverted");
    int n = dom_;
    // Gauss-Jordan on [M | I] working column-wise over bitmask rows.
    std::vector<std::uint32_t> m(n), id(n);
    for (int r = 0; r < n; ++r) {
        std::uint32_t row = 0;
        for (int c = 0; c < n; ++c)
            if ((cols_[c] >> r) & 1u) row |= 1u << c;
        m[r] = row;
        id[r] = 1u << r;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if ((m[r] >> col) & 1u) { pivot = r; break; }
        if (pivot < 0) throw input_error("linear map is singular");
        std::swap(m[col], m[pivot]);
        std::swap(id[col], id[pivot]);
        for (int r = 0; r < n; ++r) {
            if (r != col && ((m[r] >> col) & 1u)) {
                m[r] ^= m[col];
                id[r] ^= id[col];
            }
        }
    }
    inv_cols_.assign(n, 0);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
            if ((id[r] >> c) & 1u) inv_cols_[c] |= 1u << r;
}

Subspace span(const std::vector<F2Vector>& vs) {
    if (vs.empty()) throw input_error("span of empty list: ambient dimension unknown");
    return Subspace(vs[0].dim, vs);
}

std::vector<F2Vector> enumerate(const Subspace& s) {
    int d = s.dim();
    std::vector<F2Vector> out;
    out.reserve(size_t(1) << d);
    std::uint32_t cur = 0;
    out.push_back(F2Vector(0, s.ambient_dim()));
    for (std::uint32_t i = 1; i < (std::uint32_t(1) << d); ++i) {
        cur ^= s.basis_bits()[ctz32(i)];
        out.push_back(F2Vector(cur, s.ambient_dim()));
    }
    return out;
}

Subspace random_subspace(int n, int d, Rng& rng) {
    require_dim(n);
    if (d < 0 || d > n) throw input_error("random_subspace: need 0 <= d <= n");
    while (true) {
        std::vector<F2Vector> vs;
        for (int i = 0; i < d; ++i) vs.push_back(F2Vector(rng.bits(n), n));
        Subspace s(n, vs);
        if (s.dim() == d) return s;
    }
}

LinearMap random_nonsingular(int n, Rng& rng) {
    require_dim(n);
    while (true) {
        LinearMap l(n, n);
        for (int i = 0; i < n; ++i) l.set_column(i, F2Vector(rng.bits(n), n));
        try {
            l.verify_invertible();
            return l;
        } catch (const input_error&) {
            // singular sample, retry
        }
    }
}

std::vector<F2Vector> coset_transversal(int n, const Subspace& h) {
    if (h.ambient_dim() != n) throw input_error("coset_transversal dimension mismatch");
    std::vector<F2Vector> reps;
    std::uint32_t count = std::uint32_t(1) << h.codim();
    reps.reserve(count);
    for (std::uint32_t i = 0; i < count; ++i) reps.push_back(h.rep_of_index(i));
    return reps;
}

CosetWalker::CosetWalker(const Subspace& h) {
    int n = h.ambient_dim();
    step_.resize(n);
    for (int b = 0; b < n; ++b)
        step_[b] = h.coset_index(F2Vector(1u << b, n));
}

Subspace lift_through_basis(const Subspace& inner, const std::vector<F2Vector>& basis) {
    if (inner.ambient_dim() != int(basis.size()))
        throw input_error("lift_through_basis: basis size mismatch");
    if (basis.empty()) throw input_error("lift_through_basis: empty basis");
    int n = basis[0].dim;
    std::vector<F2Vector> gens;
    for (const F2Vector& v : inner.basis()) {
        std::uint32_t acc = 0;
        for (int i = 0; i < v.dim; ++i)
            if (v.get(i)) acc ^= basis[i].bits;
        gens.push_back(F2Vector(acc, n));
    }
    if (gens.empty()) return Subspace(n);
    return Subspace(n, gens);
}

namespace {

// For a fixed ascending pivot set, the free entries of row r are the columns
// right of pivots[r] that are not pivots themselves; filling them in all ways
// yields each subspace exactly once (RREF is a canonical form).
void fill_free_entries(int n, int d, const std::vector<int>& pivots,
                       std::vector<Subspace>& out) {
    std::vector<std::vector<int>> free_cols(d);
    std::uint32_t pivot_mask = 0;
    for (int p : pivots) pivot_mask |= 1u << p;
    int total_free = 0;
    for (int r = 0; r < d; ++r) {
        for (int c = pivots[r] + 1; c < n; ++c)
            if (!(pivot_mask & (1u << c))) free_cols[r].push_back(c);
        total_free += int(free_cols[r].size());
    }
    for (std::uint64_t sel = 0; sel < (std::uint64_t(1) << total_free); ++sel) {
        std::vector<F2Vector> gens;
        int bit = 0;
        for (int r = 0; r < d; ++r) {
            std::uint32_t row = 1u << pivots[r];
            for (int c : free_cols[r])
                if ((sel >> bit++) & 1u) row |= 1u << c;
            gens.push_back(F2Vector(row, n));
        }
        out.push_back(Subspace(n, gens));
    }
}

void choose_pivots(int n, int d, int start, std::vector<int>& pivots,
                   std::vector<Subspace>& out) {
    if (int(pivots.size()) == d) {
        fill_free_entries(n, d, pivots, out);
        return;
    }
    int remaining = d - int(pivots.size());
    for (int p = start; p <= n - remaining; ++p) {
        pivots.push_back(p);
        choose_pivots(n, d, p + 1, pivots, out);
        pivots.pop_back();
    }
}

} // namespace

std::vector<Subspace> all_subspaces(int n, int d) {
    require_dim(n);
    if (d < 0 || d > n) throw input_error("all_subspaces: need 0 <= d <= n");
    if (d == 0) return {Subspace(n)};
    std::vector<Subspace> out;
    std::vector<int> pivots;
    choose_pivots(n, d, 0, pivots, out);
    return out;
}

} // namespace lipt
