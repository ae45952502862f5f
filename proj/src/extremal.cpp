#include "lipt/extremal.hpp"

#include <algorithm>
#include <bit>

namespace lipt {

PointSet::PointSet(int n) : n_(n) {
    require_dim(n);
    words_.assign(((std::uint64_t(1) << n) + 63) / 64, 0);
}

std::uint64_t PointSet::count() const {
    std::uint64_t c = 0;
    for (std::uint64_t w : words_) c += std::popcount(w);
    return c;
}

PointSet PointSet::complement() const {
    PointSet out(n_);
    for (size_t i = 0; i < words_.size(); ++i) out.words_[i] = ~words_[i];
    if (n_ < 6) out.words_[0] &= (std::uint64_t(1) << (1 << n_)) - 1;
    return out;
}

PointSet PointSet::everything(int n) {
    PointSet s(n);
    return s.complement();
}

namespace {

// Extends `chosen` (independent, with span - {0} inside S) one vector at a
// time. Candidates are scanned in increasing integer order above the last
// pick, which makes the first find deterministic.
bool extend_basis(const PointSet& s, int d, std::vector<std::uint32_t>& chosen,
                  std::vector<std::uint32_t>& span_nonzero, std::uint32_t from) {
    if (int(chosen.size()) == d) return true;
    for (std::uint32_t v = from; v < s.size(); ++v) {
        if (!s.contains(v)) continue;
        bool ok = true;
        for (std::uint32_t w : span_nonzero) {
            if (w == v) { ok = false; break; } // v already in span: dependent
            if (!s.contains(w ^ v)) { ok = false; break; }
        }
        if (!ok) continue;
        size_t old = span_nonzero.size();
        std::vector<std::uint32_t> added;
        added.push_back(v);
        for (size_t i = 0; i < old; ++i) added.push_back(span_nonzero[i] ^ v);
        for (std::uint32_t w : added) span_nonzero.push_back(w);
        chosen.push_back(v);
        if (extend_basis(s, d, chosen, span_nonzero, v + 1)) return true;
        chosen.pop_back();
        span_nonzero.resize(old);
    }
    return false;
}

} // namespace

std::optional<Subspace> find_subspace_in_set(const PointSet& s, int d) {
    if (s.dim() > 16) throw budget_error("find_subspace_in_set: n > 16");
    if (d > 6) throw budget_error("find_subspace_in_set: d > 6");
    if (d == 0) return Subspace(s.dim());
    if (d > s.dim()) return std::nullopt;
    std::vector<std::uint32_t> chosen, span_nonzero;
    if (!extend_basis(s, d, chosen, span_nonzero, 1)) return std::nullopt;
    std::vector<F2Vector> basis;
    for (std::uint32_t v : chosen) basis.push_back(F2Vector(v, s.dim()));
    return Subspace(s.dim(), basis);
}

PointSet turan_extremal_set(int n, int d) {
    if (d < 1 || d > n) throw input_error("turan_extremal_set: need 1 <= d <= n");
    // K = span(e_1..e_{d-1}), K' = span(e_d..e_n); S = F_2^n minus K'.
    PointSet s = PointSet::everything(n);
    std::uint32_t k_mask = (1u << (d - 1)) - 1; // coordinates spanning K
    for (std::uint32_t x = 0; x < s.size(); ++x)
        if ((x & k_mask) == 0) s.erase(x); // x lies in K'
    return s;
}

std::optional<MonochromeCertificate> ramsey_find(const PointSet& s, int d) {
    if (auto h = find_subspace_in_set(s, d)) return MonochromeCertificate{*h, true};
    if (auto h = find_subspace_in_set(s.complement(), d))
        return MonochromeCertificate{*h, false};
    return std::nullopt;
}

unsigned __int128 affine_ramsey_bound(int d) {
    if (d < 1) throw input_error("affine_ramsey_bound: d >= 1");
    if (d > 4) throw budget_error("affine_ramsey_bound: value for d >= 5 exceeds 128-bit range");
    unsigned __int128 v = 1; // N_a(1)
    for (int i = 2; i <= d; ++i)
        v = ((unsigned __int128)1 << unsigned(v + 1)) + v;
    return v;
}

std::string affine_ramsey_bound_str(int d) {
    unsigned __int128 v = affine_ramsey_bound(d);
    if (v == 0) return "0";
    std::string s;
    while (v) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

namespace {

// All invertible N x N matrices as point permutations of F_2^N; |GL(4,2)| =
// 20160 is the largest case used.
std::vector<std::vector<std::uint32_t>> gl_point_maps(int n) {
    std::vector<std::vector<std::uint32_t>> maps;
    std::uint64_t total = std::uint64_t(1) << (n * n);
    for (std::uint64_t enc = 0; enc < total; ++enc) {
        std::vector<std::uint32_t> cols(n);
        for (int i = 0; i < n; ++i)
            cols[i] = std::uint32_t((enc >> (i * n)) & ((1u << n) - 1));
        // rank check
        std::vector<std::uint32_t> rows = cols;
        int rank = 0;
        for (int c = 0; c < n; ++c) {
            int p = -1;
            for (int r = rank; r < n; ++r)
                if ((rows[r] >> c) & 1u) { p = r; break; }
            if (p < 0) continue;
            std::swap(rows[rank], rows[p]);
            for (int r = 0; r < n; ++r)
                if (r != rank && ((rows[r] >> c) & 1u)) rows[r] ^= rows[rank];
            ++rank;
        }
        if (rank != n) continue;
        std::vector<std::uint32_t> pt(std::uint32_t(1) << n);
        for (std::uint32_t x = 0; x < pt.size(); ++x) {
            std::uint32_t y = 0, xx = x;
            while (xx) {
                y ^= cols[ctz32(xx)];
                xx &= xx - 1;
            }
            pt[x] = y;
        }
        maps.push_back(std::move(pt));
    }
    return maps;
}

bool has_monochrome(std::uint32_t coloring, int n, int d) {
    PointSet s(n);
    for (std::uint32_t x = 1; x < (std::uint32_t(1) << n); ++x)
        if ((coloring >> (x - 1)) & 1u) s.insert(x);
    return ramsey_find(s, d).has_value();
}

} // namespace

RamseyMinN ramsey_min_N(int d) {
    if (d < 1) throw input_error("ramsey_min_N: d >= 1");
    if (d > 2) throw budget_error("ramsey_min_N: exhaustive search supports d <= 2");
    if (d == 1) {
        // Any coloring of the single nonzero point of F_2^1 is monochromatic.
        return RamseyMinN{1, std::nullopt};
    }
    for (int n = d;; ++n) {
        if (n > 5) throw budget_error("ramsey_min_N: search exceeded n = 5");
        auto maps = gl_point_maps(n);
        std::uint32_t npts = (1u << n) - 1;
        std::optional<std::uint32_t> bad;
        for (std::uint32_t coloring = 0; coloring < (std::uint32_t(1) << npts); ++coloring) {
            // orbit pruning: test only the lexicographically smallest coloring
            // in its GL(n,2) orbit
            bool smallest = true;
            for (const auto& pt : maps) {
                std::uint32_t img = 0;
                for (std::uint32_t x = 1; x <= npts; ++x)
                    if ((coloring >> (x - 1)) & 1u) img |= 1u << (pt[x] - 1);
                if (img < coloring) { smallest = false; break; }
            }
            if (!smallest) continue;
            if (!has_monochrome(coloring, n, d)) { bad = coloring; break; }
        }
        if (!bad) {
            RamseyMinN res;
            res.min_n = n;
            if (n > 1) {
                // re-derive a counterexample at n-1 for the report
                std::uint32_t prev_pts = (1u << (n - 1)) - 1;
                for (std::uint32_t coloring = 0; coloring < (std::uint32_t(1) << prev_pts);
                     ++coloring) {
                    if (!has_monochrome(coloring, n - 1, d)) {
                        PointSet s(n - 1);
                        for (std::uint32_t x = 1; x <= prev_pts; ++x)
                            if ((coloring >> (x - 1)) & 1u) s.insert(x);
                        res.counterexample = s;
                        break;
                    }
                }
            }
            return res;
        }
    }
}

std::optional<AffineCoset> strict_affine_ramsey_find(const PointSet& s, int d) {
    int n = s.dim();
    if (n > 10) throw budget_error("strict_affine_ramsey_find: n > 10");
    if (d < 0 || d > n) throw input_error("strict_affine_ramsey_find: bad d");
    // the subspace count grows like 2^{d(n-d)}
    if (d * (n - d) > 20) throw budget_error("strict_affine_ramsey_find: too many flats");
    PointSet sbar = s.complement();
    for (const Subspace& h : all_subspaces(n, d)) {
        std::vector<F2Vector> elems = enumerate(h);
        for (const F2Vector& a : coset_transversal(n, h)) {
            if (a.is_zero()) continue; // strict flats only
            bool all_in = true, all_out = true;
            for (const F2Vector& e : elems) {
                std::uint32_t p = a.bits ^ e.bits;
                if (s.contains(p)) all_out = false;
                else all_in = false;
                if (!all_in && !all_out) break;
            }
            if (all_in || all_out) return AffineCoset(a, h);
        }
    }
    return std::nullopt;
}

} // namespace lipt
