#include "lipt/families.hpp"

#include <algorithm>

#include "lipt/parallel.hpp"

namespace lipt {

F2Matrix rm_matrix(int d) {
    if (d < 1 || d > 3) throw budget_error("rm_matrix: d must be in [1,3]");
    int params = d + 1;          // alpha_1 .. alpha_{d+1}
    int k = 1 << params;         // evaluation points, one per subset S
    // Column s is the point alpha + sum_{i in s} alpha_i. In the basis
    // B = {alpha, alpha+alpha_1, ..., alpha+alpha_{d+1}} its coordinates are
    // (1+|s| mod 2) on alpha and the characteristic vector of s on the rest.
    // Every point outside B contributes one relation row.
    std::vector<std::uint32_t> rows;
    for (std::uint32_t s = 0; s < std::uint32_t(k); ++s) {
        if (popcount32(s) < 2) continue; // these points are the basis B itself
        std::uint32_t row = 1u << s;
        if ((1 + popcount32(s)) % 2 == 1) row ^= 1u << 0; // alpha = column 0
        std::uint32_t ss = s;
        while (ss) {
            int i = ctz32(ss);
            ss &= ss - 1;
            row ^= 1u << (1u << i); // alpha+alpha_{i+1} = column 2^i
        }
        rows.push_back(row);
    }
    F2Matrix m(int(rows.size()), k);
    m.row_bits = rows;
    return rref(m).matrix;
}

Family rm_family(int d) {
    F2Matrix m = rm_matrix(d);
    int k = m.cols;
    Family fam;
    for (std::uint32_t sigma = 0; sigma < (std::uint32_t(1) << k); ++sigma) {
        if (popcount32(sigma) % 2 == 1)
            fam.explicit_systems.push_back(InducedSystem{m, sigma, false});
    }
    return fam;
}

bool rm_membership(const BooleanFunction& f, int d) {
    return anf_degree(f) <= d;
}

bool rm_membership_via_identity(const BooleanFunction& f, int d) {
    int n = f.dim();
    int params = d + 2; // alpha plus d+1 directions
    if (n * params > 26)
        throw budget_error("rm_membership_via_identity: n*(d+2) > 26");
    std::uint64_t total = std::uint64_t(1) << (n * params);
    std::uint32_t mask = n == 0 ? 0 : (1u << n) - 1;
    for (std::uint64_t t = 0; t < total; ++t) {
        std::uint32_t alpha = std::uint32_t(t & mask);
        int acc = 0;
        for (std::uint32_t s = 0; s < (std::uint32_t(1) << (d + 1)); ++s) {
            std::uint32_t x = alpha;
            std::uint32_t ss = s;
            while (ss) {
                int i = ctz32(ss);
                ss &= ss - 1;
                x ^= std::uint32_t((t >> ((i + 1) * n)) & mask);
            }
            acc ^= f.get(x) ? 1 : 0;
        }
        if (acc != 0) return false;
    }
    return true;
}

ObstructionSystem obstruction_system(int d, std::uint32_t point_set) {
    if (d < 1 || d > 4) throw budget_error("obstruction_system: d must be in [1,4]");
    int k = 1 << d;
    if (d < 5 && (point_set >> k) != 0)
        throw input_error("obstruction_system: point set beyond F_2^d");
    // A_d: row per point of F_2^d in little-endian order. M_d spans the
    // left kernel: rows r with r^T A_d = 0.
    F2Matrix a(k, d);
    for (int p = 0; p < k; ++p) a.row_bits[p] = std::uint32_t(p);
    F2Matrix at = a.transpose(); // d x 2^d
    F2Matrix kern = kernel_basis(at); // 2^d x (2^d - d); columns span the left kernel
    F2Matrix m(kern.cols, k);
    for (int r = 0; r < kern.cols; ++r)
        for (int c = 0; c < k; ++c)
            if (kern.get(c, r)) m.set(r, c, true);
    m = rref(m).matrix;

    ObstructionSystem obs;
    obs.d = d;
    obs.point_set = point_set;
    obs.system = InducedSystem{m, point_set, k <= 2};
    return obs;
}

namespace {

BooleanFunction function_from_table_bits(int n, std::uint64_t table) {
    BooleanFunction f(n);
    for (std::uint32_t x = 0; x < (std::uint32_t(1) << n); ++x)
        if ((table >> x) & 1u) f.set(x, true);
    return f;
}

// Exhaustive check (dims <= 3 are tiny): prop closed under composition with
// every linear self-map and under restriction to every subspace.
void assert_oracle_shape(const std::function<bool(const BooleanFunction&)>& prop,
                         int max_d) {
    for (int dd = 0; dd <= max_d; ++dd) {
        std::uint32_t pts = 1u << dd;
        for (std::uint64_t table = 0; table < (std::uint64_t(1) << pts); ++table) {
            BooleanFunction f = function_from_table_bits(dd, table);
            if (!prop(f)) continue;
            // linear invariance, all (possibly singular) self-maps
            std::uint64_t nmaps = std::uint64_t(1) << (dd * dd);
            for (std::uint64_t enc = 0; enc < nmaps; ++enc) {
                LinearMap l(dd, dd);
                for (int i = 0; i < dd; ++i)
                    l.set_column(i, F2Vector(std::uint32_t((enc >> (i * dd)) & (pts - 1)), dd));
                if (!prop(compose_linear(f, l)))
                    throw input_error("family_from_oracle: predicate is not linear-invariant");
            }
            // heredity
            for (int sub_d = 0; sub_d < dd; ++sub_d)
                for (const Subspace& u : all_subspaces(dd, sub_d))
                    if (!prop(restrict(f, u, F2Vector(0, dd))))
                        throw input_error("family_from_oracle: predicate is not subspace-hereditary");
        }
    }
}

} // namespace

Family family_from_oracle(const std::function<bool(const BooleanFunction&)>& prop,
                          int max_d) {
    if (max_d < 1 || max_d > 3) throw budget_error("family_from_oracle: max_d must be in [1,3]");
    assert_oracle_shape(prop, max_d);

    Family fam;
    for (int d = 1; d <= max_d; ++d) {
        std::uint32_t pts = 1u << d;
        std::uint64_t tables = std::uint64_t(1) << pts;
        std::vector<Subspace> proper;
        for (int sub_d = 0; sub_d < d; ++sub_d)
            for (const Subspace& u : all_subspaces(d, sub_d)) proper.push_back(u);
        // scan over supports in parallel; chunks merge in table order
        int chunks = std::min<std::uint64_t>(64, tables);
        std::vector<std::vector<std::uint32_t>> found(chunks);
        std::uint64_t per = tables / chunks;
        parallel_chunks(chunks, [&](int ci) {
            std::uint64_t lo = per * ci;
            std::uint64_t hi = ci + 1 == chunks ? tables : per * (ci + 1);
            for (std::uint64_t table = lo; table < hi; ++table) {
                BooleanFunction cand = function_from_table_bits(d, table);
                if (prop(cand)) continue;
                // minimality: every proper subspace restriction satisfies prop
                bool minimal = true;
                for (const Subspace& u : proper) {
                    if (!prop(restrict(cand, u, F2Vector(0, d)))) {
                        minimal = false;
                        break;
                    }
                }
                if (minimal) found[ci].push_back(std::uint32_t(table));
            }
        });
        for (const auto& chunk : found)
            for (std::uint32_t table : chunk)
                fam.explicit_systems.push_back(obstruction_system(d, table).system);
    }
    return fam;
}

std::vector<InducedSystem> Family::realized() const {
    std::vector<InducedSystem> out = explicit_systems;
    for (const FamilyGenerator& gen : generators) {
        if (gen.name == "rm") {
            if ((1 << (gen.d + 1)) > gen.max_k) continue;
            Family rm = rm_family(gen.d);
            out.insert(out.end(), rm.explicit_systems.begin(), rm.explicit_systems.end());
        } else {
            throw input_error("unknown family generator: " + gen.name);
        }
    }
    return out;
}

} // namespace lipt
