#include "lipt/systems.hpp"

#include <algorithm>

#include "lipt/parallel.hpp"

namespace lipt {

namespace {

// Enumerates the nonzero rowspace of an RREF matrix, returning the first
// weight-1 coordinate and a weight-2 pair if present.
struct RowspaceScan {
    int weight1_coord = -1;
    int weight2_i = -1, weight2_j = -1; // first weight-2 vector found
};

RowspaceScan scan_rowspace(const F2Matrix& m) {
    if (m.rows > 20) throw budget_error("rowspace scan infeasible: more than 20 rows");
    RowspaceScan s;
    std::uint32_t cur = 0;
    for (std::uint32_t t = 1; t < (std::uint32_t(1) << m.rows); ++t) {
        cur ^= m.row_bits[ctz32(t)];
        int w = popcount32(cur);
        if (w == 1 && s.weight1_coord < 0) s.weight1_coord = ctz32(cur);
        if (w == 2 && s.weight2_i < 0) {
            s.weight2_i = ctz32(cur);
            s.weight2_j = ctz32(cur & (cur - 1));
        }
    }
    return s;
}

std::uint32_t remove_bit(std::uint32_t bits, int j) {
    std::uint32_t low = bits & ((1u << j) - 1);
    std::uint32_t high = (bits >> (j + 1)) << j;
    return low | high;
}

} // namespace

ValidationResult validate(const F2Matrix& m_in, std::uint32_t sigma) {
    if (m_in.cols <= 2) throw input_error("system needs more than two columns");
    if (m_in.cols < 32 && (sigma >> m_in.cols) != 0)
        throw input_error("sigma has bits beyond the column count");

    ValidationResult res;
    F2Matrix m = rref(m_in).matrix;
    if (m.rows == 0) throw input_error("system has no independent equations");

    while (true) {
        RowspaceScan scan = scan_rowspace(m);
        if (scan.weight1_coord >= 0) {
            res.status = ValidationStatus::value_forced;
            res.forced_coordinate = scan.weight1_coord;
            res.note = "rowspace contains a weight-1 vector at coordinate " +
                       std::to_string(scan.weight1_coord + 1) +
                       ": any solution forces that coordinate to 0, so freeness "
                       "constrains only f(0)";
            res.system = InducedSystem{m, sigma, true};
            return res;
        }
        if (scan.weight2_i >= 0) {
            int i = scan.weight2_i, j = scan.weight2_j;
            bool si = (sigma >> i) & 1u, sj = (sigma >> j) & 1u;
            if (si != sj) {
                res.status = ValidationStatus::trivially_free;
                res.note = "rowspace forces x_" + std::to_string(i + 1) + " = x_" +
                           std::to_string(j + 1) +
                           " but sigma differs there: no function induces this system";
                res.system = InducedSystem{m, sigma, true};
                return res;
            }
            // Substitute x_j = x_i: fold column j into column i, drop column j,
            // drop sigma_j, row-reduce.
            res.steps.push_back(ReductionStep{i, j});
            F2Matrix folded(m.rows, m.cols - 1);
            for (int r = 0; r < m.rows; ++r) {
                std::uint32_t row = m.row_bits[r];
                if ((row >> j) & 1u) row ^= (1u << i) | (1u << j);
                folded.row_bits[r] = remove_bit(row, j);
            }
            sigma = remove_bit(sigma & ~(1u << j), j);
            m = rref(folded).matrix;
            if (m.cols <= 2 || m.rows == 0) {
                res.status = ValidationStatus::reduced_degenerate;
                res.note = "weight-2 reductions drove the system below three columns";
                res.system = InducedSystem{m, sigma, true};
                return res;
            }
            continue;
        }
        break;
    }
    res.status = res.steps.empty() ? ValidationStatus::clean : ValidationStatus::reduced;
    res.system = InducedSystem{m, sigma, false};
    return res;
}

InducedSystem make_system(const F2Matrix& m, std::uint32_t sigma) {
    ValidationResult v = validate(m, sigma);
    if (!v.usable()) throw input_error("degenerate system: " + v.note);
    return *v.system;
}

int complexity(const F2Matrix& m_in) {
    F2Matrix m = rref(m_in).matrix;
    int k = m.cols;
    if (k > 12) throw budget_error("complexity: k > 12");
    if (m.rows == 0) throw input_error("complexity: zero matrix");

    // Membership of e_i + sum_{t in S} e_t in the rowspace, reduced via the
    // RREF rows.
    auto in_rowspace = [&](std::uint32_t v) {
        for (std::uint32_t row : m.row_bits) {
            std::uint32_t mask = 1u << ctz32(row);
            if (v & mask) v ^= row;
        }
        return v == 0;
    };

    int worst_parts = 1;
    for (int i = 0; i < k; ++i) {
        if (in_rowspace(1u << i))
            throw input_error("complexity: rowspace contains a weight-1 vector");
        std::vector<int> others;
        for (int t = 0; t < k; ++t)
            if (t != i) others.push_back(t);
        int nb = k - 1;
        std::uint32_t full = (1u << nb) - 1;

        // A part S determines x_i iff some rowspace vector v with v_i = 1 has
        // the rest of its support inside S (subset sums realize the span).
        std::vector<std::uint32_t> determining;
        std::uint32_t rs = 0;
        for (std::uint32_t t = 1; t < (std::uint32_t(1) << m.rows); ++t) {
            rs ^= m.row_bits[ctz32(t)];
            if (!((rs >> i) & 1u)) continue;
            std::uint32_t rest = rs & ~(1u << i);
            std::uint32_t compressed = 0;
            for (int b = 0; b < nb; ++b)
                if ((rest >> others[b]) & 1u) compressed |= 1u << b;
            determining.push_back(compressed);
        }

        std::vector<char> good(size_t(1) << nb);
        for (std::uint32_t s = 0; s <= full; ++s) {
            bool ok = true;
            for (std::uint32_t dm : determining)
                if ((dm & s) == dm) { ok = false; break; }
            good[s] = ok;
        }

        // reach[mask]: mask is coverable by <= j disjoint nonempty good parts.
        std::vector<char> reach(size_t(1) << nb, 0);
        reach[0] = 1;
        int parts = 0;
        bool done = good[full] != 0;
        if (done) parts = 1;
        std::vector<char> cur = reach;
        while (!done) {
            ++parts;
            if (parts > k) throw input_error("complexity: no partition found up to k parts");
            std::vector<char> next = cur;
            for (std::uint32_t mask = 1; mask <= full; ++mask) {
                if (next[mask]) continue;
                // first element of mask pinned into the new part to avoid
                // re-deriving the same cover k! times
                std::uint32_t low = mask & (mask ^ (mask - 1));
                for (std::uint32_t s = mask; s; s = (s - 1) & mask) {
                    if (!(s & low)) continue;
                    if (good[s] && cur[mask ^ s]) { next[mask] = 1; break; }
                }
            }
            if (next[full]) done = true;
            cur.swap(next);
            if (parts == k && !done)
                throw input_error("complexity: no partition found up to k parts");
        }
        worst_parts = std::max(worst_parts, parts);
    }
    return std::max(1, worst_parts - 1);
}

bool induces_at(const BooleanFunction& f, const InducedSystem& sys,
                const std::vector<F2Vector>& x) {
    if (int(x.size()) != sys.k()) throw input_error("induces_at: tuple length mismatch");
    for (const F2Vector& xi : x)
        if (xi.dim != f.dim()) throw input_error("induces_at: vector dimension mismatch");
    for (int r = 0; r < sys.m.rows; ++r) {
        std::uint32_t acc = 0;
        std::uint32_t row = sys.m.row_bits[r];
        while (row) {
            acc ^= x[ctz32(row)].bits;
            row &= row - 1;
        }
        if (acc != 0) return false;
    }
    for (int i = 0; i < sys.k(); ++i)
        if (f.get(x[i].bits) != bool((sys.sigma >> i) & 1u)) return false;
    return true;
}

namespace {

// Gray-code walk over the kernel parameterization x = x0 + K y, where each
// y_j ranges over the span of `steps`. Column-major: y_1's coefficients are
// the fastest-varying bits. match(i) is recomputed only for the x_i touched
// by a step. Counting splits the walk range across workers.
struct KernelWalk {
    const BooleanFunction& f;
    const InducedSystem& sys;
    std::vector<std::uint32_t> kcol_mask; // per kernel column: which x_i move
    std::vector<std::uint32_t> steps;     // basis of the y_j range
    std::vector<std::uint32_t> x0;

    int total_bits() const { return int(kcol_mask.size() * steps.size()); }

    // pattern match against sigma; mu == nullptr means exact f-values
    const PartialPattern* mu = nullptr;

    bool matches(std::uint32_t xi, int i) const {
        bool want = (sys.sigma >> i) & 1u;
        if (mu) {
            std::uint8_t v = mu->at(xi);
            return v == PartialPattern::kStar || (v == 1) == want;
        }
        return f.get(xi) == want;
    }

    template <typename OnHit>
    void run_range(std::uint64_t t_begin, std::uint64_t t_end, OnHit&& on_hit) const {
        int k = sys.k();
        int b = int(steps.size());
        std::vector<std::uint32_t> x(x0);
        // state at gray(t_begin)
        std::uint64_t g0 = t_begin ^ (t_begin >> 1);
        for (int bit = 0; bit < total_bits(); ++bit) {
            if ((g0 >> bit) & 1u) {
                int j = bit / b, s = bit % b;
                std::uint32_t m = kcol_mask[j];
                while (m) { x[ctz32(m)] ^= steps[s]; m &= m - 1; }
            }
        }
        int cnt = 0;
        std::vector<char> ok(k);
        for (int i = 0; i < k; ++i) {
            ok[i] = matches(x[i], i);
            cnt += ok[i];
        }
        if (cnt == k && !on_hit(x)) return;
        for (std::uint64_t t = t_begin + 1; t < t_end; ++t) {
            int bit = __builtin_ctzll(t);
            int j = bit / b, s = bit % b;
            std::uint32_t m = kcol_mask[j];
            std::uint32_t stepv = steps[s];
            while (m) {
                int i = ctz32(m);
                m &= m - 1;
                cnt -= ok[i];
                x[i] ^= stepv;
                ok[i] = matches(x[i], i);
                cnt += ok[i];
            }
            if (cnt == k && !on_hit(x)) return;
        }
    }

    std::uint64_t count() const {
        int bits = total_bits();
        if (bits == 0) {
            std::uint64_t c = 0;
            run_range(0, 1, [&](const std::vector<std::uint32_t>&) { ++c; return true; });
            return c;
        }
        std::uint64_t total_pts = std::uint64_t(1) << bits;
        int chunks = 1;
        if (thread_count() > 1 && bits > 16)
            chunks = int(std::max<std::uint64_t>(1, std::min<std::uint64_t>(64, total_pts >> 12)));
        std::vector<std::uint64_t> partial(chunks, 0);
        std::uint64_t per = total_pts / chunks;
        parallel_chunks(chunks, [&](int c) {
            std::uint64_t lo = per * c;
            std::uint64_t hi = c + 1 == chunks ? total_pts : per * (c + 1);
            std::uint64_t cc = 0;
            run_range(lo, hi, [&](const std::vector<std::uint32_t>&) { ++cc; return true; });
            partial[c] = cc;
        });
        std::uint64_t sum = 0;
        for (std::uint64_t p : partial) sum += p;
        return sum;
    }

    std::optional<std::vector<std::uint32_t>> find_first() const {
        std::optional<std::vector<std::uint32_t>> hit;
        std::uint64_t total_pts = std::uint64_t(1) << total_bits();
        run_range(0, total_pts, [&](const std::vector<std::uint32_t>& x) {
            hit = x;
            return false;
        });
        return hit;
    }
};

KernelWalk make_walk(const BooleanFunction& f, const InducedSystem& sys,
                     const std::vector<std::uint32_t>& step_basis,
                     const std::vector<std::uint32_t>& x0, int budget_bits) {
    std::vector<F2Vector> kcols = kernel_columns(sys.m);
    KernelWalk w{f, sys, {}, step_basis, x0};
    for (const F2Vector& col : kcols) w.kcol_mask.push_back(col.bits);
    if (w.total_bits() > budget_bits)
        throw budget_error("kernel enumeration budget exceeded: " +
                           std::to_string(w.total_bits()) + " bits > " +
                           std::to_string(budget_bits));
    return w;
}

std::vector<std::uint32_t> standard_basis_bits(int n) {
    std::vector<std::uint32_t> b(n);
    for (int i = 0; i < n; ++i) b[i] = 1u << i;
    return b;
}

} // namespace

std::uint64_t count_induced(const BooleanFunction& f, const InducedSystem& sys) {
    std::vector<std::uint32_t> x0(sys.k(), 0);
    return make_walk(f, sys, standard_basis_bits(f.dim()), x0, kKernelBudgetBits).count();
}

std::optional<std::vector<F2Vector>> find_witness(const BooleanFunction& f,
                                                  const InducedSystem& sys) {
    std::vector<std::uint32_t> x0(sys.k(), 0);
    auto hit = make_walk(f, sys, standard_basis_bits(f.dim()), x0, kKernelBudgetBits)
                   .find_first();
    if (!hit) return std::nullopt;
    std::vector<F2Vector> out;
    for (std::uint32_t b : *hit) out.push_back(F2Vector(b, f.dim()));
    return out;
}

FreenessResult is_free(const BooleanFunction& f, const Family& fam) {
    FreenessResult res;
    std::vector<InducedSystem> systems = fam.realized();
    for (size_t i = 0; i < systems.size(); ++i) {
        auto w = find_witness(f, systems[i]);
        if (w) {
            res.free = false;
            res.witness = Witness{int(i), *w};
            return res;
        }
    }
    return res;
}

Q distance_to_family(const BooleanFunction& f, const Family& fam) {
    int n = f.dim();
    if (n > 4) throw budget_error("distance_to_family: exhaustive mode needs n <= 4");
    std::uint32_t points = std::uint32_t(1) << n;
    std::uint64_t best = UINT64_MAX;
    std::vector<InducedSystem> systems = fam.realized();
    for (std::uint64_t table = 0; table < (std::uint64_t(1) << points); ++table) {
        BooleanFunction g(n);
        for (std::uint32_t x = 0; x < points; ++x)
            if ((table >> x) & 1u) g.set(x, true);
        bool free = true;
        for (const InducedSystem& sys : systems)
            if (find_witness(g, sys)) { free = false; break; }
        if (!free) continue;
        std::uint64_t diff = std::popcount((table ^ f.words()[0]) &
                                           ((points == 64 ? ~std::uint64_t(0)
                                                          : (std::uint64_t(1) << points) - 1)));
        best = std::min(best, diff);
        if (best == 0) break;
    }
    if (best == UINT64_MAX)
        throw input_error("distance_to_family: no free function exists at this dimension");
    return Q::dyadic(std::int64_t(best), n);
}

bool partially_induces(const PartialPattern& mu, const InducedSystem& sys) {
    BooleanFunction dummy(0);
    std::vector<std::uint32_t> x0(sys.k(), 0);
    KernelWalk w = make_walk(dummy, sys, standard_basis_bits(mu.r()), x0, kKernelBudgetBits);
    w.mu = &mu;
    return w.find_first().has_value();
}

PsiResult psi(const Family& fam, int r) {
    if (r > 3) throw budget_error("psi: r > 3");
    std::vector<InducedSystem> systems = fam.realized();
    if (systems.empty()) return PsiResult{true, 0};
    std::sort(systems.begin(), systems.end(),
              [](const InducedSystem& a, const InducedSystem& b) { return a.k() < b.k(); });

    // Per system, the signatures (reject0, reject1) of every kernel point:
    // mu matches the point iff it assigns no 0 where reject0 demands otherwise
    // and no 1 where reject1 does. Patterns then screen against signatures.
    std::uint32_t npts = 1u << r;
    struct Sig { std::uint32_t reject0, reject1; };
    std::vector<std::vector<Sig>> sigs(systems.size());
    for (size_t si = 0; si < systems.size(); ++si) {
        const InducedSystem& sys = systems[si];
        std::vector<F2Vector> kcols = kernel_columns(sys.m);
        int c = int(kcols.size());
        if (r * c > kKernelBudgetBits) throw budget_error("psi: kernel walk too large");
        std::vector<std::uint32_t> x(sys.k(), 0);
        std::vector<Sig> seen;
        auto record = [&]() {
            Sig s{0, 0};
            for (int i = 0; i < sys.k(); ++i) {
                bool want = (sys.sigma >> i) & 1u;
                if (want) s.reject0 |= 1u << x[i];
                else s.reject1 |= 1u << x[i];
            }
            for (const Sig& t : seen)
                if (t.reject0 == s.reject0 && t.reject1 == s.reject1) return;
            seen.push_back(s);
        };
        record();
        std::uint64_t total = std::uint64_t(1) << (r * c);
        for (std::uint64_t t = 1; t < total; ++t) {
            int bit = __builtin_ctzll(t);
            int j = bit / r, b = bit % r;
            std::uint32_t m = kcols[j].bits;
            while (m) { x[ctz32(m)] ^= 1u << b; m &= m - 1; }
            record();
        }
        sigs[si] = std::move(seen);
    }

    // Odometer over all 3^(2^r) patterns, tracked as (zero-mask, one-mask).
    std::vector<std::uint8_t> digits(npts, 0);
    int best = -1;
    while (true) {
        std::uint32_t m0 = 0, m1 = 0;
        for (std::uint32_t u = 0; u < npts; ++u) {
            if (digits[u] == 0) m0 |= 1u << u;
            else if (digits[u] == 1) m1 |= 1u << u;
        }
        int mink = -1;
        for (size_t si = 0; si < systems.size() && mink < 0; ++si)
            for (const Sig& s : sigs[si])
                if ((m0 & s.reject0) == 0 && (m1 & s.reject1) == 0) {
                    mink = systems[si].k();
                    break;
                }
        if (mink > best) best = mink;
        // advance
        std::uint32_t pos = 0;
        while (pos < npts && digits[pos] == 2) digits[pos++] = 0;
        if (pos == npts) break;
        ++digits[pos];
    }
    // best >= smallest k always: the all-star pattern matches every system.
    return PsiResult{false, best};
}

} // namespace lipt
