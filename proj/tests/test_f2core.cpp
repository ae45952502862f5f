#include <doctest.h>

#include <map>
#include <set>

#include "lipt/f2core.hpp"

using namespace lipt;

namespace {

F2Matrix matrix_from_rows(int cols, std::vector<std::uint32_t> rows) {
    F2Matrix m(int(rows.size()), cols);
    m.row_bits = std::move(rows);
    return m;
}

// Independent rank oracle: plain Gaussian elimination on an int grid.
int naive_rank(const F2Matrix& m) {
    std::vector<std::vector<int>> a(m.rows, std::vector<int>(m.cols, 0));
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) a[r][c] = m.get(r, c);
    int rank = 0;
    for (int c = 0; c < m.cols && rank < m.rows; ++c) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (a[r][c]) { pivot = r; break; }
        if (pivot < 0) continue;
        std::swap(a[rank], a[pivot]);
        for (int r = 0; r < m.rows; ++r)
            if (r != rank && a[r][c])
                for (int cc = 0; cc < m.cols; ++cc) a[r][cc] ^= a[rank][cc];
        ++rank;
    }
    return rank;
}

} // namespace

TEST_CASE("rref on identity and single-row matrices") {
    F2Matrix id2 = matrix_from_rows(2, {0b01, 0b10});
    RrefResult r = rref(id2);
    CHECK(r.rank == 2);
    CHECK(r.matrix.row_bits == std::vector<std::uint32_t>{0b01, 0b10});

    F2Matrix row = matrix_from_rows(3, {0b111});
    r = rref(row);
    CHECK(r.rank == 1);
    CHECK(r.matrix.row_bits == std::vector<std::uint32_t>{0b111});
}

TEST_CASE("rref rank matches the elimination oracle on random 3x5 matrices") {
    Rng rng = make_rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        F2Matrix m(3, 5);
        for (int r = 0; r < 3; ++r) m.row_bits[r] = rng.bits(5);
        CHECK(rref(m).rank == naive_rank(m));
    }
}

TEST_CASE("rref is idempotent") {
    Rng rng = make_rng(12);
    for (int trial = 0; trial < 50; ++trial) {
        F2Matrix m(4, 6);
        for (int r = 0; r < 4; ++r) m.row_bits[r] = rng.bits(6);
        F2Matrix once = rref(m).matrix;
        CHECK(rref(once).matrix == once);
    }
}

TEST_CASE("kernel basis of a single parity equation") {
    F2Matrix m = matrix_from_rows(3, {0b111});
    F2Matrix k = kernel_basis(m);
    CHECK(k.rows == 3);
    CHECK(k.cols == 2);
    // M K = 0 and the columns are independent
    for (int j = 0; j < k.cols; ++j) {
        int parity = 0;
        for (int r = 0; r < 3; ++r) parity ^= k.get(r, j);
        CHECK(parity == 0);
    }
    F2Matrix kt = k.transpose();
    CHECK(rref(kt).rank == 2);
}

TEST_CASE("kernel basis of the identity is empty") {
    F2Matrix id3 = matrix_from_rows(3, {1, 2, 4});
    CHECK(kernel_basis(id3).cols == 0);
}

TEST_CASE("kernel of a random rank-2 system covers exactly the solutions") {
    Rng rng = make_rng(13);
    F2Matrix m(2, 6);
    do {
        m.row_bits[0] = rng.bits(6);
        m.row_bits[1] = rng.bits(6);
    } while (rref(m).rank != 2);
    std::vector<F2Vector> cols = kernel_columns(m);
    REQUIRE(cols.size() == 4);
    Subspace kernel_span(6, cols);
    int solutions = 0;
    for (std::uint32_t x = 0; x < 64; ++x) {
        bool sol = true;
        for (int r = 0; r < 2; ++r)
            if (popcount32(m.row_bits[r] & x) & 1) sol = false;
        if (sol) {
            ++solutions;
            CHECK(kernel_span.contains(F2Vector(x, 6)));
        }
    }
    CHECK(solutions == 16); // 2^(6-2)
}

TEST_CASE("rank plus kernel dimension equals the column count") {
    Rng rng = make_rng(14);
    for (int trial = 0; trial < 50; ++trial) {
        int rows = 1 + int(rng.below(4));
        int cols = 3 + int(rng.below(6));
        F2Matrix m(rows, cols);
        for (int r = 0; r < rows; ++r) m.row_bits[r] = rng.bits(cols);
        CHECK(rref(m).rank + kernel_basis(m).cols == cols);
    }
}

TEST_CASE("rowspace membership") {
    F2Matrix m = matrix_from_rows(3, {0b111});
    CHECK(rowspace_contains(m, F2Vector(0, 3)));
    CHECK(rowspace_contains(m, F2Vector(0b111, 3)));
    CHECK_FALSE(rowspace_contains(m, F2Vector(0b001, 3)));
    CHECK_THROWS_AS(rowspace_contains(m, F2Vector(0b1, 1)), input_error);
}

TEST_CASE("span basics") {
    Subspace full = span({F2Vector(0b01, 2), F2Vector(0b10, 2)});
    CHECK(full.dim() == 2);
    Subspace dup = span({F2Vector(0b011, 3), F2Vector(0b011, 3)});
    CHECK(dup.dim() == 1);
    CHECK_THROWS_AS(span({}), input_error);
}

TEST_CASE("span membership matches the exhaustive combination oracle") {
    Rng rng = make_rng(15);
    std::vector<F2Vector> vs;
    for (int i = 0; i < 5; ++i) vs.push_back(F2Vector(rng.bits(8), 8));
    Subspace s = span(vs);
    std::set<std::uint32_t> combos;
    for (std::uint32_t sel = 0; sel < 32; ++sel) {
        std::uint32_t acc = 0;
        for (int i = 0; i < 5; ++i)
            if ((sel >> i) & 1u) acc ^= vs[i].bits;
        combos.insert(acc);
    }
    for (std::uint32_t x = 0; x < 256; ++x)
        CHECK(s.contains(F2Vector(x, 8)) == (combos.count(x) > 0));
}

TEST_CASE("enumerate yields each element once, zero first") {
    CHECK(enumerate(Subspace(4)).size() == 1);
    CHECK(enumerate(Subspace(4))[0].is_zero());

    Subspace full = Subspace::full(3);
    std::vector<F2Vector> elems = enumerate(full);
    CHECK(elems.size() == 8);
    CHECK(elems[0].is_zero());
    std::set<std::uint32_t> distinct;
    for (const auto& e : elems) distinct.insert(e.bits);
    CHECK(distinct.size() == 8);

    Rng rng = make_rng(16);
    Subspace s = random_subspace(10, 4, rng);
    std::set<std::uint32_t> seen;
    for (const auto& e : enumerate(s)) {
        CHECK(s.contains(e));
        seen.insert(e.bits);
    }
    CHECK(seen.size() == 16);
    CHECK(span(enumerate(s)) == s);
}

TEST_CASE("random_subspace degenerate dimensions") {
    Rng rng = make_rng(17);
    CHECK(random_subspace(5, 5, rng) == Subspace::full(5));
    CHECK(random_subspace(5, 0, rng).dim() == 0);
}

TEST_CASE("random_subspace is uniform over the 35 planes of F_2^4") {
    // Gaussian binomial [4 choose 2]_2 = 35, confirmed by enumeration.
    std::vector<Subspace> all = all_subspaces(4, 2);
    REQUIRE(all.size() == 35);

    Rng rng = make_rng(18);
    std::map<std::vector<std::uint32_t>, int> counts;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i)
        ++counts[random_subspace(4, 2, rng).basis_bits()];
    REQUIRE(counts.size() == 35);
    double expected = double(samples) / 35.0;
    double chi2 = 0;
    for (const auto& [basis, c] : counts) {
        double dev = c - expected;
        chi2 += dev * dev / expected;
    }
    // 34 degrees of freedom; 80 is far beyond the 0.999 quantile (~65.2)
    CHECK(chi2 < 80.0);
}

TEST_CASE("random_nonsingular basics and GL(2,2) uniformity") {
    Rng rng = make_rng(19);
    LinearMap one = random_nonsingular(1, rng);
    CHECK(one.apply_bits(1) == 1);

    LinearMap l = random_nonsingular(5, rng);
    LinearMap inv = l.inverse();
    for (int i = 0; i < 100; ++i) {
        std::uint32_t x = rng.bits(5);
        CHECK(inv.apply_bits(l.apply_bits(x)) == x);
    }

    std::map<std::pair<std::uint32_t, std::uint32_t>, int> counts;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
        LinearMap g = random_nonsingular(2, rng);
        ++counts[{g.apply_bits(1), g.apply_bits(2)}];
    }
    REQUIRE(counts.size() == 6); // |GL(2,2)| = 6
    double expected = double(samples) / 6.0;
    double chi2 = 0;
    for (const auto& [key, c] : counts) {
        double dev = c - expected;
        chi2 += dev * dev / expected;
    }
    CHECK(chi2 < 25.0); // 5 dof
}

TEST_CASE("coset transversal properties") {
    CHECK(coset_transversal(3, Subspace::full(3)).size() == 1);
    CHECK(coset_transversal(3, Subspace::full(3))[0].is_zero());
    CHECK(coset_transversal(2, Subspace(2)).size() == 4);

    Rng rng = make_rng(20);
    Subspace h = random_subspace(8, 5, rng);
    std::vector<F2Vector> reps = coset_transversal(8, h);
    REQUIRE(reps.size() == 8);
    CHECK(reps[0].is_zero());
    // pairwise distinct cosets
    for (size_t i = 0; i < reps.size(); ++i)
        for (size_t j = i + 1; j < reps.size(); ++j)
            CHECK_FALSE(h.contains(reps[i] ^ reps[j]));
    // cosets cover everything
    std::set<std::uint32_t> covered;
    for (const auto& r : reps)
        for (const auto& e : enumerate(h)) covered.insert(r.bits ^ e.bits);
    CHECK(covered.size() == 256);
    // each representative is lexicographically minimal in its coset
    for (const auto& r : reps)
        for (const auto& e : enumerate(h))
            if (!e.is_zero()) {
                F2Vector other = r ^ e;
                // lex order: coordinate x_1 = bit 0 read first
                bool r_before = false;
                for (int b = 0; b < 8; ++b) {
                    if (r.get(b) != other.get(b)) {
                        r_before = !r.get(b);
                        break;
                    }
                }
                CHECK(r_before);
            }
}

TEST_CASE("coset walker agrees with direct coset indexing") {
    Rng rng = make_rng(21);
    Subspace h = random_subspace(7, 3, rng);
    CosetWalker w(h);
    std::uint32_t idx = 0;
    for (std::uint32_t t = 1; t < 128; ++t) {
        std::uint32_t gray = t ^ (t >> 1);
        idx = w.flip(ctz32(t));
        CHECK(idx == h.coset_index(F2Vector(gray, 7)));
    }
}

TEST_CASE("vector parse and print round-trip") {
    F2Vector v = F2Vector::parse("01101");
    CHECK(v.dim == 5);
    CHECK(v.bits == 0b10110);
    CHECK(v.str() == "01101");
    CHECK_THROWS_AS(F2Vector::parse("012"), input_error);
}

TEST_CASE("lift_through_basis maps inner subspaces into the ambient space") {
    Rng rng = make_rng(22);
    Subspace outer = random_subspace(9, 4, rng);
    Subspace inner = random_subspace(4, 2, rng);
    Subspace lifted = lift_through_basis(inner, outer.basis());
    CHECK(lifted.dim() == 2);
    CHECK(outer.contains_subspace(lifted));
}
