#include <doctest.h>

#include <set>

#include "lipt/families.hpp"
#include "lipt/systems.hpp"

using namespace lipt;

namespace {

F2Matrix matrix_from_rows(int cols, std::vector<std::uint32_t> rows) {
    F2Matrix m(int(rows.size()), cols);
    m.row_bits = std::move(rows);
    return m;
}

Family triangle_family() {
    Family fam;
    fam.explicit_systems.push_back(make_system(matrix_from_rows(3, {0b111}), 0b111));
    return fam;
}

// Naive O(4^n) triple-loop oracle for the single equation x+y+z = 0.
std::uint64_t naive_triangle_count(const BooleanFunction& f, std::uint32_t sigma) {
    std::uint64_t count = 0;
    for (std::uint32_t x = 0; x < f.size(); ++x)
        for (std::uint32_t y = 0; y < f.size(); ++y) {
            std::uint32_t z = x ^ y;
            if (f.get(x) == bool(sigma & 1) && f.get(y) == bool((sigma >> 1) & 1) &&
                f.get(z) == bool((sigma >> 2) & 1))
                ++count;
        }
    return count;
}

} // namespace

TEST_CASE("validate accepts a clean system") {
    ValidationResult v = validate(matrix_from_rows(3, {0b111}), 0b111);
    CHECK(v.status == ValidationStatus::clean);
    REQUIRE(v.system.has_value());
    CHECK(v.system->k() == 3);
    CHECK(v.system->rank() == 1);
}

TEST_CASE("validate reports a weight-1 rowspace vector") {
    ValidationResult v = validate(matrix_from_rows(3, {0b001}), 0b001);
    CHECK(v.status == ValidationStatus::value_forced);
    CHECK(v.forced_coordinate == 0);
}

TEST_CASE("validate reports trivially-free on weight-2 with unequal sigma") {
    // rowspace of {x1+x2, x2+x3} contains x1+x2; sigma disagrees there
    ValidationResult v = validate(matrix_from_rows(3, {0b011, 0b110}), 0b001);
    CHECK(v.status == ValidationStatus::trivially_free);
}

TEST_CASE("validate applies the weight-2 substitution and flags k <= 2") {
    // rows x1+x2 and x2+x3: rowspace {000, 110, 011, 101} in string form
    ValidationResult v = validate(matrix_from_rows(3, {0b011, 0b110}), 0b111);
    CHECK(v.status == ValidationStatus::reduced_degenerate);
    REQUIRE(!v.steps.empty());
    // the rowspace scan meets x1+x3 first (RREF makes the rows x1+x3, x2+x3),
    // so the substitution folds x3 into x1; the hand-derived result is the
    // same either way: a single two-variable equation
    CHECK(v.steps[0].kept_coordinate == 0);
    CHECK(v.steps[0].removed_coordinate == 2);
    REQUIRE(v.system.has_value());
    CHECK(v.system->k() == 2);
    CHECK(v.system->m.row_bits == std::vector<std::uint32_t>{0b11});
    CHECK(v.system->sigma == 0b11);
}

TEST_CASE("weight-2 reduction preserves freeness semantics") {
    // x1+x2 = 0 and x2+x3+x4 = 0: one reduction leaves a clean 3-column system
    F2Matrix m = matrix_from_rows(4, {0b0011, 0b1110});
    ValidationResult v = validate(m, 0b1111);
    CHECK(v.status == ValidationStatus::reduced);
    REQUIRE(v.system.has_value());
    CHECK(v.system->k() == 3);
    CHECK_FALSE(v.system->degenerate);

    InducedSystem original{rref(m).matrix, 0b1111, false};
    Rng rng = make_rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        BooleanFunction f = BooleanFunction::random(4, 0.5, rng);
        bool orig_free = count_induced(f, original) == 0;
        bool red_free = count_induced(f, *v.system) == 0;
        CHECK(orig_free == red_free);
    }
}

TEST_CASE("reductions preserve freeness on random degenerate systems") {
    // random matrices rigged to contain a weight-2 rowspace vector; whenever
    // validate returns a usable reduced system, it must accept exactly the
    // same functions as the original
    Rng rng = make_rng(51);
    int reduced_seen = 0;
    for (int trial = 0; trial < 200; ++trial) {
        int k = 4 + int(rng.below(3)); // 4..6
        F2Matrix m(2, k);
        int i = int(rng.below(std::uint32_t(k)));
        int j = int(rng.below(std::uint32_t(k)));
        if (i == j) continue;
        m.row_bits[0] = (1u << i) | (1u << j);
        m.row_bits[1] = rng.bits(k);
        if (rref(m).rank != 2) continue;
        std::uint32_t sigma = rng.bits(k);
        // force the equal-sigma branch so a reduction fires
        if (((sigma >> i) ^ (sigma >> j)) & 1u) sigma ^= 1u << j;

        ValidationResult v = validate(m, sigma);
        if (v.status != ValidationStatus::reduced) continue;
        ++reduced_seen;
        InducedSystem original{rref(m).matrix, sigma, false};
        for (int t = 0; t < 10; ++t) {
            BooleanFunction f = BooleanFunction::random(4, 0.5, rng);
            CHECK((count_induced(f, original) == 0) == (count_induced(f, *v.system) == 0));
        }
    }
    CHECK(reduced_seen > 20);
}

TEST_CASE("complexity of single equations is 1") {
    CHECK(complexity(matrix_from_rows(4, {0b1111})) == 1);
    CHECK(complexity(matrix_from_rows(3, {0b111})) == 1);
    CHECK(complexity(matrix_from_rows(6, {0b111111})) == 1);
}

TEST_CASE("complexity of two-row matrices with all weights >= 3 is 1") {
    // x1+x2+x3 and x3+x4+x5: third rowspace vector has weight 4
    F2Matrix m = matrix_from_rows(5, {0b00111, 0b11100});
    CHECK(complexity(m) == 1);
    // x1+x2+x3+x4, x3+x4+x5+x6
    CHECK(complexity(matrix_from_rows(6, {0b001111, 0b111100})) == 1);
}

TEST_CASE("complexity of the degree-2 pattern matrix is exactly 2") {
    CHECK(complexity(rm_matrix(2)) == 2);
}

TEST_CASE("complexity is at most the rank for clean systems") {
    Rng rng = make_rng(42);
    int tested = 0;
    while (tested < 20) {
        int k = 5 + int(rng.below(3));
        F2Matrix m(2, k);
        m.row_bits[0] = rng.bits(k);
        m.row_bits[1] = rng.bits(k);
        RrefResult r = rref(m);
        if (r.rank != 2) continue;
        bool heavy = true;
        std::uint32_t cur = 0;
        for (std::uint32_t t = 1; t < 4; ++t) {
            cur ^= r.matrix.row_bits[ctz32(t)];
            if (popcount32(cur) < 3) heavy = false;
        }
        if (!heavy) continue;
        ++tested;
        CHECK(complexity(m) <= 2);
    }
}

TEST_CASE("induces_at agrees with the definition evaluated longhand") {
    InducedSystem sys = make_system(matrix_from_rows(3, {0b111}), 0b111);
    BooleanFunction ones = BooleanFunction::constant(4, true);
    F2Vector a(0b0101, 4), b(0b0011, 4);
    CHECK(induces_at(ones, sys, {a, b, a ^ b}));
    CHECK_FALSE(induces_at(ones, sys, {a, b, F2Vector(0b1000, 4)}));

    Rng rng = make_rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        BooleanFunction f = BooleanFunction::random(5, 0.5, rng);
        F2Vector x(rng.bits(5), 5), y(rng.bits(5), 5);
        std::vector<F2Vector> tuple{x, y, x ^ y};
        bool longhand = f.get(x.bits) && f.get(y.bits) && f.get(x.bits ^ y.bits);
        CHECK(induces_at(f, sys, tuple) == longhand);
    }
}

TEST_CASE("count_induced on subspace indicators") {
    InducedSystem sys = make_system(matrix_from_rows(3, {0b111}), 0b111);
    Rng rng = make_rng(44);
    Subspace v = random_subspace(6, 3, rng);
    BooleanFunction f = BooleanFunction::from_predicate(6, [&](std::uint32_t x) {
        return v.contains(F2Vector(x, 6));
    });
    CHECK(count_induced(f, sys) == 64); // 2^(2*3): all pairs inside V

    InducedSystem sys110 = make_system(matrix_from_rows(3, {0b111}), 0b011);
    CHECK(count_induced(f, sys110) == 0); // x,y in V forces x+y in V
}

TEST_CASE("count_induced equals the naive triple loop on random functions") {
    Rng rng = make_rng(45);
    for (int trial = 0; trial < 15; ++trial) {
        BooleanFunction f = BooleanFunction::random(6, 0.5, rng);
        std::uint32_t sigma = rng.bits(3);
        InducedSystem sys{matrix_from_rows(3, {0b111}), sigma, false};
        CHECK(count_induced(f, sys) == naive_triangle_count(f, sigma));
    }
}

TEST_CASE("counts over all sigma patterns partition the kernel") {
    Rng rng = make_rng(46);
    F2Matrix m = matrix_from_rows(4, {0b0111, 0b1100});
    REQUIRE(rref(m).rank == 2);
    BooleanFunction f = BooleanFunction::random(5, 0.5, rng);
    std::uint64_t total = 0;
    for (std::uint32_t sigma = 0; sigma < 16; ++sigma)
        total += count_induced(f, InducedSystem{rref(m).matrix, sigma, false});
    CHECK(total == std::uint64_t(1) << (5 * 2)); // 2^{n(k-m)}
}

TEST_CASE("complement symmetry of counting") {
    Rng rng = make_rng(47);
    BooleanFunction f = BooleanFunction::random(5, 0.4, rng);
    F2Matrix m = matrix_from_rows(4, {0b1011, 0b1101});
    std::uint32_t sigma = 0b0110;
    InducedSystem sys{rref(m).matrix, sigma, false};
    InducedSystem sys_comp{rref(m).matrix, sigma ^ 0b1111, false};
    CHECK(count_induced(f, sys) == count_induced(f.complement(), sys_comp));
}

TEST_CASE("is_free basics") {
    BooleanFunction any = BooleanFunction::constant(3, true);
    CHECK(is_free(any, Family{}).free);

    FreenessResult r = is_free(any, triangle_family());
    CHECK_FALSE(r.free);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->x.size() == 3);
    for (const auto& v : r.witness->x) CHECK(v.is_zero()); // first witness is (0,0,0)
}

TEST_CASE("free-function census at n=4 matches the sum-free oracle") {
    Family fam = triangle_family();
    std::uint64_t via_is_free = 0, via_oracle = 0;
    for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
        BooleanFunction f(4);
        for (int x = 0; x < 16; ++x)
            if ((mask >> x) & 1) f.set(std::uint32_t(x), true);
        if (is_free(f, fam).free) ++via_is_free;

        bool free = !(mask & 1); // support containing 0 induces (0,0,0)
        for (int a = 1; a < 16 && free; ++a)
            for (int b = 1; b < 16 && free; ++b) {
                int c = a ^ b;
                if (c == 0) continue;
                if (((mask >> a) & 1) && ((mask >> b) & 1) && ((mask >> c) & 1)) free = false;
            }
        if (free) ++via_oracle;
    }
    CHECK(via_is_free == via_oracle);
}

TEST_CASE("is_free is invariant under nonsingular composition") {
    Family fam = triangle_family();
    Rng rng = make_rng(48);
    for (std::uint32_t mask = 0; mask < 256; ++mask) {
        BooleanFunction f(3);
        for (int x = 0; x < 8; ++x)
            if ((mask >> x) & 1) f.set(std::uint32_t(x), true);
        bool base = is_free(f, fam).free;
        LinearMap l = random_nonsingular(3, rng);
        CHECK(is_free(compose_linear(f, l), fam).free == base);
    }
}

TEST_CASE("witnesses re-verify") {
    Rng rng = make_rng(49);
    Family fam = triangle_family();
    for (int trial = 0; trial < 20; ++trial) {
        BooleanFunction f = BooleanFunction::random(6, 0.5, rng);
        FreenessResult r = is_free(f, fam);
        if (!r.free)
            CHECK(induces_at(f, fam.realized()[r.witness->system_index], r.witness->x));
    }
}

TEST_CASE("partial induction basics") {
    InducedSystem sys = make_system(matrix_from_rows(3, {0b111}), 0b111);

    PartialPattern all_star(1);
    CHECK(partially_induces(all_star, sys));

    PartialPattern all_zero(1);
    all_zero.set(0, 0);
    all_zero.set(1, 0);
    CHECK_FALSE(partially_induces(all_zero, sys)); // sigma = 1^3 never matches

    PartialPattern mixed(1);
    mixed.set(0, 1);
    mixed.set(1, 0);
    CHECK(partially_induces(mixed, sys)); // x = (0,0,0) works
}

TEST_CASE("partial induction is monotone in stars") {
    Rng rng = make_rng(50);
    InducedSystem sys = make_system(matrix_from_rows(4, {0b1111}), 0b1010);
    for (int trial = 0; trial < 100; ++trial) {
        PartialPattern mu(2);
        for (std::uint32_t u = 0; u < 4; ++u) mu.set(u, std::uint8_t(rng.below(3)));
        bool before = partially_induces(mu, sys);
        PartialPattern relaxed = mu;
        relaxed.set(rng.bits(2), PartialPattern::kStar);
        bool after = partially_induces(relaxed, sys);
        if (before) CHECK(after);
    }
}

TEST_CASE("kernel sampling hits each solution exactly once") {
    // x = Ky over all y must enumerate the solution set of Mx = 0 without
    // repetition; brute force over (F_2^n)^k is the oracle
    F2Matrix m = matrix_from_rows(4, {0b0111, 0b1001});
    REQUIRE(rref(m).rank == 2);
    F2Matrix mm = rref(m).matrix;
    int n = 2, k = 4;
    std::vector<F2Vector> kcols = kernel_columns(mm);
    REQUIRE(kcols.size() == 2);

    std::set<std::vector<std::uint32_t>> via_kernel;
    for (std::uint32_t y0 = 0; y0 < 4; ++y0)
        for (std::uint32_t y1 = 0; y1 < 4; ++y1) {
            std::vector<std::uint32_t> x(k, 0);
            for (int i = 0; i < k; ++i) {
                if (kcols[0].get(i)) x[i] ^= y0;
                if (kcols[1].get(i)) x[i] ^= y1;
            }
            via_kernel.insert(x);
        }
    CHECK(via_kernel.size() == 16); // 2^{n(k-m)}: distinct images

    std::set<std::vector<std::uint32_t>> brute;
    for (std::uint32_t t = 0; t < (1u << (n * k)); ++t) {
        std::vector<std::uint32_t> x(k);
        for (int i = 0; i < k; ++i) x[i] = (t >> (n * i)) & 3u;
        bool sol = true;
        for (int r = 0; r < mm.rows; ++r) {
            std::uint32_t acc = 0;
            std::uint32_t row = mm.row_bits[r];
            while (row) { acc ^= x[ctz32(row)]; row &= row - 1; }
            if (acc) sol = false;
        }
        if (sol) brute.insert(x);
    }
    CHECK(via_kernel == brute);
}

TEST_CASE("psi values") {
    CHECK(psi(Family{}, 1).family_realized_empty);

    PsiResult single = psi(triangle_family(), 1);
    CHECK_FALSE(single.family_realized_empty);
    CHECK(single.value == 3);

    // two systems, k = 3 and k = 4: hand enumeration over the 9 patterns of
    // F_2^1 -> {0,1,*}
    Family two = triangle_family();
    two.explicit_systems.push_back(make_system(matrix_from_rows(4, {0b1111}), 0b0000));
    PsiResult got = psi(two, 1);
    int expected = -1;
    for (int v0 = 0; v0 < 3; ++v0)
        for (int v1 = 0; v1 < 3; ++v1) {
            PartialPattern mu(1);
            mu.set(0, std::uint8_t(v0));
            mu.set(1, std::uint8_t(v1));
            int mink = -1;
            for (const auto& sys : two.realized())
                if (partially_induces(mu, sys))
                    mink = mink < 0 ? sys.k() : std::min(mink, sys.k());
            if (mink > expected) expected = mink;
        }
    CHECK(got.value == expected);
}
