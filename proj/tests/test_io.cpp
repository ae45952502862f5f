#include <doctest.h>

#include <set>

#include "lipt/io.hpp"

using namespace lipt;

TEST_CASE("anf evaluation on spot points") {
    BooleanFunction f = parse_anf("x1*x2 + x3", 3);
    CHECK(f.get(0b011));  // (1,1,0)
    CHECK(f.get(0b100));  // (0,0,1)
    CHECK_FALSE(f.get(0b111)); // both terms cancel
    CHECK_FALSE(f.get(0));

    CHECK(parse_anf("1", 2) == BooleanFunction::constant(2, true));
    CHECK(parse_anf("0", 2) == BooleanFunction::constant(2, false));
    CHECK(parse_anf("1 + 1", 2) == BooleanFunction::constant(2, false));
    CHECK(parse_anf("  x1 *x2+ 1 ", 2) ==
          BooleanFunction::from_predicate(2, [](std::uint32_t x) {
              return !((x & 1) && (x & 2));
          }));
}

TEST_CASE("anf syntax errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_anf("x1 + + x2", 3),
                         doctest::Contains("position 5"), input_error);
    CHECK_THROWS_AS(parse_anf("x9", 3), input_error);
    CHECK_THROWS_AS(parse_anf("x0", 3), input_error);
    CHECK_THROWS_AS(parse_anf("", 3), input_error);
    CHECK_THROWS_AS(parse_anf("x1 *", 3), input_error);
    CHECK_THROWS_AS(parse_anf("y1", 3), input_error);
}

TEST_CASE("anf round-trips through the Moebius transform") {
    Rng rng = make_rng(121);
    for (int trial = 0; trial < 100; ++trial) {
        int n = 2 + int(rng.below(5));
        // random monomial set
        std::set<std::uint32_t> monomials;
        int terms = 1 + int(rng.below(6));
        for (int t = 0; t < terms; ++t) monomials.insert(rng.bits(n));
        std::string text;
        for (std::uint32_t m : monomials) {
            if (!text.empty()) text += " + ";
            if (m == 0) {
                text += "1";
                continue;
            }
            bool first = true;
            for (int i = 0; i < n; ++i)
                if ((m >> i) & 1u) {
                    if (!first) text += "*";
                    text += "x" + std::to_string(i + 1);
                    first = false;
                }
        }
        BooleanFunction f = parse_anf(text, n);
        auto coeffs = anf_coefficients(f);
        std::set<std::uint32_t> recovered;
        for (std::uint32_t m = 0; m < f.size(); ++m)
            if ((coeffs[m >> 6] >> (m & 63)) & 1u) recovered.insert(m);
        REQUIRE(recovered == monomials);
        // and printing parses back to the same function
        CHECK(parse_anf(anf_to_string(f), n) == f);
    }
}

TEST_CASE("truth table text round-trips") {
    Rng rng = make_rng(122);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 1 + int(rng.below(9));
        BooleanFunction f = BooleanFunction::random(n, 0.5, rng);
        std::string text = write_table(f);
        BooleanFunction g = parse_table(text);
        REQUIRE(f == g);
        CHECK(write_table(g) == text);
    }

    BooleanFunction f(2);
    f.set(0, true);
    f.set(3, true);
    CHECK(write_table(f) == "n=2\n9\n"); // bits 0 and 3: 0b1001 = 9
    CHECK(parse_table("n=2\n9\n") == f);

    CHECK_THROWS_AS(parse_table("m=2\n9\n"), input_error);
    CHECK_THROWS_AS(parse_table("n=2\n999\n"), input_error);
    CHECK_THROWS_AS(parse_table("n=2\nzz\n"), input_error);
}

TEST_CASE("function sources") {
    CHECK(parse_function_source("const1", 3) == BooleanFunction::constant(3, true));
    CHECK(parse_function_source("const0", 3) == BooleanFunction::constant(3, false));
    CHECK(parse_function_source("bent", 4) == BooleanFunction::inner_product_bent(4));
    CHECK(parse_function_source("hyperplane:101", 3) ==
          BooleanFunction::hyperplane(F2Vector(0b101, 3)));
    CHECK(parse_function_source("anf:x1+x2", 2) == parse_anf("x1+x2", 2));

    BooleanFunction r1 = parse_function_source("random:7:0.5", 8);
    BooleanFunction r2 = parse_function_source("random:7:0.5", 8);
    CHECK(r1 == r2); // seeded determinism
    CHECK(parse_function_source("random:8:0.5", 8) != r1);

    CHECK_THROWS_AS(parse_function_source("wat", 3), input_error);
    CHECK_THROWS_AS(parse_function_source("hyperplane:11", 3), input_error);
}

TEST_CASE("system json parsing") {
    ValidationResult v = parse_system_json(R"({"rows":["111"],"sigma":"111"})");
    CHECK(v.status == ValidationStatus::clean);
    CHECK(v.system->k() == 3);

    CHECK_THROWS_AS(parse_system_json(R"({"rows":["111"],"sigma":"11"})"), input_error);
    CHECK_THROWS_AS(parse_system_json(R"({"rows":["111","10"],"sigma":"111"})"),
                    input_error);
    CHECK_THROWS_AS(parse_system_json(R"({"rows":[],"sigma":""})"), input_error);
}

TEST_CASE("family parsing") {
    Family one = parse_family(R"({"rows":["111"],"sigma":"111"})");
    CHECK(one.realized().size() == 1);

    Family rm = parse_family("rm:1");
    CHECK(rm.realized().size() == 8);

    Family combo = parse_family(
        R"({"systems":[{"rows":["111"],"sigma":"110"}],)"
        R"("generators":[{"name":"rm","d":1,"max_k":8}]})");
    CHECK(combo.realized().size() == 9);

    Family capped = parse_family(
        R"({"systems":[],"generators":[{"name":"rm","d":1,"max_k":3}]})");
    CHECK(capped.realized().empty());
}

TEST_CASE("rationals parse from the accepted spellings") {
    CHECK(Q::parse("1/4") == Q(1, 4));
    CHECK(Q::parse("0.25") == Q(1, 4));
    CHECK(Q::parse("2") == Q(2));
    CHECK(Q::parse("-3/6") == Q(-1, 2));
    CHECK_THROWS(Q::parse(""));
}
