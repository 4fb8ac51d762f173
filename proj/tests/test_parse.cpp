#include <doctest.h>

#include <random>

#include "symtower/parse.hpp"

using namespace symtower;

TEST_CASE("element parsing") {
    auto tower = build_tower(7, 2, {"t1"});
    auto cls = parse_element("c^3*t1", tower);
    CHECK(cls.base_exp() == 1);  // 3 mod 2
    CHECK(cls.unif_exp(0) == 1);

    CHECK(parse_element("1", tower).is_one());
    CHECK(parse_element("-1", tower) == minus_one_class(tower));
    CHECK(parse_element("t1^-1", tower) == ElementClass::generator(tower, 1).inv());
    CHECK(parse_element("  c ^ 2 * t1 ^ 4  ", tower).is_one());  // whitespace-insensitive
    CHECK(parse_element("c^123456789012", tower).base_exp() == 0);
    // exponents of any size fold mod m during the scan
    CHECK(parse_element("c^123456789012345678901234567890123456789", tower).base_exp() == 1);
    CHECK(parse_element("t1^-123456789012345678901234567890123456789", tower).unif_exp(0) == 1);

    CHECK_THROWS_AS(parse_element("x^2", tower), CalcError);  // UnknownGenerator
    CHECK_THROWS_AS(parse_element("c^", tower), CalcError);
    CHECK_THROWS_AS(parse_element("c c", tower), CalcError);
    CHECK_THROWS_AS(parse_element("2", tower), CalcError);
}

TEST_CASE("symbol expression parsing") {
    auto tower = build_tower(7, 6, {"t1", "t2"});
    auto sum = parse_symbol_expr("2*(c*t1, t2) - (t1, t1)", tower);
    CHECK(sum.degree() == 2);
    REQUIRE(sum.terms().size() == 2);
    CHECK(sum.terms()[0].first == 2);
    CHECK(sum.terms()[1].first == -1);
    CHECK(sum.terms()[0].second[0] == element_class(tower, 1, {1, 0}));
    CHECK(sum.terms()[0].second[1] == ElementClass::generator(tower, 2));

    auto zero = parse_symbol_expr("0", tower);
    CHECK(zero.empty());

    CHECK_THROWS_AS(parse_symbol_expr("(c,t1) + (t1)", tower), CalcError);  // mixed arity
}

TEST_CASE("parse errors carry positions") {
    auto tower = build_tower(7, 2, {"t1"});
    try {
        parse_symbol_expr("(c,", tower);
        FAIL("expected a parse error");
    } catch (const CalcError& err) {
        CHECK(err.kind() == ErrorKind::ParseError);
        REQUIRE(err.position().has_value());
        CHECK(*err.position() == 4);
    }
}

TEST_CASE("malformed inputs raise parse errors, never crash") {
    auto tower = build_tower(7, 6, {"t1", "t2"});
    for (const char* bad : {"", "(", ")", "((", "(c,t1", "c^", "c^^2", "c**t1", "1,2", "(c,t1)+",
                            "5*", "(c,)", "(,c)", "- (c)", "-(c,t1)", "2(c,t1)", "(c,t1) & (t1,t2)",
                            "c^99999999999999999999999999", "(c t1)", "^2", "*"}) {
        CHECK_THROWS_AS(parse_symbol_expr(bad, tower), CalcError);
    }
    for (const char* bad : {"", "c^", "2", "-2", "c*", "*c", "t3", "C"}) {
        CHECK_THROWS_AS(parse_element(bad, tower), CalcError);
    }
}

TEST_CASE("serialization round trip") {
    std::mt19937_64 rng(71);
    for (const auto& tower : {build_tower(7, 6, {"t1", "t2"}), build_tower(13, 4, {"t"})}) {
        std::uniform_int_distribution<std::int64_t> dist(0, tower->m - 1);
        std::uniform_int_distribution<std::int64_t> coeff(-6, 6);
        for (int trial = 0; trial < 60; ++trial) {
            // element round trip
            std::vector<std::int64_t> exps(static_cast<std::size_t>(tower->depth()));
            for (auto& e : exps) e = dist(rng);
            auto cls = element_class(tower, dist(rng), exps);
            CHECK(parse_element(serialize(cls), tower) == cls);

            // symbol sum round trip: identical term lists
            SymbolSum sum(tower, 2);
            for (int t = 0; t < 3; ++t) {
                std::vector<ElementClass> entries;
                for (int j = 0; j < 2; ++j) {
                    std::vector<std::int64_t> e2(static_cast<std::size_t>(tower->depth()));
                    for (auto& e : e2) e = dist(rng);
                    entries.push_back(element_class(tower, dist(rng), e2));
                }
                std::int64_t c = coeff(rng);
                sum.add_term(c == 0 ? 1 : c, std::move(entries));
            }
            auto reparsed = parse_symbol_expr(serialize(sum), tower);
            REQUIRE(reparsed.terms().size() == sum.terms().size());
            for (std::size_t i = 0; i < sum.terms().size(); ++i) {
                CHECK(reparsed.terms()[i].first == sum.terms()[i].first);
                CHECK(reparsed.terms()[i].second == sum.terms()[i].second);
            }
        }
    }
    // the empty sum
    auto tower = build_tower(7, 2, {"t"});
    CHECK(serialize(SymbolSum(tower, 0)) == "0");
    CHECK(parse_symbol_expr("0", tower).empty());
}
