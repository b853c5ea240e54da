#include <doctest.h>

#include <random>

#include "ffdecomp/mvar.hpp"
#include "ffdecomp/text.hpp"

using namespace ffd;

TEST_CASE("field descriptors")
{
    CHECK(parse_field("7")->order() == 7);
    CHECK(parse_field("2^11")->order() == 2048);
    CHECK(parse_field("2^3/1,1,0,1")->order() == 8);
    CHECK(parse_field("7")->descriptor() == "7^1");
    CHECK_THROWS_AS(parse_field("6"), InvalidArgument);
    CHECK_THROWS_AS(parse_field("2^3/1,1"), InvalidArgument);
    CHECK_THROWS_AS(parse_field("x"), InvalidArgument);
    CHECK_THROWS_AS(parse_field("2^40"), LimitExceeded);
}

TEST_CASE("elements and points")
{
    auto F9 = build_field(3, 2);
    CHECK(parse_elem(*F9, "[1,2]") == Elem{7});
    CHECK(parse_elem(*F9, "2") == Elem{2});
    CHECK(parse_elem(*F9, "-1") == Elem{2});
    CHECK(format_elem(*F9, Elem{7}) == "[1,2]");
    CHECK(format_elem(*build_field(7, 1), Elem{3}) == "3");
    CHECK(parse_point(*F9, "inf").is_infinity());
    CHECK(format_point(*F9, PointOrInf::infinity()) == "inf");
    CHECK_THROWS_AS(parse_elem(*F9, "[1,2,0]"), InvalidArgument);
    for (Elem a : F9->elements())
        CHECK(parse_elem(*F9, format_elem(*F9, a)) == a);
}

TEST_CASE("univariate round trips")
{
    auto F7 = build_field(7, 1);
    CHECK(format_poly(parse_poly(F7, "(X+1)^2")) == "X^2+2*X+1");
    CHECK(format_ratfun(parse_ratfun(F7, "(X^2+1)/X")) == "(X^2+1) / X");
    CHECK(format_ratfun(parse_ratfun(F7, "X^-1")) == "1 / X");
    CHECK_THROWS_AS(parse_poly(F7, "1/X"), InvalidArgument);
    CHECK_THROWS_AS(parse_ratfun(F7, "X/0"), InvalidArgument);
    CHECK_THROWS_AS(parse_ratfun(F7, "X^+"), InvalidArgument);
    CHECK_THROWS_AS(parse_ratfun(F7, "X^2000000"), LimitExceeded);

    std::mt19937 rng(2);
    auto F8 = build_field(2, 3);
    for (int t = 0; t < 100; ++t) {
        std::vector<Elem> a(1 + rng() % 5), b(1 + rng() % 4);
        for (auto& e : a)
            e = Elem{static_cast<std::uint32_t>(rng() % 8)};
        for (auto& e : b)
            e = Elem{static_cast<std::uint32_t>(rng() % 8)};
        b.back() = F8->one();
        const RatFun f = rat_make(Poly(F8, a), Poly(F8, b));
        CHECK(parse_ratfun(F8, format_ratfun(f)) == f);
    }
}

TEST_CASE("multivariate round trips")
{
    auto F5 = build_field(5, 1);
    const MPoly p = parse_mpoly(F5, "X^2*Y+3*Y-1", 2);
    CHECK(format_terms(p) == "1:(2,1); 3:(0,1); 4:(0,0)");
    CHECK(parse_mpoly(F5, format_terms(p), 2) == p);
    CHECK(parse_mpoly(F5, format_mpoly(p, default_names(2)), 2) == p);
    CHECK(default_names(3) == std::vector<std::string>{"X1", "X2", "X3"});
    CHECK(parse_mpoly(F5, "X1+X3", 3) == parse_mpoly(F5, "X+Z", 3));
    CHECK_THROWS_AS(parse_mpoly(F5, "X3", 2), InvalidArgument);

    const MRatFun f = parse_mratfun(F5, "(X1^2+X2)/(X1*X2+1)", 2);
    CHECK(parse_mratfun(F5, format_mratfun(f), 2) == f);
    CHECK(format_terms(MPoly(F5, 2)) == "0");
}
