#include <doctest.h>

#include <random>

#include "ffdecomp/field.hpp"
#include "ffdecomp/limits.hpp"

using namespace ffd;

namespace {

using IntPoly = std::vector<int>;  // constant term first, over F_p

void trim(IntPoly& a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

// remainder of a mod monic b over F_p
IntPoly rem(IntPoly a, const IntPoly& b, int p)
{
    trim(a);
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int c = a.back();
        for (int i = 0; i <= db; ++i)
            a[shift + i] = ((a[shift + i] - c * b[i]) % p + p) % p;
        trim(a);
    }
    return a;
}

// trial division by every monic polynomial of degree 1..deg/2
bool brute_irreducible(const IntPoly& f, int p)
{
    const int n = static_cast<int>(f.size()) - 1;
    for (int d = 1; d <= n / 2; ++d) {
        long count = 1;
        for (int i = 0; i < d; ++i)
            count *= p;
        for (long code = 0; code < count; ++code) {
            IntPoly g(d + 1);
            long c = code;
            for (int i = 0; i < d; ++i) {
                g[i] = static_cast<int>(c % p);
                c /= p;
            }
            g[d] = 1;
            if (rem(f, g, p).empty())
                return false;
        }
    }
    return true;
}

// schoolbook product in F_p[X]/(m) on coordinate vectors
std::vector<std::uint32_t> naive_mul(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                     const std::vector<std::uint32_t>& m, int p)
{
    IntPoly prod(a.size() + b.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = (prod[i + j] + static_cast<int>(a[i] * b[j])) % p;
    IntPoly mod(m.begin(), m.end());
    IntPoly r = rem(prod, mod, p);
    std::vector<std::uint32_t> out(a.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        out[i] = static_cast<std::uint32_t>(r[i]);
    return out;
}

const std::vector<std::pair<std::uint64_t, int>> kSmallFields{{2, 1}, {3, 1}, {5, 1}, {7, 1}, {11, 1}, {13, 1},
                                                               {2, 2}, {2, 3}, {2, 4}, {3, 2}};

} // namespace

TEST_CASE("primality")
{
    CHECK(is_prime(2));
    CHECK(is_prime(7));
    CHECK(is_prime(2147483647));
    CHECK(is_prime(18446744073709551557ULL));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(561));
    CHECK_FALSE(is_prime(3215031751ULL));
    for (std::uint64_t n = 0; n < 2000; ++n) {
        bool brute = n >= 2;
        for (std::uint64_t d = 2; d * d <= n && brute; ++d)
            brute = n % d != 0;
        CHECK(is_prime(n) == brute);
    }
}

TEST_CASE("build_field examples")
{
    auto f7 = build_field(7, 1);
    CHECK(f7->order() == 7);
    CHECK(f7->modulus() == std::vector<std::uint32_t>{0, 1});
    CHECK(f7->mul(Elem{3}, Elem{5}) == Elem{1});

    auto f4 = build_field(2, 2);
    CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
    const Elem x = f4->gen();
    CHECK(f4->mul(x, x) == f4->add(x, f4->one()));

    CHECK_THROWS_AS(build_field(6, 1), InvalidArgument);
    CHECK_THROWS_AS(build_field(2, 0), InvalidArgument);
    CHECK_THROWS_AS(build_field(2, 40), LimitExceeded);
}

TEST_CASE("default modulus is the lex-smallest irreducible")
{
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {3, 3}, {5, 2}, {2, 11}}) {
        auto F = build_field(p, k);
        const auto& m = F->modulus();
        REQUIRE(m.size() == static_cast<std::size_t>(k + 1));
        CHECK(m.back() == 1);
        IntPoly mi(m.begin(), m.end());
        CHECK(brute_irreducible(mi, p));
        // every monic candidate before it in constant-first lex order is reducible
        IntPoly cand(k + 1, 0);
        cand[k] = 1;
        while (true) {
            if (cand == mi)
                break;
            CHECK_FALSE(brute_irreducible(cand, p));
            // increment with c0 as the most significant digit
            int i = k - 1;
            while (i >= 0 && ++cand[i] == p)
                cand[i--] = 0;
            REQUIRE(i >= 0);
        }
    }
}

TEST_CASE("2^11 modulus and arithmetic agree with a schoolbook oracle")
{
    auto F = build_field(2, 11);
    CHECK(F->order() == 2048);
    CHECK(F->descriptor() == "2^11");
    std::mt19937 rng(7);
    std::uniform_int_distribution<std::uint32_t> any(0, 2047);
    for (int i = 0; i < 2000; ++i) {
        const Elem a{any(rng)}, b{any(rng)};
        CHECK(F->coords(F->mul(a, b)) == naive_mul(F->coords(a), F->coords(b), F->modulus(), 2));
    }
}

TEST_CASE("multiplication matches the oracle exhaustively for small fields")
{
    for (auto [p, k] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {2, 4}, {3, 2}, {5, 2}, {2, 6}, {3, 3}}) {
        auto F = build_field(p, k);
        for (Elem a : F->elements())
            for (Elem b : F->elements())
                CHECK(F->coords(F->mul(a, b)) == naive_mul(F->coords(a), F->coords(b), F->modulus(), p));
    }
}

TEST_CASE("field axioms exhaustively for q <= 16")
{
    for (auto [p, k] : kSmallFields) {
        auto F = build_field(p, k);
        const auto el = F->elements();
        CHECK(el.size() == F->order());
        for (Elem a : el) {
            CHECK(F->add(a, F->neg(a)) == F->zero());
            if (a.v != 0) {
                CHECK(F->mul(a, F->inv(a)) == F->one());
                CHECK(F->pow(a, static_cast<std::int64_t>(F->order() - 1)) == F->one());
                CHECK(F->pow(a, -1) == F->inv(a));
            }
            CHECK(F->pow(a, static_cast<std::int64_t>(F->order())) == a);
            Elem fr = a;
            for (int i = 0; i < k; ++i)
                fr = F->frobenius(fr);
            CHECK(fr == a);
            CHECK(F->frobenius(F->pth_root(a)) == a);
            for (Elem b : el) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
                CHECK(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
                CHECK(F->frobenius(F->mul(a, b)) == F->mul(F->frobenius(a), F->frobenius(b)));
                for (Elem c : el) {
                    CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                    CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
                    CHECK(F->add(F->add(a, b), c) == F->add(a, F->add(b, c)));
                }
            }
        }
    }
}

TEST_CASE("division by zero and cross-field arithmetic")
{
    auto F = build_field(5, 1);
    CHECK_THROWS_AS(F->inv(F->zero()), DomainError);
    CHECK_THROWS_AS(F->div(F->one(), F->zero()), DomainError);
    auto G = build_field(7, 1);
    FieldElement a(F, Elem{2}), b(G, Elem{2});
    CHECK_THROWS_AS(a + b, DomainError);
    CHECK((a * a).raw() == Elem{4});
    CHECK((a / a).raw() == Elem{1});
    CHECK_THROWS_AS(a / FieldElement(F, Elem{0}), DomainError);
}

TEST_CASE("enumeration order")
{
    auto F4 = build_field(2, 2);
    const auto el = F4->elements();
    REQUIRE(el.size() == 4);
    CHECK(F4->coords(el[0]) == std::vector<std::uint32_t>{0, 0});
    CHECK(F4->coords(el[1]) == std::vector<std::uint32_t>{1, 0});
    CHECK(F4->coords(el[2]) == std::vector<std::uint32_t>{0, 1});
    CHECK(F4->coords(el[3]) == std::vector<std::uint32_t>{1, 1});
    CHECK(el[2] == F4->gen());
    CHECK(build_field(3, 2)->elements().size() == 9);
    for (std::uint64_t i = 0; i < 9; ++i) {
        auto F9 = build_field(3, 2);
        CHECK(F9->from_coords(F9->coords(F9->element(i))) == F9->element(i));
    }
}

TEST_CASE("explicit modulus")
{
    auto F = build_field(2, std::vector<std::uint32_t>{1, 1, 0, 1});
    CHECK(F->order() == 8);
    CHECK(build_field(2, std::vector<std::uint32_t>{1, 0, 1, 1})->has_default_modulus());
    CHECK_FALSE(F->has_default_modulus());
    CHECK(F->descriptor() == "2^3/1,1,0,1");
    CHECK_THROWS_AS(build_field(2, std::vector<std::uint32_t>{1, 0, 1}), InvalidArgument);
    CHECK_THROWS_AS(build_field(2, std::vector<std::uint32_t>{1, 1, 0}), InvalidArgument);
    for (Elem a : F->elements())
        for (Elem b : F->elements())
            CHECK(F->coords(F->mul(a, b)) == naive_mul(F->coords(a), F->coords(b), F->modulus(), 2));
}

TEST_CASE("field extensions embed homomorphically")
{
    for (auto [p, k, r] : std::vector<std::tuple<int, int, int>>{{3, 1, 2}, {2, 1, 3}, {2, 2, 2}, {5, 1, 2}, {2, 2, 3}}) {
        auto base = build_field(p, k);
        const FieldExtension ext = extend_field(base, r);
        const Field& E = *ext.ext();
        std::uint64_t q = base->order(), qr = 1;
        for (int i = 0; i < r; ++i)
            qr *= q;
        CHECK(E.order() == qr);
        CHECK(ext.degree() == r);
        CHECK(ext.embed(base->one()) == E.one());
        for (Elem a : base->elements()) {
            CHECK(ext.restrict(ext.embed(a)) == a);
            // embedded elements are fixed by x -> x^q
            CHECK(E.pow_u(ext.embed(a), q) == ext.embed(a));
            for (Elem b : base->elements()) {
                CHECK(ext.embed(base->add(a, b)) == E.add(ext.embed(a), ext.embed(b)));
                CHECK(ext.embed(base->mul(a, b)) == E.mul(ext.embed(a), ext.embed(b)));
            }
        }
        std::size_t fixed = 0;
        for (Elem e : E.elements())
            fixed += ext.restrict(e).has_value();
        CHECK(fixed == q);
    }
    auto f3 = build_field(3, 1);
    const auto e9 = extend_field(f3, 2);
    CHECK(e9.ext()->add(e9.embed(Elem{2}), e9.embed(Elem{1})) == e9.embed(Elem{0}));
}

TEST_CASE("deterministic construction")
{
    CHECK(build_field(3, 5)->modulus() == build_field(3, 5)->modulus());
    CHECK(build_field(2, 11)->same_as(*build_field(2, 11)));
}

TEST_CASE("randomized axioms on a large field")
{
    auto F = build_field(3, 7);
    std::mt19937 rng(3);
    std::uniform_int_distribution<std::uint32_t> any(0, static_cast<std::uint32_t>(F->order() - 1));
    for (int i = 0; i < 3000; ++i) {
        const Elem a{any(rng)}, b{any(rng)}, c{any(rng)};
        CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
        CHECK(F->mul(F->mul(a, b), c) == F->mul(a, F->mul(b, c)));
        if (a.v)
            CHECK(F->mul(a, F->inv(a)) == F->one());
        CHECK(F->coords(F->mul(a, b)) == naive_mul(F->coords(a), F->coords(b), F->modulus(), 3));
    }
}
