#include <doctest.h>

#include <random>

#include "diagcert/rings.hpp"

using namespace diagcert;

namespace {

Ring zx() { return Ring::polynomial(CoeffDomain::Integers, {"x"}); }
Ring zxy() { return Ring::polynomial(CoeffDomain::Integers, {"x", "y"}); }
Ring qxy() { return Ring::polynomial(CoeffDomain::Rationals, {"x", "y"}); }
Ring f3x() { return Ring::polynomial(CoeffDomain::PrimeField, {"x"}, MonomialOrder::GRevLex, 3); }

Poly P(const Ring& r, const char* s) { return Poly::parse(r, s); }

// Naive dense random polynomial for property tests.
Poly random_poly(const Ring& r, std::mt19937_64& rng, unsigned deg, int height)
{
    std::uniform_int_distribution<int> c(-height, height);
    Poly p(r);
    for (unsigned i = 0; i <= deg; ++i)
        for (unsigned j = 0; i + j <= deg; ++j) {
            Exponents e(r.nvars(), 0);
            e[0] = i;
            if (r.nvars() > 1)
                e[1] = j;
            else if (j > 0)
                continue;
            p += Poly::monomial(r, e, Coeff(c(rng)));
        }
    return p;
}

} // namespace

TEST_CASE("ring construction and validation")
{
    CHECK(Ring::integers().is_euclidean());
    CHECK(Ring::polynomial(CoeffDomain::Rationals, {"x"}).is_euclidean());
    CHECK_FALSE(zx().is_euclidean());
    CHECK_THROWS_AS(Ring::polynomial(CoeffDomain::Integers, {"x", "x"}), UsageError);
    CHECK_THROWS_AS(Ring::polynomial(CoeffDomain::PrimeField, {"x"}, MonomialOrder::Lex, 4), UsageError);
    CHECK_THROWS_AS(Ring::polynomial(CoeffDomain::Integers, {"X"}), UsageError);
    CHECK(zxy() == zxy());
    CHECK(zxy() != qxy());
}

TEST_CASE("arithmetic and printing")
{
    Ring r = zx();
    CHECK(P(r, "(x+1)*(x-1)") == P(r, "x^2-1"));
    CHECK(P(r, "(2*x+3)*(3*x+2)") == P(r, "6*x^2+13*x+6"));
    CHECK(P(r, "(2*x+3)*(3*x+2)").to_string() == "6*x^2 + 13*x + 6");
    CHECK(P(zxy(), "x^2*y - 3").to_string() == "x^2*y - 3");
    CHECK(P(qxy(), "1/2*x").to_string() == "1/2*x");
    CHECK(P(f3x(), "4*x + 5").to_string() == "x + 2");
    CHECK(P(r, "0").to_string() == "0");
}

TEST_CASE("parser rejects malformed input with a position")
{
    CHECK_THROWS_AS(P(zx(), "x + y"), ParseError);
    CHECK_THROWS_AS(P(zx(), "1/2*x"), ParseError);
    CHECK_THROWS_AS(P(zx(), "x +"), ParseError);
    CHECK_THROWS_AS(P(zx(), "(x"), ParseError);
    CHECK_THROWS_AS(P(zx(), "x/x"), ParseError);
    try {
        P(zx(), "x + z");
        FAIL("expected parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("exact division")
{
    Ring r = zxy();
    CHECK(*exact_divide(P(r, "x^2-y^2"), P(r, "x-y")) == P(r, "x+y"));
    CHECK_FALSE(exact_divide(P(r, "x^2+1"), P(r, "x+1")));
    CHECK_FALSE(exact_divide(P(zx(), "x"), P(zx(), "2")));
    CHECK(*exact_divide(P(qxy(), "x"), P(qxy(), "2")) == P(qxy(), "1/2*x"));
    CHECK_THROWS_AS(exact_divide(P(r, "x"), P(r, "0")), DivisionByZero);
}

TEST_CASE("gcd")
{
    CHECK(gcd(P(Ring::integers(), "4"), P(Ring::integers(), "6")) == P(Ring::integers(), "2"));
    CHECK(gcd(P(zx(), "2*x+2"), P(zx(), "4*x+4")) == P(zx(), "2*x+2"));
    CHECK(gcd(P(zxy(), "x^2*y"), P(zxy(), "x*y^2")) == P(zxy(), "x*y"));
    CHECK(gcd(P(qxy(), "2*x^2-2"), P(qxy(), "3*x+3")) == P(qxy(), "x+1"));
    CHECK(gcd(P(f3x(), "x^2+2"), P(f3x(), "x^2+x+1")) == P(f3x(), "x+2"));
    CHECK(is_unit(gcd(P(zxy(), "x+y"), P(zxy(), "x-y"))));
    CHECK_THROWS_AS(gcd(P(zx(), "0"), P(zx(), "0")), UsageError);
}

TEST_CASE("gcd properties on random products")
{
    std::mt19937_64 rng(7);
    Ring r = zxy();
    for (int trial = 0; trial < 40; ++trial) {
        Poly a = random_poly(r, rng, 2, 3), b = random_poly(r, rng, 2, 3), c = random_poly(r, rng, 1, 3);
        if (a.is_zero() || b.is_zero() || c.is_zero())
            continue;
        Poly g = gcd(a * c, b * c);
        CHECK(divides(g, a * c));
        CHECK(divides(g, b * c));
        CHECK(divides(c, g));
        CHECK(g == canonical(g));
    }
}

TEST_CASE("canonical associates")
{
    Associate a = canonical_associate(P(zx(), "-3*x"));
    CHECK(a.unit == -1);
    CHECK(a.canonical == P(zx(), "3*x"));
    Associate b = canonical_associate(P(qxy(), "-3*x"));
    CHECK(b.unit == -3);
    CHECK(b.canonical == P(qxy(), "x"));
    CHECK(are_associates(P(zx(), "x-1"), P(zx(), "1-x")));
    CHECK_FALSE(are_associates(P(zx(), "2*x"), P(zx(), "x")));
}

TEST_CASE("euclidean division")
{
    Ring z = Ring::integers();
    auto [q, r] = euclidean_divide(P(z, "-7"), P(z, "3"));
    CHECK(q == P(z, "-3"));
    CHECK(r == P(z, "2"));
    Ring qx = Ring::polynomial(CoeffDomain::Rationals, {"x"});
    auto [q2, r2] = euclidean_divide(P(qx, "x^3+1"), P(qx, "2*x+2"));
    CHECK(q2 * P(qx, "2*x+2") + r2 == P(qx, "x^3+1"));
    CHECK(r2.is_zero());
    CHECK_THROWS_AS(euclidean_divide(P(zx(), "x"), P(zx(), "2")), NotEuclidean);
}

TEST_CASE("factorization")
{
    Ring z = Ring::integers();
    auto f6 = factor(P(z, "-6"));
    CHECK(f6.unit == -1);
    REQUIRE(f6.factors.size() == 2);
    CHECK(f6.factors[0].first == P(z, "2"));
    CHECK(f6.factors[1].first == P(z, "3"));

    auto fx2 = factor(P(zx(), "x^2"));
    REQUIRE(fx2.factors.size() == 1);
    CHECK(fx2.factors[0].second == 2);

    auto fd = factor(P(zx(), "x^2-1"));
    CHECK(fd.complete);
    CHECK(fd.factors.size() == 2);
    CHECK(fd.product() == P(zx(), "x^2-1"));

    auto f4 = factor(P(zx(), "x^4+4"));
    CHECK(f4.factors.size() == 2);
    CHECK(f4.product() == P(zx(), "x^4+4"));

    auto irr = factor(P(zx(), "x^4+1"));
    CHECK(irr.complete);
    CHECK(irr.factors.size() == 1);

    auto fp = factor(P(f3x(), "x^4+1"));
    CHECK(fp.factors.size() == 2);
    CHECK(fp.product() == P(f3x(), "x^4+1"));

    auto mv = factor(P(zxy(), "6*x^2*y - 6*y^3"));
    CHECK(mv.complete);
    CHECK(mv.product() == P(zxy(), "6*x^2*y - 6*y^3"));
    CHECK(mv.factors.size() == 5); // 2, 3, y, x - y, x + y
}

TEST_CASE("factorization round-trips on random products")
{
    std::mt19937_64 rng(11);
    Ring r = qxy();
    for (int trial = 0; trial < 25; ++trial) {
        Poly a = random_poly(r, rng, 1, 2), b = random_poly(r, rng, 2, 2);
        if (a.is_zero() || b.is_zero())
            continue;
        Poly p = a * b;
        auto f = factor(p);
        CHECK(f.product() == p);
        if (!a.is_constant() && !b.is_constant() && f.complete) {
            unsigned count = 0;
            for (auto& [q, m] : f.factors)
                count += m;
            CHECK(count >= 2);
        }
    }
}
