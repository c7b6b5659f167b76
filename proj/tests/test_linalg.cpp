#include <doctest.h>

#include <random>

#include "diagcert/linalg.hpp"

using namespace diagcert;

namespace {

Ring Z() { return Ring::integers(); }
Ring zx() { return Ring::polynomial(CoeffDomain::Integers, {"x"}); }
Ring qx() { return Ring::polynomial(CoeffDomain::Rationals, {"x"}); }
Ring qxy() { return Ring::polynomial(CoeffDomain::Rationals, {"x", "y"}); }

Matrix M(const Ring& r, std::vector<std::vector<std::string>> rows) { return Matrix::parse(r, rows); }
Poly P(const Ring& r, const char* s) { return Poly::parse(r, s); }

Matrix upper_23x() { return M(zx(), {{"2", "x"}, {"0", "3"}}); }
Matrix corner_xy() { return M(qxy(), {{"x", "y"}, {"0", "x"}}); }

Matrix random_unimodular(const Ring& r, std::size_t n, std::mt19937_64& rng, int ops)
{
    std::uniform_int_distribution<std::size_t> idx(0, n - 1);
    std::uniform_int_distribution<int> c(-2, 2);
    Matrix u = Matrix::identity(r, n);
    for (int k = 0; k < ops; ++k) {
        std::size_t a = idx(rng), b = idx(rng);
        if (a == b)
            continue;
        Poly mult = Poly::constant(r, c(rng));
        if (r.nvars() > 0 && k % 2 == 0)
            mult = mult * Poly::variable(r, k % r.nvars());
        u = apply_elementary(u, ElementaryOp::add(Side::Row, a, b, mult));
    }
    return u;
}

} // namespace

TEST_CASE("determinants")
{
    CHECK(determinant(upper_23x()) == P(zx(), "6"));
    CHECK(determinant(corner_xy()) == P(qxy(), "x^2"));
    CHECK(determinant(Matrix::diagonal(qxy(), {P(qxy(), "x"), P(qxy(), "y-1"), P(qxy(), "x+y")}))
          == P(qxy(), "x*(y-1)*(x+y)"));
    CHECK(determinant(M(Z(), {{"0", "1"}, {"1", "0"}})) == P(Z(), "-1"));
    CHECK(determinant(M(Z(), {{"1", "2", "3", "4"}, {"0", "0", "1", "2"}, {"2", "1", "0", "1"}, {"1", "1", "1", "1"}}))
          == P(Z(), "-2"));
    CHECK_THROWS_AS(determinant(Matrix(Z(), 2, 3)), UsageError);
}

TEST_CASE("determinant is multiplicative on random instances")
{
    std::mt19937_64 rng(3);
    Ring r = qxy();
    for (int t = 0; t < 20; ++t) {
        Matrix p = random_unimodular(r, 3, rng, 4), q = random_unimodular(r, 3, rng, 4);
        Matrix m = Matrix::diagonal(r, {P(r, "x"), P(r, "y+1"), P(r, "x*y")});
        m = apply_elementary(m, ElementaryOp::add(Side::Column, 1, 0, P(r, "y")));
        CHECK(determinant(p * m * q) == determinant(p) * determinant(m) * determinant(q));
    }
}

TEST_CASE("fitting ideals")
{
    CHECK(fitting_ideal(upper_23x(), 1).is_unit());
    CHECK(fitting_ideal(corner_xy(), 1) == IdealHandle(qxy(), {P(qxy(), "x"), P(qxy(), "y")}));
    CHECK(fitting_ideal(corner_xy(), 2) == IdealHandle(qxy(), {P(qxy(), "x^2")}));
    CHECK(fitting_ideal(corner_xy(), 0).is_unit());
    CHECK_THROWS_AS(fitting_ideal(corner_xy(), 3), UsageError);
}

TEST_CASE("fitting ideals are equivalence and transpose invariant")
{
    std::mt19937_64 rng(5);
    Ring r = qxy();
    Matrix m = M(r, {{"x", "y", "0"}, {"0", "x", "1"}, {"y", "0", "x+1"}});
    for (int t = 0; t < 5; ++t) {
        Matrix p = random_unimodular(r, 3, rng, 3), q = random_unimodular(r, 3, rng, 3);
        Matrix s = p * m * q;
        for (std::size_t k = 0; k <= 3; ++k) {
            CHECK(fitting_ideal(s, k) == fitting_ideal(m, k));
            CHECK(fitting_ideal(m.transpose(), k) == fitting_ideal(m, k));
        }
    }
}

TEST_CASE("elementary operations")
{
    Matrix c = apply_elementary(upper_23x(), ElementaryOp::add(Side::Column, 1, 0, P(zx(), "x+2")));
    CHECK(c == M(zx(), {{"2", "3*x+4"}, {"0", "3"}}));
    Ring r = qxy();
    Matrix d = Matrix::diagonal(r, {P(r, "x"), P(r, "y")});
    CHECK(apply_elementary(d, ElementaryOp::swap(Side::Row, 0, 1)) == M(r, {{"0", "y"}, {"x", "0"}}));
    CHECK(apply_elementary(upper_23x(), ElementaryOp::scale(Side::Row, 0, P(zx(), "-1")))
          == M(zx(), {{"-2", "-x"}, {"0", "3"}}));
    CHECK_THROWS_AS(ElementaryOp::scale(Side::Row, 0, P(zx(), "2")), UsageError);
    auto op = ElementaryOp::add(Side::Row, 0, 1, P(r, "y"));
    CHECK(elementary_matrix(r, 2, op) * d == apply_elementary(d, op));
    auto cop = ElementaryOp::add(Side::Column, 0, 1, P(r, "y"));
    CHECK(d * elementary_matrix(r, 2, cop) == apply_elementary(d, cop));
}

TEST_CASE("certificate verification")
{
    Matrix m = upper_23x();
    EquivalenceCertificate id{m, Matrix::identity(zx(), 2), Matrix::identity(zx(), 2), m, {}};
    CHECK(verify_certificate(id).valid);

    // hand transcript: C2 += (x+2) C1; R1 -= (x+1) R2; clear; swap
    Matrix p = M(zx(), {{"1", "-(x+1)"}, {"-3", "3*x+4"}});
    Matrix q = M(zx(), {{"x+2", "1"}, {"1", "0"}}) * M(zx(), {{"1", "-2"}, {"0", "1"}});
    EquivalenceCertificate hand{m, p, q, Matrix::diagonal(zx(), {P(zx(), "1"), P(zx(), "-6")}), {}};
    auto v = verify_certificate(hand);
    CHECK(v.valid);

    EquivalenceCertificate tampered = hand;
    tampered.target.at(1, 1) += P(zx(), "1");
    CHECK_FALSE(verify_certificate(tampered).valid);
    EquivalenceCertificate badp = hand;
    badp.left.at(0, 0) += P(zx(), "1");
    CHECK_FALSE(verify_certificate(badp).valid);
}

TEST_CASE("certificate builder tracks transforms")
{
    CertificateBuilder b(upper_23x());
    b.apply(ElementaryOp::add(Side::Column, 1, 0, P(zx(), "x+2")));
    b.apply(ElementaryOp::add(Side::Row, 0, 1, P(zx(), "-(x+1)")));
    CHECK(b.current() == M(zx(), {{"2", "1"}, {"0", "3"}}));
    CHECK(verify_certificate(b.certificate()).valid);
    CHECK(b.certificate().transcript.size() == 2);
}

TEST_CASE("inverse and adjugate")
{
    Ring r = qxy();
    Matrix u = M(r, {{"1", "x"}, {"0", "1"}});
    auto inv = inverse(u);
    REQUIRE(inv);
    CHECK(*inv == M(r, {{"1", "-x"}, {"0", "1"}}));
    CHECK_FALSE(inverse(corner_xy()));
    CHECK(adjugate(corner_xy()) * corner_xy() == Matrix::diagonal(r, {P(r, "x^2"), P(r, "x^2")}));
}

TEST_CASE("smith normal form examples")
{
    auto s = smith_normal_form(M(Z(), {{"2", "4"}, {"6", "8"}}));
    CHECK(s.invariants == std::vector<Poly>{P(Z(), "2"), P(Z(), "4")});
    auto s2 = smith_normal_form(Matrix::diagonal(Z(), {P(Z(), "6"), P(Z(), "2")}));
    CHECK(s2.invariants == std::vector<Poly>{P(Z(), "2"), P(Z(), "6")});
    auto s3 = smith_normal_form(M(qx(), {{"x", "0"}, {"0", "x"}}));
    CHECK(s3.invariants == std::vector<Poly>{P(qx(), "x"), P(qx(), "x")});
    auto s4 = smith_normal_form(M(qx(), {{"x^2-1", "x+1"}, {"2*x-2", "x^3"}}));
    CHECK(verify_certificate(s4.certificate).valid);
    CHECK(s4.invariants[0] == P(qx(), "1"));
    auto s5 = smith_normal_form(M(Z(), {{"2", "4", "6"}, {"4", "8", "12"}}));
    CHECK(s5.invariants == std::vector<Poly>{P(Z(), "2"), P(Z(), "0")});
    CHECK_THROWS_AS(smith_normal_form(upper_23x()), NotEuclidean);
}
