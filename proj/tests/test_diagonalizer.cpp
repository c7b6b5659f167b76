#include "doctest.h"

#include "diagcert/diagonalizer.hpp"
#include "diagcert/testkit.hpp"

using namespace diagcert;

namespace {

Ring qxy() { return Ring::polynomial(CoeffDomain::Rationals, {"x", "y"}); }
Ring zx() { return Ring::polynomial(CoeffDomain::Integers, {"x"}); }
Poly P(const Ring& R, const char* s) { return Poly::parse(R, s); }

Matrix corner_xy() { return Matrix::parse(qxy(), {{"x", "y"}, {"0", "x"}}); }
Matrix upper_23x() { return Matrix::parse(zx(), {{"2", "x"}, {"0", "3"}}); }

bool has_note(const DiagnosisReport& r, const std::string& needle)
{
    for (const auto& n : r.notes)
        if (n.find(needle) != std::string::npos)
            return true;
    return false;
}

} // namespace

TEST_CASE("Euclidean rings delegate to Smith normal form")
{
    Ring Z = Ring::integers();
    DiagonalizeResult r = diagonalize(Matrix::parse(Z, {{"2", "4"}, {"6", "8"}}));
    CHECK(r.verdict == Verdict::Yes);
    CHECK(r.method == "smith");
    REQUIRE(r.certificate);
    CHECK(verify_certificate(*r.certificate).valid);
    CHECK(r.certificate->target.is_diagonal());
}

TEST_CASE("degenerate inputs")
{
    Ring R = qxy();
    CHECK_THROWS_AS(diagonalize(Matrix::parse(R, {{"x", "y"}, {"x", "y"}})), FullRankRequired);
    DiagonalizeResult u = diagonalize(Matrix::parse(R, {{"1", "y"}, {"x", "1 + x*y"}}));
    CHECK(u.verdict == Verdict::Yes);
    CHECK(u.certificate->target.is_identity());
    DiagnosisReport z = analyze(Matrix::parse(R, {{"x", "y"}, {"x", "y"}}));
    CHECK(z.degenerate);
    CHECK_FALSE(z.full_rank);
}

TEST_CASE("the corner matrix is certified non-diagonalizable")
{
    Matrix m = corner_xy();
    DiagonalizeResult r = diagonalize(m);
    CHECK(r.verdict == Verdict::No);
    REQUIRE(r.obstruction);
    const ObstructionRecord& o = *r.obstruction;
    CHECK(o.det == P(qxy(), "x^2"));
    REQUIRE(o.candidates.size() == 2);
    CHECK(o.candidates[0].diagonal == std::vector<Poly>{P(qxy(), "1"), P(qxy(), "x^2")});
    CHECK(o.candidates[1].diagonal == std::vector<Poly>{P(qxy(), "x"), P(qxy(), "x")});
    for (const auto& c : o.candidates) {
        CHECK(c.k == 1);
        CHECK(IdealHandle(qxy(), c.ideal_m) == IdealHandle(qxy(), {P(qxy(), "x"), P(qxy(), "y")}));
    }
    CHECK(IdealHandle(qxy(), o.candidates[0].ideal_candidate).is_unit());
    CHECK(IdealHandle(qxy(), o.candidates[1].ideal_candidate) == IdealHandle(qxy(), {P(qxy(), "x")}));
    CHECK(reverify(o, m));

    ObstructionRecord tampered = o;
    tampered.candidates.pop_back();
    CHECK_FALSE(reverify(tampered, m));
    CHECK_FALSE(reverify(o, Matrix::parse(qxy(), {{"x", "0"}, {"0", "x"}})));
}

TEST_CASE("the search finds a diagonal form for the upper 2, x, 3 matrix")
{
    Matrix m = upper_23x();
    DiagonalizeResult r = diagonalize(m);
    CHECK(r.verdict == Verdict::Yes);
    REQUIRE(r.certificate);
    CHECK(verify_certificate(*r.certificate).valid);
    Matrix d = r.certificate->target;
    CHECK(d.is_diagonal());
    CHECK(are_associates(d.at(0, 0) * d.at(1, 1), P(zx(), "6")));
    EquivalenceCertificate t = transpose_certificate_from_diagonal(*r.certificate);
    CHECK(t.target == m.transpose());
    CHECK(verify_certificate(t).valid);
}

TEST_CASE("transpose certificates")
{
    Ring R = qxy();
    Matrix d = Matrix::parse(R, {{"x", "0"}, {"0", "y - 1"}});
    EquivalenceCertificate id{d, Matrix::identity(R, 2), Matrix::identity(R, 2), d, {}};
    EquivalenceCertificate t = transpose_certificate_from_diagonal(id);
    CHECK(t.left.is_identity());
    CHECK(t.right.is_identity());

    Ring Z = Ring::integers();
    Matrix a = Matrix::parse(Z, {{"4", "7", "1"}, {"2", "-3", "5"}, {"0", "6", "8"}});
    EquivalenceCertificate s = transpose_certificate_from_diagonal(smith_normal_form(a).certificate);
    CHECK(s.target == a.transpose());
    CHECK(verify_certificate(s).valid);

    EquivalenceCertificate bad = id;
    bad.target = Matrix::parse(R, {{"x", "1"}, {"0", "y - 1"}});
    CHECK_THROWS_AS(transpose_certificate_from_diagonal(bad), UsageError);
}

TEST_CASE("seeded scrambles over Q[x,y] are undone")
{
    Ring R = qxy();
    std::vector<Poly> primes{P(R, "x"), P(R, "y"), P(R, "x + 1"), P(R, "y - 1"), P(R, "x + y")};
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        std::size_t n = 2 + seed % 2;
        std::vector<Poly> diag;
        for (std::size_t i = 0; i < n; ++i) {
            Poly e = primes[(seed * 7 + i * 3) % primes.size()];
            if ((seed + i) % 2 == 0)
                e *= primes[(seed + 2 * i) % primes.size()];
            diag.push_back(e);
        }
        Matrix d = Matrix::diagonal(R, diag);
        testkit::Scrambled s = testkit::scramble(d, {seed, 6, {}});
        CAPTURE(s.matrix.to_string());
        DiagonalizeResult r = diagonalize(s.matrix);
        REQUIRE(r.verdict == Verdict::Yes);
        CHECK(verify_certificate(*r.certificate).valid);
        for (std::size_t k = 0; k <= n; ++k)
            CHECK(fitting_ideal(r.certificate->target, k) == fitting_ideal(d, k));
    }
}

TEST_CASE("analyze: the upper 2, x, 3 matrix contradicts the prose claims")
{
    Claims claims{false, false};
    DiagnosisReport r = analyze(upper_23x(), Bounds{}, claims);
    REQUIRE(r.diagonal);
    CHECK(r.diagonal->verdict == Verdict::Yes);
    REQUIRE(r.qg);
    CHECK(r.qg->verdict == Verdict::Yes);
    CHECK(has_note(r, "not equivalent to a diagonal matrix"));
    CHECK(has_note(r, "not equivalent to its transpose"));
    for (const auto& f : r.findings)
        CHECK(f.holds);
    CHECK(r.filtration_condition == Verdict::Yes);
}

TEST_CASE("analyze: the corner matrix is consistent")
{
    DiagnosisReport r = analyze(corner_xy());
    CHECK(r.pd_one);
    CHECK(r.qg->verdict == Verdict::Yes);
    CHECK_FALSE(r.filtration->filtration);
    CHECK(r.diagonal->verdict == Verdict::No);
    CHECK_FALSE(has_note(r, "discrepancy"));
}

TEST_CASE("analyze: a diagonal matrix satisfies every condition")
{
    Ring R = qxy();
    DiagnosisReport r = analyze(Matrix::parse(R, {{"x", "0"}, {"0", "y - 1"}}));
    CHECK(r.diagonal->verdict == Verdict::Yes);
    CHECK(r.diagonal->certificate->left.is_identity());
    CHECK(r.qg->verdict == Verdict::Yes);
    CHECK(r.decomposition_filtration);
    CHECK(r.filtration_condition == Verdict::Yes);
    for (const auto& f : r.findings)
        CHECK(f.holds);
    CHECK_FALSE(has_note(r, "discrepancy"));
}

TEST_CASE("every emitted verdict was independently checked")
{
    auto& a = testkit::SoundnessAudit::instance();
    CHECK(a.yes_total() > 0);
    CHECK(a.no_total() > 0);
    CHECK(a.yes_total() == a.yes_verified());
    CHECK(a.no_total() == a.no_reverified());
    CHECK(a.conflicts() == 0);
}
