#include "doctest.h"

#include "diagcert/testkit.hpp"

using namespace diagcert;

namespace {

Poly P(const Ring& R, const char* s) { return Poly::parse(R, s); }

std::vector<Poly> ints(std::initializer_list<long> xs)
{
    std::vector<Poly> out;
    for (long x : xs)
        out.push_back(Poly::constant(Ring::integers(), x));
    return out;
}

} // namespace

TEST_CASE("minors-gcd oracle")
{
    Ring Z = Ring::integers();
    CHECK(testkit::minors_gcd_snf_oracle(Matrix::parse(Z, {{"2", "4"}, {"6", "8"}})) == ints({2, 4}));
    CHECK(testkit::minors_gcd_snf_oracle(Matrix::parse(Z, {{"3", "0"}, {"0", "5"}})) == ints({1, 15}));
    CHECK(testkit::minors_gcd_snf_oracle(Matrix::identity(Z, 2)) == ints({1, 1}));
    CHECK(testkit::minors_gcd_snf_oracle(Matrix::parse(Z, {{"6", "0"}, {"0", "2"}})) == ints({2, 6}));
}

TEST_CASE("scrambles replay and carry their ground truth")
{
    Ring R = Ring::polynomial(CoeffDomain::Rationals, {"x", "y"});
    Matrix d = Matrix::parse(R, {{"x", "0"}, {"0", "y"}});
    CHECK(testkit::scramble(d, {7, 0, {}}).matrix == d);

    testkit::Scrambled a = testkit::scramble(d, {42, 6, {}}), b = testkit::scramble(d, {42, 6, {}});
    CHECK(a.matrix == b.matrix);
    CHECK(a.operations.size() == 6);
    CHECK(verify_certificate(a.ground_truth).valid);
    CHECK(a.ground_truth.target == d);

    Matrix replayed = d;
    for (const auto& op : a.operations)
        replayed = apply_elementary(replayed, op);
    CHECK(replayed == a.matrix);

    CHECK(apply_elementary(d, ElementaryOp::add(Side::Column, 1, 0, P(R, "y"))) ==
          Matrix::parse(R, {{"x", "x*y"}, {"0", "y"}}));
}

TEST_CASE("specialization oracle")
{
    Ring Z = Ring::integers();
    FPModule z4 = FPModule::cyclic(Z, {P(Z, "4")});
    FPModule z22 = FPModule::from_matrix(Matrix::parse(Z, {{"2", "0"}, {"0", "2"}}));
    SpecializationProbe identity{{}, std::nullopt, 0, 0};
    testkit::SpecializationResult r = testkit::specialization_oracle(z4, z22, {identity});
    CHECK(r.distinguished);
    CHECK_FALSE(testkit::specialization_oracle(z4, z4).distinguished);

    // y -> 0 turns both presentations into diag(x, x) over Q[x], so this probe cannot tell them apart.
    Ring R = Ring::polynomial(CoeffDomain::Rationals, {"x", "y"});
    FPModule corner = FPModule::from_matrix(Matrix::parse(R, {{"x", "y"}, {"0", "x"}}));
    FPModule xx = FPModule::from_matrix(Matrix::parse(R, {{"x", "0"}, {"0", "x"}}));
    SpecializationProbe y0{{0, 0}, 0, 0, 0};
    testkit::ProbeInvariants a = testkit::specialize(corner, y0), b = testkit::specialize(xx, y0);
    CHECK(a == b);
    CHECK(a.torsion == std::vector<std::string>{"x", "x"});
    CHECK_FALSE(testkit::specialization_oracle(corner, xx, {y0}).distinguished);
}

TEST_CASE("default probe pool")
{
    CHECK(testkit::default_probes(Ring::integers()).size() == 7);
    Ring R = Ring::polynomial(CoeffDomain::Rationals, {"x", "y"});
    CHECK(testkit::default_probes(R).size() == 9 + 6);
}
