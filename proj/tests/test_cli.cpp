#include "doctest.h"

#include <cstdlib>
#include <fstream>

#include "diagcert/cli.hpp"
#include "diagcert/io.hpp"

using namespace diagcert;
using io::Json;

namespace {

std::string fixture(const char* name) { return std::string(DIAGCERT_FIXTURES) + "/" + name; }

cli::CommandOutcome run(const std::string& cmd, const std::string& path, bool json = true)
{
    cli::CommandRequest r;
    r.subcommand = cmd;
    r.input = path;
    r.json = json;
    return cli::run(r);
}

std::string scratch(const std::string& name, const std::string& body)
{
    std::string path = "cli_" + name + ".json";
    std::ofstream(path) << body;
    return path;
}

} // namespace

TEST_CASE("snf on an integer matrix")
{
    auto out = run("snf", fixture("integers3x3.json"));
    REQUIRE(out.code == 0);
    Json j = Json::parse(out.output);
    CHECK(j["schema"] == "diagcert/1");
    CHECK(j["smith"]["invariants"] == Json({"1", "2", "158"}));
    CHECK(j["smith"]["certificate"]["verified"] == true);
    CHECK(run("snf", fixture("corner_xy.json")).code == 1);
}

TEST_CASE("analyze the corner matrix")
{
    auto out = run("analyze", fixture("corner_xy.json"));
    REQUIRE(out.code == 0);
    Json r = Json::parse(out.output)["report"];
    CHECK(r["quasi_gorenstein"]["verdict"] == "Yes");
    CHECK(r["quasi_gorenstein"]["certificate"]["verified"] == true);
    CHECK(r["diagonalizable"]["verdict"] == "No");
    CHECK(r["diagonalizable"]["obstruction"]["verified"] == true);
    CHECK(r["filtration"]["verdict"] == "NoneWithinBounds");
}

TEST_CASE("analyze reports the discrepancy on the upper 2, x, 3 matrix")
{
    auto out = run("analyze", fixture("upper23x.json"));
    REQUIRE(out.code == 0);
    Json r = Json::parse(out.output)["report"];
    CHECK(r["diagonalizable"]["verdict"] == "Yes");
    CHECK(r["diagonalizable"]["certificate"]["verified"] == true);
    bool noted = false;
    for (const auto& n : r["notes"])
        noted = noted || n.get<std::string>().find("discrepancy") != std::string::npos;
    CHECK(noted);
}

TEST_CASE("verify accepts the hand transcript and rejects tampering")
{
    auto good = run("verify", fixture("upper23x_transcript.json"));
    REQUIRE(good.code == 0);
    Json g = Json::parse(good.output)["verification"];
    CHECK(g["verdict"] == "Valid");
    CHECK(g["transcript_checked"] == true);
    CHECK(g["target_diagonal"] == true);

    auto bad = run("verify", fixture("upper23x_tampered.json"));
    CHECK(bad.code == 0);
    CHECK(Json::parse(bad.output)["verification"]["verdict"] == "Invalid");

    // A transcript that disagrees with the stated transforms.
    std::ifstream in(fixture("upper23x_transcript.json"));
    Json doc = Json::parse(in);
    doc["certificate"]["transcript"][0]["multiplier"] = "x + 3";
    auto odd = run("verify", scratch("odd_transcript", doc.dump()));
    CHECK(Json::parse(odd.output)["verification"]["verdict"] == "Invalid");
}

TEST_CASE("filtration exit codes")
{
    auto z4 = run("filtration", fixture("z4.json"));
    CHECK(z4.code == 0);
    CHECK(Json::parse(z4.output)["filtration"]["filtration"]["length"] == 1);
    CHECK(run("filtration", fixture("corner_xy.json")).code == 4);
    CHECK(run("filtration", fixture("koszul_residue.json")).code == 0);
}

TEST_CASE("diagonalize and qg")
{
    auto d = run("diagonalize", fixture("diag_x_y1.json"));
    CHECK(d.code == 0);
    CHECK(Json::parse(d.output)["diagonalizable"]["verdict"] == "Yes");
    auto q = run("qg", fixture("corner_xy.json"));
    CHECK(q.code == 0);
    CHECK(Json::parse(q.output)["quasi_gorenstein"]["certificate_kind"] == "permutation");
}

TEST_CASE("output is byte-identical across runs")
{
    CHECK(run("analyze", fixture("corner_xy.json")).output == run("analyze", fixture("corner_xy.json")).output);
    CHECK(run("analyze", fixture("upper23x.json"), false).output ==
          run("analyze", fixture("upper23x.json"), false).output);
}

TEST_CASE("malformed inputs exit with code 1")
{
    CHECK(run("snf", "no_such_file.json").code == 1);
    CHECK(run("snf", scratch("not_json", "{")).code == 1);
    CHECK(run("snf", scratch("no_schema", R"({"ring":{"kind":"integers"},"matrix":[["1"]]})")).code == 1);
    CHECK(run("snf", scratch("extra", R"({"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["1"]],"x":0})"))
              .code == 1);
    auto bad_poly = run("snf", scratch("bad_poly", R"({"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["2*"]]})"));
    CHECK(bad_poly.code == 1);
    CHECK(bad_poly.error.find("matrix[0][0]") != std::string::npos);
    CHECK(bad_poly.error.find("position") != std::string::npos);
    CHECK(run("diagonalize", scratch("ragged", R"({"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["1","2"],["3"]]})"))
              .code == 1);
    CHECK(run("diagonalize", scratch("singular", R"({"schema":"diagcert/1","ring":{"kind":"integers"},"matrix":[["1","2"],["2","4"]]})"))
              .code == 1);
    CHECK(run("frobnicate", fixture("z4.json")).code == 1);
    CHECK(run("verify", fixture("z4.json")).code == 1);
}

TEST_CASE("documents round-trip")
{
    Ring R = Ring::polynomial(CoeffDomain::PrimeField, {"x", "y"}, MonomialOrder::Lex, 7);
    Matrix m = Matrix::parse(R, {{"x + 3", "y^2"}, {"0", "6*x*y"}});
    io::Document d = io::parse_document(io::matrix_document(m, Claims{true, std::nullopt}).dump());
    CHECK(d.ring == R);
    CHECK(*d.matrix == m);
    CHECK(*d.claims.diagonalizable);
    CHECK_FALSE(d.claims.transpose_equivalent);
}

TEST_CASE("DIAGCERT_BUDGET overrides the node budget")
{
    Bounds b;
    setenv("DIAGCERT_BUDGET", "17", 1);
    cli::apply_environment(b);
    CHECK(b.candidates == 17);
    setenv("DIAGCERT_BUDGET", "lots", 1);
    CHECK_THROWS_AS(cli::apply_environment(b), UsageError);
    unsetenv("DIAGCERT_BUDGET");
}
