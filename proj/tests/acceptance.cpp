// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when all pass.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "diagcert/diagonalizer.hpp"
#include "diagcert/io.hpp"
#include "diagcert/testkit.hpp"

using namespace diagcert;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kSnfLimit = 10.0;
constexpr double kCornerLimit = 5.0;
constexpr double kScrambleLimit = 60.0;

constexpr std::size_t kSnfMatrices = 500;
constexpr long kSnfEntryBound = 20;
constexpr std::size_t kScrambles = 100;
constexpr std::uint64_t kSnfSeed = 20240611;
constexpr std::uint64_t kScrambleSeed = 7;

struct Outcome {
    bool pass = true;
    std::string detail;
    void require(bool ok, const std::string& what)
    {
        if (!ok && pass) {
            pass = false;
            detail = what;
        }
    }
};

Poly P(const Ring& R, const char* s) { return Poly::parse(R, s); }

IdealHandle ideal(const Ring& R, std::initializer_list<const char*> gens)
{
    std::vector<Poly> g;
    for (auto s : gens)
        g.push_back(P(R, s));
    return IdealHandle(R, g);
}

io::Document load(const char* name)
{
    std::ifstream in(std::string(DIAGCERT_FIXTURES) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return io::parse_document(ss.str());
}

Ring qxy() { return Ring::polynomial(CoeffDomain::Rationals, {"x", "y"}); }

// Pairs of modules some routine declared isomorphic; re-probed in the soundness sweep.
std::vector<std::pair<FPModule, FPModule>> iso_yes;

Outcome snf_oracle(std::string& summary)
{
    Outcome o;
    Ring Z = Ring::integers();
    std::mt19937_64 rng(kSnfSeed);
    std::uniform_int_distribution<long> entry(-kSnfEntryBound, kSnfEntryBound);
    std::uniform_int_distribution<std::size_t> size(2, 4);
    std::size_t agree = 0;
    for (std::size_t t = 0; t < kSnfMatrices; ++t) {
        std::size_t n = size(rng);
        Matrix m(Z, n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m.at(i, j) = Poly::constant(Z, entry(rng));
        SmithForm s = smith_normal_form(m);
        std::vector<Poly> oracle = testkit::minors_gcd_snf_oracle(m);
        bool same = s.invariants.size() == oracle.size();
        for (std::size_t i = 0; same && i < oracle.size(); ++i)
            same = canonical(s.invariants[i]) == canonical(oracle[i]);
        bool chain = true;
        for (std::size_t i = 0; i + 1 < s.invariants.size(); ++i)
            chain = chain && divides(s.invariants[i], s.invariants[i + 1]);
        bool verified = verify_certificate(s.certificate).valid && s.certificate.target.is_diagonal();
        std::string id = "matrix " + std::to_string(t) + " " + m.to_string();
        o.require(same, id + ": invariants differ from the minors-gcd oracle");
        o.require(chain, id + ": divisibility chain broken");
        o.require(verified, id + ": certificate does not verify");
        agree += same && chain && verified;
    }
    summary = std::to_string(agree) + "/" + std::to_string(kSnfMatrices) + " agree";
    return o;
}

Outcome corner_fixture(std::string& summary)
{
    Outcome o;
    Ring R = qxy();
    Matrix m = *load("corner_xy.json").matrix;
    FPModule M = FPModule::from_matrix(m);
    o.require(annihilator(M) == ideal(R, {"x^2"}), "Ann(M) is not (x^2)");

    QGResult q = is_quasi_gorenstein(m);
    o.require(q.verdict == Verdict::Yes && q.certificate_kind == "permutation", "qg is not Yes by permutation");
    o.require(q.certificate && verify_certificate(*q.certificate).valid && q.certificate->target == m.transpose(),
              "qg certificate does not verify");
    iso_yes.push_back({M, FPModule::from_matrix(m.transpose())});

    DiagonalizeResult d = diagonalize(m);
    o.require(d.verdict == Verdict::No && d.obstruction.has_value(), "diagonalize is not No");
    if (d.obstruction) {
        const auto& ob = *d.obstruction;
        o.require(ob.det == P(R, "x^2"), "det is not x^2");
        o.require(ob.factorization.complete, "factorization not complete");
        o.require(ob.candidates.size() == 2, "expected exactly two candidates");
        if (ob.candidates.size() == 2) {
            o.require(ob.candidates[0].diagonal == std::vector<Poly>{P(R, "1"), P(R, "x^2")}, "first candidate");
            o.require(ob.candidates[1].diagonal == std::vector<Poly>{P(R, "x"), P(R, "x")}, "second candidate");
            for (const auto& c : ob.candidates) {
                o.require(c.k == 1, "mismatch not at k = 1");
                o.require(IdealHandle(R, c.ideal_m) == ideal(R, {"x", "y"}), "I_1(m) is not (x, y)");
            }
            o.require(IdealHandle(R, ob.candidates[0].ideal_candidate).is_unit(), "I_1 of diag(1, x^2) is not (1)");
            o.require(IdealHandle(R, ob.candidates[1].ideal_candidate) == ideal(R, {"x"}),
                      "I_1 of diag(x, x) is not (x)");
        }
        o.require(reverify(ob, m), "obstruction does not re-verify");
    }

    FiltrationSearch f = search_minimal_cyclic_filtration(M);
    o.require(!f.filtration && !f.budget_exhausted, "filtration search is not NoneWithinBounds");
    bool via_e1 = false, via_e2 = false;
    for (const auto& r : f.rejected) {
        if (!r.prefix.empty() || !r.remaining)
            continue;
        via_e1 = via_e1 || (r.element == unit_vector(R, 2, 0) && r.ideal == ideal(R, {"x"}));
        via_e2 = via_e2 || (r.element == unit_vector(R, 2, 1) && r.ideal == ideal(R, {"x^2"}) &&
                            *r.remaining == ideal(R, {"x", "y"}));
    }
    o.require(via_e1, "chain through <e1> not among the rejected candidates");
    o.require(via_e2, "chain through <e2> not among the rejected candidates");
    summary = "Ann = (x^2), qg Yes, 2 candidates refuted, " + std::to_string(f.rejected.size()) + " rejections";
    return o;
}

Outcome upper_fixture(std::string& summary)
{
    Outcome o;
    io::Document cert_doc = load("upper23x_transcript.json");
    EquivalenceCertificate cert = io::certificate_from_json(cert_doc.ring, *cert_doc.certificate);
    Verification v = verify_certificate(cert);
    o.require(v.valid, "hand transcript rejected: " + v.reason);
    o.require(cert.target.is_diagonal(), "hand transcript target is not diagonal");
    // Replaying the transcript must reproduce the stated transforms.
    CertificateBuilder b(cert.source);
    for (const auto& op : cert.transcript)
        b.apply(op);
    o.require(b.certificate().left == cert.left && b.certificate().right == cert.right &&
                  b.current() == cert.target,
              "transcript does not reproduce P, Q, D");

    io::Document doc = load("upper23x.json");
    const Matrix& m = *doc.matrix;
    o.require(cert.source == m, "transcript source differs from the fixture");
    DiagnosisReport r = analyze(m, Bounds{}, doc.claims);
    o.require(r.diagonal.has_value() && r.qg.has_value(), "report incomplete");
    if (!r.diagonal || !r.qg)
        return o;
    bool diag_yes = r.diagonal->verdict == Verdict::Yes;
    if (diag_yes) {
        o.require(verify_certificate(*r.diagonal->certificate).valid, "search certificate does not verify");
        o.require(r.qg->verdict == Verdict::Yes && r.qg->certificate &&
                      verify_certificate(*r.qg->certificate).valid,
                  "diagonalizable but no verified m ~ m^T certificate");
        o.require(r.filtration_condition == Verdict::Yes, "diagonalizable but filtration condition not Yes");
        iso_yes.push_back({FPModule::from_matrix(m), FPModule::from_matrix(m.transpose())});
    }
    if (r.qg->verdict == Verdict::No)
        o.require(!diag_yes, "not quasi-Gorenstein yet diagonalizable");
    for (const auto& f : r.findings)
        o.require(f.holds, "finding fails: " + f.implication);
    bool contradicted = v.valid || diag_yes;
    bool noted = false;
    for (const auto& n : r.notes)
        noted = noted || n.find("discrepancy: the accompanying claim says m is not equivalent to a diagonal matrix") !=
                             std::string::npos;
    o.require(!contradicted || noted, "verified outcome contradicts the claim but no discrepancy note");
    summary = std::string("transcript ") + (v.valid ? "valid" : "invalid") + ", search " +
              to_string(r.diagonal->verdict) + ", qg " + to_string(r.qg->verdict) + ", discrepancy " +
              (noted ? "noted" : "absent");
    return o;
}

Outcome scrambles(std::string& summary)
{
    Outcome o;
    Ring R = qxy();
    std::vector<Poly> primes{P(R, "x"), P(R, "y"), P(R, "x + 1"), P(R, "y - 1"), P(R, "x + y")};
    std::mt19937_64 rng(kScrambleSeed);
    std::size_t ok = 0, nodes = 0;
    for (std::size_t t = 0; t < kScrambles; ++t) {
        std::size_t n = 2 + rng() % 2;
        std::vector<Poly> diag;
        for (std::size_t i = 0; i < n; ++i) {
            Poly e = Poly::constant(R, 1);
            std::size_t count = 1 + rng() % 2;
            for (std::size_t k = 0; k < count; ++k)
                e *= primes[rng() % primes.size()];
            diag.push_back(e);
        }
        Matrix d = Matrix::diagonal(R, diag);
        std::uint64_t seed = rng();
        std::size_t ops = 1 + rng() % 6;
        testkit::Scrambled s = testkit::scramble(d, {seed, ops, {}});
        std::string id = "scramble " + std::to_string(t) + " (seed " + std::to_string(seed) + ", " +
                         std::to_string(ops) + " ops) of " + d.to_string();
        DiagonalizeResult r = diagonalize(s.matrix);
        nodes += r.nodes;
        o.require(r.verdict == Verdict::Yes, id + ": diagonalize " + to_string(r.verdict));
        if (r.verdict != Verdict::Yes)
            continue;
        const EquivalenceCertificate& c = *r.certificate;
        bool good = verify_certificate(c).valid && c.target.is_diagonal();
        o.require(good, id + ": certificate does not verify");
        for (std::size_t k = 0; k <= n; ++k) {
            bool same = fitting_ideal(c.target, k) == fitting_ideal(d, k);
            o.require(same, id + ": Fitting ideal " + std::to_string(k) + " differs");
            good = good && same;
        }
        EquivalenceCertificate tc = transpose_certificate_from_diagonal(c);
        bool t_ok = verify_certificate(tc).valid && tc.target == s.matrix.transpose();
        o.require(t_ok, id + ": transpose certificate does not verify");
        CyclicFiltration f = filtration_from_decomposition(R, c.target.diagonal_entries());
        AnnihilatorSample own = sample_lattice(f.module);
        FiltrationCheck fc = verify_filtration(f, &own);
        o.require(fc.valid, id + ": decomposition filtration: " + fc.reason);
        ok += good && t_ok && fc.valid;
    }
    summary = std::to_string(ok) + "/" + std::to_string(kScrambles) + " round-trips, " + std::to_string(nodes) +
              " search nodes";
    return o;
}

Outcome homological(std::string& summary)
{
    Outcome o;
    std::size_t fixtures = 0;
    for (const char* name : {"upper23x.json", "corner_xy.json", "z4.json", "integers3x3.json", "diag_x_y1.json"}) {
        Matrix m = *load(name).matrix;
        FPModule M = FPModule::from_matrix(m);
        std::string id = name;
        DualSequence ds = hom_dual_sequence(m);
        o.require(ds.hom_zero, id + ": Hom(M, R) != 0 from the dual sequence");
        o.require(hom_module(M, FPModule::free(m.ring(), 1)).empty(), id + ": Hom(M, R) has a generator");
        o.require(ds.ext1.presentation() == m.transpose(), id + ": Ext^1 not presented by m^T");
        IsoResult e = is_isomorphic(ext(M, 1), FPModule::from_matrix(m.transpose()));
        o.require(e.verdict == Verdict::Yes, id + ": Ext^1 by resolution not isomorphic to coker m^T");
        if (e.verdict == Verdict::Yes)
            iso_yes.push_back({ext(M, 1), FPModule::from_matrix(m.transpose())});
        Grade g = grade(M, 3);
        o.require(g.value == 1 && !g.at_least && !g.degenerate, id + ": grade is " + g.to_string());
        ++fixtures;
    }
    io::Document k = load("koszul_residue.json");
    FPModule res = *k.module;
    FPModule e2 = ext(res, 2);
    IsoResult iso = is_isomorphic(e2, res);
    o.require(iso.verdict == Verdict::Yes && iso.forward && verify_isomorphism(*iso.forward, *iso.backward),
              "Ext^2(R/(x,y), R) not certified isomorphic to R/(x,y)");
    if (iso.verdict == Verdict::Yes)
        iso_yes.push_back({e2, res});
    o.require(ext(res, 0).is_zero() && ext(res, 1).is_zero(), "Ext^0 or Ext^1 of the residue field is nonzero");
    summary = std::to_string(fixtures) + " matrix fixtures, Koszul Ext^2 iso " + to_string(iso.verdict);
    return o;
}

Outcome embedding(std::string& summary)
{
    Outcome o;
    Ring R = qxy();
    Matrix m = *load("corner_xy.json").matrix;
    FPModule M = FPModule::from_matrix(m);
    FPModule Q = quotient_presentation(M, {unit_vector(R, 2, 0)});
    FPModule e = ext(Q, 1);
    IsoResult shape = is_isomorphic(e, FPModule::cyclic(R, {P(R, "x")}));
    o.require(shape.verdict == Verdict::Yes, "ext(M/<e1>, 1) is not certified isomorphic to R/(x)");
    if (shape.verdict == Verdict::Yes)
        iso_yes.push_back({e, FPModule::cyclic(R, {P(R, "x")})});
    auto f = find_embedding(e, M);
    o.require(f.has_value(), "no injective map found");
    if (f) {
        o.require(is_well_defined(*f), "map is not well defined");
        o.require(is_injective(*f), "map is not injective");
        summary = "phi = " + f->phi.to_string();
    }
    return o;
}

Outcome splitting(std::string& summary)
{
    Outcome o;
    Ring Z = Ring::integers();
    FPModule z4 = FPModule::from_matrix(*load("z4.json").matrix);
    FPModule z2 = FPModule::cyclic(Z, {P(Z, "2")});
    SplitResult ns = split_test(z4, {{P(Z, "2")}}, z2);
    o.require(ns.verdict == Verdict::No, "Z/4 is not reported NotSplit");
    o.require(ns.iso.obstruction && ns.iso.obstruction->kind == ModuleObstruction::Kind::Fitting &&
                  reverify(*ns.iso.obstruction, z4, direct_sum(z2, z2)),
              "NotSplit lacks a re-verified Fitting obstruction");

    FPModule d = FPModule::from_matrix(Matrix::parse(Z, {{"2", "0"}, {"0", "3"}}));
    SplitResult sp = split_test(d, {{P(Z, "1"), P(Z, "0")}}, FPModule::cyclic(Z, {P(Z, "3")}));
    o.require(sp.verdict == Verdict::Yes, "R/(2) + R/(3) is not reported Split");
    if (sp.verdict == Verdict::Yes)
        iso_yes.push_back({d, sp.sum});

    FiltrationSearch f = search_minimal_cyclic_filtration(z4);
    o.require(f.filtration && f.filtration->steps.size() == 1 &&
                  f.filtration->steps[0].ideal == IdealHandle(Z, {P(Z, "4")}) &&
                  verify_filtration(*f.filtration, &f.lattice).valid,
              "Z/4 minimal filtration is not the verified length-1 chain");
    summary = "Z/4 NotSplit (fitting), Z/2 + Z/3 Split, Z/4 filtration length " +
              std::to_string(f.filtration ? f.filtration->steps.size() : 0);
    return o;
}

// Extra substitutions and primes beyond the default probe pool.
std::vector<SpecializationProbe> wide_probes(const Ring& ring)
{
    std::vector<SpecializationProbe> out = testkit::default_probes(ring);
    std::size_t n = ring.nvars();
    for (long a : {2L, -2L, 3L}) {
        std::vector<long> vals(n, a);
        out.push_back({vals, std::nullopt, 0, 0});
        if (!ring.field_coefficients())
            for (unsigned long p : {7UL, 11UL})
                out.push_back({vals, std::nullopt, p, 1});
        if (ring.field_coefficients())
            for (std::size_t keep = 0; keep < n; ++keep)
                out.push_back({vals, keep, 0, 0});
    }
    if (n == 0)
        for (unsigned long p : {7UL, 11UL})
            out.push_back({{}, std::nullopt, p, 2});
    return out;
}

Outcome soundness(std::string& summary)
{
    Outcome o;
    auto& audit = testkit::SoundnessAudit::instance();
    for (const auto& [a, b] : iso_yes) {
        testkit::SpecializationResult r = testkit::specialization_oracle(a, b, wide_probes(a.ring()));
        if (r.distinguished)
            audit.record_iso_probe_conflict("acceptance re-probe: " + r.detail);
    }
    o.require(audit.yes_total() > 0 && audit.no_total() > 0, "the run emitted no verdicts to audit");
    o.require(audit.yes_total() == audit.yes_verified(), "unverified Yes verdicts");
    o.require(audit.no_total() == audit.no_reverified(), "unverified No verdicts");
    o.require(audit.conflicts() == 0, "isomorphism Yes with a distinguishing probe");
    for (const auto& f : audit.failures())
        o.require(false, f);
    summary = std::to_string(audit.yes_verified()) + "/" + std::to_string(audit.yes_total()) + " Yes verified, " +
              std::to_string(audit.no_reverified()) + "/" + std::to_string(audit.no_total()) +
              " No re-verified, " + std::to_string(iso_yes.size()) + " iso pairs re-probed, " +
              std::to_string(audit.conflicts()) + " conflicts";
    return o;
}

struct Criterion {
    const char* name;
    double limit; // seconds, 0 for none
    std::function<Outcome(std::string&)> run;
};

} // namespace

int main()
{
    std::vector<Criterion> criteria{
        {"SNF agrees with the minors-gcd oracle on 500 random integer matrices", kSnfLimit, snf_oracle},
        {"corner matrix [[x, y], [0, x]] over Q[x,y]", kCornerLimit, corner_fixture},
        {"upper matrix [[2, x], [0, 3]] over Z[x]: hand transcript and consistent report", 0, upper_fixture},
        {"100 scrambled diagonals over Q[x,y] round-trip", kScrambleLimit, scrambles},
        {"Hom, Ext^1, grade and Koszul self-duality fixtures", 0, homological},
        {"ext(M/<e1>, 1) = R/(x) embeds in the corner module", 0, embedding},
        {"split detection and the Z/4 minimal filtration", 0, splitting},
        {"soundness sweep over every verdict of this run", 0, soundness},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const Criterion& c = criteria[i];
        std::string summary;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(summary);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.limit > 0 && secs >= c.limit)
            o.require(false, "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit) + " s");
        std::string timing = c.limit > 0 ? "%.2f s of %.0f s" : "%.2f s";
        char tbuf[64];
        std::snprintf(tbuf, sizeof tbuf, timing.c_str(), secs, c.limit);
        std::printf("%s  %zu. %s [%s] %s%s\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, tbuf, summary.c_str(),
                    o.pass ? "" : (" -- " + o.detail).c_str());
        failed += !o.pass;
    }
    std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
    return failed == 0 ? 0 : 1;
}
