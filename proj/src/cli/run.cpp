#include "diagcert/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "diagcert/certcheck.hpp"
#include "diagcert/io.hpp"

namespace diagcert::cli {

namespace {

using io::Json;
using certcheck::Grid;

std::string read_input(const std::string& path)
{
    if (path.empty())
        throw UsageError("no input file given (use --input)");
    if (path == "-")
        return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Matrix& need_matrix(const io::Document& d, const std::string& cmd)
{
    if (!d.matrix)
        throw UsageError(cmd + " needs a matrix document");
    return *d.matrix;
}

int verdict_code(Verdict v) { return v == Verdict::Unknown ? 4 : 0; }

std::string rows_text(const Matrix& m)
{
    std::string s;
    for (const auto& row : m.to_strings()) {
        s += "  [";
        for (std::size_t j = 0; j < row.size(); ++j)
            s += (j ? ", " : "") + row[j];
        s += "]\n";
    }
    return s;
}

std::string list_text(const std::vector<Poly>& ps)
{
    std::string s = "(";
    for (std::size_t i = 0; i < ps.size(); ++i)
        s += (i ? ", " : "") + ps[i].to_string();
    return s + ")";
}

std::string vector_text(const FreeVector& v)
{
    std::string s = list_text(v);
    return "[" + s.substr(1, s.size() - 2) + "]";
}

std::string cert_text(const EquivalenceCertificate& c)
{
    std::string s = "P =\n" + rows_text(c.left) + "Q =\n" + rows_text(c.right) + "P m Q =\n" + rows_text(c.target);
    Verification v = verify_certificate(c);
    return s + "verified: " + (v.valid ? "yes" : "NO (" + v.reason + ")") + "\n";
}

std::string diagonalize_text(const DiagonalizeResult& r, const Matrix& m)
{
    std::string s = "diagonalizable: " + to_string(r.verdict) + " (" + r.method + ", " + std::to_string(r.nodes) +
                    " nodes)\n";
    if (r.certificate)
        s += cert_text(*r.certificate);
    if (r.obstruction) {
        s += "det = " + r.obstruction->det.to_string() + "\n";
        for (const auto& c : r.obstruction->candidates)
            s += "  candidate diag" + list_text(c.diagonal) + ": I_" + std::to_string(c.k) + "(m) = " +
                 list_text(c.ideal_m) + " but " + list_text(c.ideal_candidate) + "\n";
        s += std::string("obstruction re-verified: ") + (reverify(*r.obstruction, m) ? "yes" : "NO") + "\n";
    }
    if (!r.note.empty())
        s += "note: " + r.note + "\n";
    return s;
}

std::string qg_text(const QGResult& q)
{
    std::string s = "quasi-Gorenstein (m ~ m^T): " + to_string(q.verdict);
    if (!q.certificate_kind.empty())
        s += " [" + q.certificate_kind + "]";
    s += "\n";
    if (q.certificate)
        s += cert_text(*q.certificate);
    if (q.iso && q.iso->obstruction)
        s += "obstruction: " + q.iso->obstruction->description + "\n";
    if (!q.note.empty())
        s += "note: " + q.note + "\n";
    return s;
}

std::string filtration_text(const FiltrationSearch& f)
{
    std::string s = "annihilator lattice sample:";
    for (const auto& e : f.lattice.entries)
        s += " " + e.annihilator.to_string();
    s += "\n";
    if (f.filtration) {
        s += "minimal cyclic filtration of length " + std::to_string(f.filtration->steps.size()) + ":\n";
        for (const auto& st : f.filtration->steps)
            s += "  + <" + vector_text(st.generator) + ">  quotient R/" + st.ideal.to_string() + "\n";
    } else {
        s += std::string(f.budget_exhausted ? "budget exhausted" : "no admissible filtration within bounds") + "\n";
    }
    for (const auto& r : f.rejected) {
        s += "  rejected <" + vector_text(r.element) + "> after " + std::to_string(r.prefix.size()) +
             " steps: " + r.reason;
        if (r.remaining)
            s += "; rest has annihilator " + r.remaining->to_string() + (r.remaining_cyclic ? " (cyclic)" : "");
        s += "\n";
    }
    return s;
}

std::string report_text(const DiagnosisReport& r)
{
    std::string s = "ring: " + r.matrix.ring().describe() + "\nm =\n" + rows_text(r.matrix) + "det = " +
                    r.det.to_string() + "\n";
    if (!r.full_rank) {
        for (const auto& n : r.notes)
            s += "note: " + n + "\n";
        return s;
    }
    s += std::string("pd one: ") + (r.pd_one ? "yes" : "no") + "\n";
    if (r.qg)
        s += qg_text(*r.qg);
    if (r.filtration)
        s += filtration_text(*r.filtration);
    if (r.diagonal)
        s += diagonalize_text(*r.diagonal, r.matrix);
    s += "filtration condition: " + to_string(r.filtration_condition) + "\n";
    for (const auto& f : r.findings)
        s += std::string("finding [") + (f.holds ? "holds" : "FAILS") + "] " + f.implication + ": " + f.detail + "\n";
    for (const auto& n : r.notes)
        s += "note: " + n + "\n";
    return s;
}

// The verifier reads the certificate straight into grids of ring elements and
// replays the transcript itself, so it shares nothing with the matrix code.
Grid grid_from(const Ring& ring, const Json& rows, const std::string& where)
{
    if (!rows.is_array())
        throw UsageError(where + ": expected a list of rows");
    Grid g;
    for (const auto& row : rows) {
        if (!row.is_array())
            throw UsageError(where + ": expected a list of rows");
        std::vector<Poly> r;
        for (const auto& e : row)
            r.push_back(Poly::parse(ring, e.get<std::string>()));
        g.push_back(std::move(r));
    }
    return g;
}

Grid identity_grid(const Ring& ring, std::size_t n)
{
    Grid g(n, std::vector<Poly>(n, Poly(ring)));
    for (std::size_t i = 0; i < n; ++i)
        g[i][i] = Poly::constant(ring, 1);
    return g;
}

// Row ops act on P from the left, column ops on Q from the right.
std::optional<std::string> replay(const Ring& ring, const Json& ops, Grid& p, Grid& q)
{
    for (std::size_t k = 0; k < ops.size(); ++k) {
        const Json& op = ops[k];
        std::string side = op.at("side").get<std::string>(), kind = op.at("kind").get<std::string>();
        std::size_t t = op.at("target").get<std::size_t>();
        std::size_t src = op.contains("source") ? op.at("source").get<std::size_t>() : t;
        bool row = side == "row";
        Grid& g = row ? p : q;
        std::size_t n = g.size();
        if (t >= n || src >= n)
            return "transcript entry " + std::to_string(k) + " is out of range";
        Poly c = op.contains("multiplier") ? Poly::parse(ring, op.at("multiplier").get<std::string>()) : Poly(ring);
        for (std::size_t l = 0; l < n; ++l) {
            Poly& tgt = row ? g[t][l] : g[l][t];
            Poly& from = row ? g[src][l] : g[l][src];
            if (kind == "add")
                tgt += c * from;
            else if (kind == "swap")
                std::swap(tgt, from);
            else if (kind == "scale")
                tgt *= c;
            else
                return "transcript entry " + std::to_string(k) + " has unknown kind " + kind;
        }
        if (kind == "scale" && (!c.is_constant() || c.is_zero() || !ring.cis_unit(c.leading_coeff())))
            return "transcript entry " + std::to_string(k) + " scales by a non-unit";
    }
    return std::nullopt;
}

Json verify_document(const io::Document& d)
{
    const Json& c = *d.certificate;
    Grid source = grid_from(d.ring, c.at("source"), "certificate.source");
    Grid left = grid_from(d.ring, c.at("left"), "certificate.left");
    Grid right = grid_from(d.ring, c.at("right"), "certificate.right");
    Grid target = grid_from(d.ring, c.at("target"), "certificate.target");
    std::optional<std::string> why = certcheck::check_equivalence(d.ring, source, left, right, target);
    bool transcript = c.contains("transcript") && !c["transcript"].empty();
    if (!why && transcript) {
        Grid p = identity_grid(d.ring, left.size()), q = identity_grid(d.ring, right.size());
        why = replay(d.ring, c["transcript"], p, q);
        if (!why && (p != left || q != right))
            why = "the transcript does not reproduce the stated transforms";
    }
    bool diagonal = true;
    for (std::size_t i = 0; i < target.size(); ++i)
        for (std::size_t j = 0; j < target[i].size(); ++j)
            if (i != j && !target[i][j].is_zero())
                diagonal = false;
    Json out{{"verdict", why ? "Invalid" : "Valid"}, {"transcript_checked", transcript}, {"target_diagonal", diagonal}};
    if (why)
        out["reason"] = *why;
    return out;
}

Json bounds_json(const Bounds& b)
{
    return Json{{"degree", b.degree}, {"height", b.height}, {"candidates", b.candidates}};
}

CommandOutcome dispatch(const CommandRequest& req)
{
    Bounds bounds = req.bounds;
    apply_environment(bounds);
    if (bounds.degree == 0 || bounds.height == 0 || bounds.candidates == 0)
        throw UsageError("bounds must be positive");
    io::Document d = io::parse_document(read_input(req.input));
    Json out{{"schema", io::kSchema}, {"command", req.subcommand}, {"seed", req.seed}, {"bounds", bounds_json(bounds)}};
    std::string text;
    int code = 0;
    const std::string& cmd = req.subcommand;

    if (cmd == "snf") {
        const Matrix& m = need_matrix(d, cmd);
        SmithForm s = smith_normal_form(m);
        out["smith"] = io::smith_to_json(s);
        text = "invariant factors: " + list_text(s.invariants) + "\n" + cert_text(s.certificate);
    } else if (cmd == "analyze") {
        const Matrix& m = need_matrix(d, cmd);
        DiagnosisReport r = analyze(m, bounds, d.claims);
        out["report"] = io::report_to_json(r);
        text = report_text(r);
        code = r.diagonal ? verdict_code(r.diagonal->verdict) : (r.full_rank ? 4 : 1);
    } else if (cmd == "qg") {
        const Matrix& m = need_matrix(d, cmd);
        QGResult q = is_quasi_gorenstein(m, bounds);
        out["quasi_gorenstein"] = io::qg_to_json(q, m);
        text = qg_text(q);
        code = verdict_code(q.verdict);
    } else if (cmd == "diagonalize") {
        const Matrix& m = need_matrix(d, cmd);
        DiagonalizeResult r = diagonalize(m, bounds);
        out["diagonalizable"] = io::diagonalize_to_json(r, m);
        text = diagonalize_text(r, m);
        code = verdict_code(r.verdict);
    } else if (cmd == "filtration") {
        FPModule M = d.module ? *d.module : d.matrix ? FPModule::from_matrix(*d.matrix)
                                                     : throw UsageError("filtration needs a matrix or a module");
        FiltrationSearch f = search_minimal_cyclic_filtration(M, bounds);
        out["module"] = io::module_to_json(M);
        out["filtration"] = io::filtration_search_to_json(f);
        text = filtration_text(f);
        code = f.filtration ? 0 : 4;
    } else if (cmd == "verify") {
        if (!d.certificate)
            throw UsageError("verify needs a certificate document");
        out["verification"] = verify_document(d);
        text = "certificate: " + out["verification"]["verdict"].get<std::string>() +
               (out["verification"].contains("reason")
                    ? " (" + out["verification"]["reason"].get<std::string>() + ")"
                    : std::string()) +
               "\n";
    } else {
        throw UsageError("unknown subcommand " + cmd);
    }
    return {code, req.json ? out.dump(2) + "\n" : text, ""};
}

} // namespace

void apply_environment(Bounds& bounds)
{
    const char* env = std::getenv("DIAGCERT_BUDGET");
    if (!env || !*env)
        return;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0' || v == 0)
        throw UsageError("DIAGCERT_BUDGET must be a positive integer");
    bounds.candidates = static_cast<std::size_t>(v);
}

CommandOutcome run(const CommandRequest& request)
{
    try {
        return dispatch(request);
    } catch (const InternalError& e) {
        return {2, "", std::string("internal error: ") + e.what()};
    } catch (const UsageError& e) {
        return {1, "", std::string("error: ") + e.what()};
    } catch (const ResourceError& e) {
        return {4, "", std::string("unknown: ") + e.what()};
    } catch (const Json::exception& e) {
        return {1, "", std::string("error: malformed document: ") + e.what()};
    } catch (const std::exception& e) {
        return {2, "", std::string("internal error: ") + e.what()};
    }
}

} // namespace diagcert::cli
