#include "diagcert/io.hpp"

#include <set>

namespace diagcert::io {

namespace {

void only_keys(const Json& j, const std::set<std::string>& allowed, const std::string& where)
{
    if (!j.is_object())
        throw UsageError(where + ": expected an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!allowed.count(it.key()))
            throw UsageError(where + ": unknown field \"" + it.key() + "\"");
}

const Json& field(const Json& j, const char* key, const std::string& where)
{
    auto it = j.find(key);
    if (it == j.end())
        throw UsageError(where + ": missing field \"" + key + "\"");
    return *it;
}

Poly poly_from(const Ring& ring, const Json& j, const std::string& where)
{
    if (!j.is_string())
        throw UsageError(where + ": expected a polynomial string");
    try {
        return Poly::parse(ring, j.get<std::string>());
    } catch (const ParseError& e) {
        throw UsageError(where + ": " + e.what());
    }
}

std::size_t index_from(const Json& j, const std::string& where)
{
    if (!j.is_number_unsigned())
        throw UsageError(where + ": expected a non-negative index");
    return j.get<std::size_t>();
}

Json vector_json(const FreeVector& v) { return poly_list(v); }

Json vectors_json(const std::vector<FreeVector>& vs)
{
    Json out = Json::array();
    for (const auto& v : vs)
        out.push_back(vector_json(v));
    return out;
}

FPModule module_from_json(const Ring& ring, const Json& j)
{
    only_keys(j, {"generators", "relations"}, "module");
    std::size_t g = index_from(field(j, "generators", "module"), "module.generators");
    std::vector<FreeVector> rels;
    const Json& rs = field(j, "relations", "module");
    if (!rs.is_array())
        throw UsageError("module.relations: expected a list of columns");
    for (std::size_t r = 0; r < rs.size(); ++r) {
        std::string where = "module.relations[" + std::to_string(r) + "]";
        if (!rs[r].is_array() || rs[r].size() != g)
            throw UsageError(where + ": expected " + std::to_string(g) + " entries");
        FreeVector v;
        for (std::size_t i = 0; i < g; ++i)
            v.push_back(poly_from(ring, rs[r][i], where + "[" + std::to_string(i) + "]"));
        rels.push_back(std::move(v));
    }
    return FPModule(ring, g, std::move(rels));
}

std::string verdict_text(const FiltrationSearch& s)
{
    if (s.filtration)
        return "Found";
    return s.budget_exhausted ? "BudgetExhausted" : "NoneWithinBounds";
}

} // namespace

Json ring_to_json(const Ring& ring)
{
    if (ring.is_integers())
        return Json{{"kind", "integers"}};
    Json j{{"kind", "polynomial"}, {"variables", ring.variables()},
           {"order", ring.order() == MonomialOrder::Lex ? "lex" : "grevlex"}};
    switch (ring.coeff_domain()) {
    case CoeffDomain::Integers:
        j["coefficients"] = "integers";
        break;
    case CoeffDomain::Rationals:
        j["coefficients"] = "rationals";
        break;
    case CoeffDomain::PrimeField:
        j["coefficients"] = "prime_field";
        j["modulus"] = ring.modulus().get_ui();
        break;
    }
    return j;
}

Ring ring_from_json(const Json& j)
{
    only_keys(j, {"kind", "coefficients", "variables", "order", "modulus"}, "ring");
    std::string kind = field(j, "kind", "ring").get<std::string>();
    if (kind == "integers") {
        if (j.size() != 1)
            throw UsageError("ring: the integers take no further fields");
        return Ring::integers();
    }
    if (kind != "polynomial")
        throw UsageError("ring.kind: expected \"integers\" or \"polynomial\"");
    std::string c = field(j, "coefficients", "ring").get<std::string>();
    CoeffDomain d;
    if (c == "integers")
        d = CoeffDomain::Integers;
    else if (c == "rationals")
        d = CoeffDomain::Rationals;
    else if (c == "prime_field")
        d = CoeffDomain::PrimeField;
    else
        throw UsageError("ring.coefficients: expected integers, rationals or prime_field");
    auto vars = field(j, "variables", "ring").get<std::vector<std::string>>();
    MonomialOrder order = MonomialOrder::GRevLex;
    if (j.contains("order")) {
        std::string o = j["order"].get<std::string>();
        if (o == "lex")
            order = MonomialOrder::Lex;
        else if (o != "grevlex")
            throw UsageError("ring.order: expected lex or grevlex");
    }
    unsigned long p = 0;
    if (d == CoeffDomain::PrimeField)
        p = field(j, "modulus", "ring").get<unsigned long>();
    else if (j.contains("modulus"))
        throw UsageError("ring.modulus: only prime fields take a modulus");
    return Ring::polynomial(d, vars, order, p);
}

Json poly_list(const std::vector<Poly>& ps)
{
    Json out = Json::array();
    for (const auto& p : ps)
        out.push_back(p.to_string());
    return out;
}

Json matrix_rows(const Matrix& m) { return m.to_strings(); }

Matrix matrix_from_rows(const Ring& ring, const Json& rows, const std::string& where)
{
    if (!rows.is_array() || rows.empty())
        throw UsageError(where + ": expected a nonempty list of rows");
    std::size_t c = rows[0].is_array() ? rows[0].size() : 0;
    Matrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!rows[i].is_array() || rows[i].size() != c)
            throw UsageError(where + ": row " + std::to_string(i) + " does not have " + std::to_string(c) + " entries");
        for (std::size_t k = 0; k < c; ++k)
            m.at(i, k) = poly_from(ring, rows[i][k], where + "[" + std::to_string(i) + "][" + std::to_string(k) + "]");
    }
    return m;
}

Json op_to_json(const ElementaryOp& op)
{
    Json j{{"side", op.side == Side::Row ? "row" : "column"}, {"target", op.target}, {"source", op.source}};
    switch (op.kind) {
    case OpKind::AddMultiple:
        j["kind"] = "add";
        j["multiplier"] = op.multiplier.to_string();
        break;
    case OpKind::Swap:
        j["kind"] = "swap";
        break;
    case OpKind::Scale:
        j["kind"] = "scale";
        j["multiplier"] = op.multiplier.to_string();
        break;
    }
    return j;
}

ElementaryOp op_from_json(const Ring& ring, const Json& j)
{
    only_keys(j, {"side", "kind", "target", "source", "multiplier"}, "transcript entry");
    std::string side = field(j, "side", "transcript entry").get<std::string>();
    if (side != "row" && side != "column")
        throw UsageError("transcript entry: side must be row or column");
    Side s = side == "row" ? Side::Row : Side::Column;
    std::string kind = field(j, "kind", "transcript entry").get<std::string>();
    std::size_t t = index_from(field(j, "target", "transcript entry"), "transcript entry.target");
    if (kind == "add")
        return ElementaryOp::add(s, t, index_from(field(j, "source", "transcript entry"), "transcript entry.source"),
                                 poly_from(ring, field(j, "multiplier", "transcript entry"), "transcript entry"));
    if (kind == "swap")
        return ElementaryOp::swap(s, t, index_from(field(j, "source", "transcript entry"), "transcript entry.source"));
    if (kind == "scale")
        return ElementaryOp::scale(s, t, poly_from(ring, field(j, "multiplier", "transcript entry"), "transcript entry"));
    throw UsageError("transcript entry: kind must be add, swap or scale");
}

Json certificate_to_json(const EquivalenceCertificate& cert)
{
    Json ops = Json::array();
    for (const auto& op : cert.transcript)
        ops.push_back(op_to_json(op));
    Verification v = verify_certificate(cert);
    Json j{{"source", matrix_rows(cert.source)},
           {"left", matrix_rows(cert.left)},
           {"right", matrix_rows(cert.right)},
           {"target", matrix_rows(cert.target)},
           {"transcript", ops},
           {"verified", v.valid}};
    if (!v.valid)
        j["reason"] = v.reason;
    return j;
}

EquivalenceCertificate certificate_from_json(const Ring& ring, const Json& j)
{
    only_keys(j, {"source", "left", "right", "target", "transcript", "verified", "reason"}, "certificate");
    EquivalenceCertificate c{matrix_from_rows(ring, field(j, "source", "certificate"), "certificate.source"),
                             matrix_from_rows(ring, field(j, "left", "certificate"), "certificate.left"),
                             matrix_from_rows(ring, field(j, "right", "certificate"), "certificate.right"),
                             matrix_from_rows(ring, field(j, "target", "certificate"), "certificate.target"),
                             {}};
    if (j.contains("transcript"))
        for (const auto& op : j["transcript"])
            c.transcript.push_back(op_from_json(ring, op));
    return c;
}

Json ideal_to_json(const IdealHandle& ideal) { return poly_list(ideal.basis()); }

Json module_to_json(const FPModule& m)
{
    return Json{{"generators", m.generators()}, {"relations", vectors_json(m.relations())}};
}

Json factorization_to_json(const Factorization& f)
{
    Json fs = Json::array();
    for (const auto& [p, e] : f.factors)
        fs.push_back(Json{{"prime", p.to_string()}, {"multiplicity", e}});
    return Json{{"unit", f.unit.get_str()}, {"factors", fs}, {"complete", f.complete}};
}

Json smith_to_json(const SmithForm& s)
{
    return Json{{"invariants", poly_list(s.invariants)}, {"certificate", certificate_to_json(s.certificate)}};
}

Json obstruction_to_json(const ObstructionRecord& o, const Matrix& m)
{
    Json cands = Json::array();
    for (const auto& c : o.candidates) {
        Json cj{{"diagonal", poly_list(c.diagonal)},
                {"k", c.k},
                {"ideal_m", poly_list(c.ideal_m)},
                {"ideal_candidate", poly_list(c.ideal_candidate)},
                {"witness_in_m", c.witness_in_m}};
        if (c.witness)
            cj["witness"] = c.witness->to_string();
        cands.push_back(cj);
    }
    return Json{{"det", o.det.to_string()},
                {"factorization", factorization_to_json(o.factorization)},
                {"candidates", cands},
                {"verified", reverify(o, m)}};
}

Json diagonalize_to_json(const DiagonalizeResult& r, const Matrix& m)
{
    Json j{{"verdict", to_string(r.verdict)}, {"method", r.method}, {"nodes", r.nodes}, {"note", r.note}};
    if (r.certificate)
        j["certificate"] = certificate_to_json(*r.certificate);
    if (r.obstruction)
        j["obstruction"] = obstruction_to_json(*r.obstruction, m);
    return j;
}

Json iso_to_json(const IsoResult& r, const FPModule& a, const FPModule& b)
{
    Json j{{"verdict", to_string(r.verdict)}, {"candidates_tried", r.candidates_tried}, {"note", r.note}};
    if (r.forward && r.backward) {
        j["forward"] = matrix_rows(r.forward->phi);
        j["backward"] = matrix_rows(r.backward->phi);
        j["verified"] = verify_isomorphism(*r.forward, *r.backward);
    }
    if (r.obstruction) {
        const auto& o = *r.obstruction;
        Json oj{{"kind", to_string(o.kind)},
                {"index", o.index},
                {"left", poly_list(o.left)},
                {"right", poly_list(o.right)},
                {"witness_in_left", o.witness_in_left},
                {"description", o.description}};
        if (o.witness)
            oj["witness"] = o.witness->to_string();
        if (o.probe)
            oj["probe"] = o.probe->to_string(a.ring());
        j["obstruction"] = oj;
        j["verified"] = reverify(o, a, b);
    }
    return j;
}

Json qg_to_json(const QGResult& r, const Matrix& m)
{
    Json j{{"verdict", to_string(r.verdict)},
           {"certificate_kind", r.certificate_kind},
           {"grade_one", r.grade_one},
           {"pd_one", r.pd_one},
           {"note", r.note}};
    if (r.certificate)
        j["certificate"] = certificate_to_json(*r.certificate);
    if (r.iso)
        j["isomorphism"] = iso_to_json(*r.iso, FPModule::from_matrix(m), FPModule::from_matrix(m.transpose()));
    return j;
}

Json filtration_to_json(const CyclicFiltration& f, const AnnihilatorSample* lattice)
{
    Json steps = Json::array();
    for (const auto& s : f.steps)
        steps.push_back(Json{{"generator", vector_json(s.generator)},
                             {"ideal", ideal_to_json(s.ideal)},
                             {"evidence", s.evidence}});
    FiltrationCheck c = verify_filtration(f, lattice);
    Json j{{"steps", steps}, {"length", f.steps.size()}, {"reading", f.reading}, {"verified", c.valid}};
    if (!c.valid)
        j["reason"] = c.reason;
    return j;
}

Json filtration_search_to_json(const FiltrationSearch& s)
{
    Json lattice = Json::array();
    for (const auto& e : s.lattice.entries)
        lattice.push_back(Json{{"element", vector_json(e.element)}, {"annihilator", ideal_to_json(e.annihilator)}});
    Json rejected = Json::array();
    for (const auto& r : s.rejected) {
        Json rj{{"prefix", vectors_json(r.prefix)},
                {"element", vector_json(r.element)},
                {"ideal", ideal_to_json(r.ideal)},
                {"reason", r.reason},
                {"remaining_cyclic", r.remaining_cyclic}};
        if (r.remaining)
            rj["remaining"] = ideal_to_json(*r.remaining);
        rejected.push_back(rj);
    }
    Json j{{"verdict", verdict_text(s)},
           {"lattice", lattice},
           {"elements_sampled", s.lattice.elements_tried},
           {"rejected", rejected},
           {"nodes", s.nodes},
           {"budget_exhausted", s.budget_exhausted},
           {"reading", s.reading}};
    if (s.filtration)
        j["filtration"] = filtration_to_json(*s.filtration, &s.lattice);
    return j;
}

Json report_to_json(const DiagnosisReport& r)
{
    Json j{{"ring", ring_to_json(r.matrix.ring())},
           {"matrix", matrix_rows(r.matrix)},
           {"det", r.det.to_string()},
           {"full_rank", r.full_rank},
           {"degenerate", r.degenerate},
           {"pd_one", r.pd_one},
           {"filtration_condition", to_string(r.filtration_condition)},
           {"notes", r.notes}};
    if (r.factorization)
        j["factorization"] = factorization_to_json(*r.factorization);
    if (r.qg)
        j["quasi_gorenstein"] = qg_to_json(*r.qg, r.matrix);
    if (r.filtration)
        j["filtration"] = filtration_search_to_json(*r.filtration);
    if (r.decomposition_filtration)
        j["decomposition_filtration"] = filtration_to_json(*r.decomposition_filtration, nullptr);
    if (r.diagonal)
        j["diagonalizable"] = diagonalize_to_json(*r.diagonal, r.matrix);
    Json fs = Json::array();
    for (const auto& f : r.findings)
        fs.push_back(Json{{"implication", f.implication}, {"holds", f.holds}, {"detail", f.detail}});
    j["findings"] = fs;
    return j;
}

Document parse_document(const std::string& text)
{
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte);
    }
    only_keys(j, {"schema", "ring", "matrix", "module", "certificate", "claims", "description"}, "document");
    const Json& schema = field(j, "schema", "document");
    if (!schema.is_string() || schema.get<std::string>() != kSchema)
        throw UsageError(std::string("document: schema must be \"") + kSchema + "\"");
    try {
        Document d{ring_from_json(field(j, "ring", "document")), std::nullopt, std::nullopt, std::nullopt, {}};
        int bodies = 0;
        if (j.contains("matrix")) {
            d.matrix = matrix_from_rows(d.ring, j["matrix"], "matrix");
            ++bodies;
        }
        if (j.contains("module")) {
            d.module = module_from_json(d.ring, j["module"]);
            ++bodies;
        }
        if (j.contains("certificate")) {
            d.certificate = j["certificate"];
            ++bodies;
        }
        if (bodies != 1)
            throw UsageError("document: exactly one of matrix, module, certificate is required");
        if (j.contains("claims")) {
            const Json& c = j["claims"];
            only_keys(c, {"diagonalizable", "transpose_equivalent"}, "claims");
            if (c.contains("diagonalizable"))
                d.claims.diagonalizable = c["diagonalizable"].get<bool>();
            if (c.contains("transpose_equivalent"))
                d.claims.transpose_equivalent = c["transpose_equivalent"].get<bool>();
        }
        return d;
    } catch (const Json::type_error& e) {
        throw UsageError(std::string("document: wrong JSON type: ") + e.what());
    }
}

Json matrix_document(const Matrix& m, const Claims& claims)
{
    Json j{{"schema", kSchema}, {"ring", ring_to_json(m.ring())}, {"matrix", matrix_rows(m)}};
    Json c = Json::object();
    if (claims.diagonalizable)
        c["diagonalizable"] = *claims.diagonalizable;
    if (claims.transpose_equivalent)
        c["transpose_equivalent"] = *claims.transpose_equivalent;
    if (!c.empty())
        j["claims"] = c;
    return j;
}

Json certificate_document(const EquivalenceCertificate& cert)
{
    Json c = certificate_to_json(cert);
    c.erase("verified");
    c.erase("reason");
    return Json{{"schema", kSchema}, {"ring", ring_to_json(cert.source.ring())}, {"certificate", c}};
}

} // namespace diagcert::io
