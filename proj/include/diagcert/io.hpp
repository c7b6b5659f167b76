#ifndef DIAGCERT_IO_HPP
#define DIAGCERT_IO_HPP

#include <optional>
#include <string>

#include "json.hpp"

#include "diagcert/diagonalizer.hpp"

// JSON formats shared by the CLI, the fixtures and the tests. Every document
// carries "schema": "diagcert/1"; unknown fields are rejected.
namespace diagcert::io {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "diagcert/1";

Json ring_to_json(const Ring& ring);
Ring ring_from_json(const Json& j);

Json poly_list(const std::vector<Poly>& ps);
Json matrix_rows(const Matrix& m);
Matrix matrix_from_rows(const Ring& ring, const Json& rows, const std::string& where);

Json op_to_json(const ElementaryOp& op);
ElementaryOp op_from_json(const Ring& ring, const Json& j);

/// Includes "verified", filled in by verify_certificate.
Json certificate_to_json(const EquivalenceCertificate& cert);
EquivalenceCertificate certificate_from_json(const Ring& ring, const Json& j);

Json ideal_to_json(const IdealHandle& ideal);
Json module_to_json(const FPModule& m);
Json factorization_to_json(const Factorization& f);
Json smith_to_json(const SmithForm& s);
Json obstruction_to_json(const ObstructionRecord& o, const Matrix& m);
Json diagonalize_to_json(const DiagonalizeResult& r, const Matrix& m);
Json iso_to_json(const IsoResult& r, const FPModule& a, const FPModule& b);
Json qg_to_json(const QGResult& r, const Matrix& m);
Json filtration_to_json(const CyclicFiltration& f, const AnnihilatorSample* lattice);
Json filtration_search_to_json(const FiltrationSearch& s);
Json report_to_json(const DiagnosisReport& r);

/// A parsed input file: a ring plus one of a matrix, a module or a raw certificate.
struct Document {
    Ring ring;
    std::optional<Matrix> matrix;
    std::optional<FPModule> module;
    std::optional<Json> certificate;
    Claims claims;
};
Document parse_document(const std::string& text);
Json matrix_document(const Matrix& m, const Claims& claims = {});
Json certificate_document(const EquivalenceCertificate& cert);

} // namespace diagcert::io

#endif
