#ifndef DIAGCERT_DIAGONALIZER_HPP
#define DIAGCERT_DIAGONALIZER_HPP

#include <optional>
#include <string>
#include <vector>

#include "diagcert/filtration.hpp"
#include "diagcert/homalg.hpp"
#include "diagcert/linalg.hpp"

namespace diagcert {

/// One candidate diagonal and the Fitting ideal that tells it apart from m.
struct CandidateMismatch {
    std::vector<Poly> diagonal;
    std::size_t k = 0;
    std::vector<Poly> ideal_m, ideal_candidate; // reduced bases of I_k
    std::optional<Poly> witness;
    bool witness_in_m = true;
};

struct ObstructionRecord {
    Poly det;
    Factorization factorization;
    std::vector<CandidateMismatch> candidates;
};
/// Re-enumerates the candidates from the factorization and re-checks every mismatch.
bool reverify(const ObstructionRecord& o, const Matrix& m);

struct DiagonalizeResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<EquivalenceCertificate> certificate;
    std::optional<ObstructionRecord> obstruction;
    std::string method;
    std::size_t nodes = 0;
    std::string note;
};
DiagonalizeResult diagonalize(const Matrix& m, const Bounds& bounds = {});

/// From P m Q = D with D diagonal, a certificate for m ~ m^T.
EquivalenceCertificate transpose_certificate_from_diagonal(const EquivalenceCertificate& cert);

struct Finding {
    std::string implication;
    bool holds = false;
    std::string detail;
};

struct DiagnosisReport {
    Matrix matrix;
    Poly det;
    std::optional<Factorization> factorization;
    bool full_rank = false;
    bool degenerate = false;   // unit or zero determinant
    bool pd_one = false;
    std::optional<QGResult> qg;
    std::optional<FiltrationSearch> filtration;
    std::optional<CyclicFiltration> decomposition_filtration;
    std::optional<DiagonalizeResult> diagonal;
    std::vector<Finding> findings;
    std::vector<std::string> notes;
    Verdict filtration_condition = Verdict::Unknown;
};

/// Prose claims to compare against computed verdicts (e.g. from a fixture file).
struct Claims {
    std::optional<bool> diagonalizable;
    std::optional<bool> transpose_equivalent;
};

DiagnosisReport analyze(const Matrix& m, const Bounds& bounds = {}, const Claims& claims = {});

} // namespace diagcert

#endif
