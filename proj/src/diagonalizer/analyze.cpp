#include "diagcert/diagonalizer.hpp"

namespace diagcert {

namespace {

std::string diag_text(const std::vector<Poly>& d)
{
    std::string s = "diag(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? ", " : "") + d[i].to_string();
    return s + ")";
}

} // namespace

DiagnosisReport analyze(const Matrix& m, const Bounds& bounds, const Claims& claims)
{
    if (!m.is_square())
        throw UsageError("analyze needs a square matrix");
    DiagnosisReport r{m, determinant(m), std::nullopt, false, false, false, std::nullopt, std::nullopt,
                      std::nullopt, std::nullopt, {}, {}, Verdict::Unknown};
    const Ring& R = m.ring();
    std::size_t n = m.rows();
    r.full_rank = !r.det.is_zero();
    if (!r.full_rank) {
        r.degenerate = true;
        r.notes.push_back("determinant is zero: the input is outside the full-rank hypothesis and is refused");
        return r;
    }
    FPModule M = FPModule::from_matrix(m);
    if (is_unit(r.det)) {
        r.degenerate = true;
        r.pd_one = true;
        r.notes.push_back("determinant is a unit: coker(m) = 0 and m is equivalent to the identity");
        r.diagonal = diagonalize(m, bounds);
        r.filtration_condition = Verdict::Yes;
        return r;
    }
    r.factorization = factor(r.det);
    FreeResolution res = free_resolution(M, 1);
    r.pd_one = res.terminated && res.maps.size() == 1;
    r.qg = is_quasi_gorenstein(m, bounds);
    r.filtration = search_minimal_cyclic_filtration(M, bounds);
    r.diagonal = diagonalize(m, bounds);
    if (!r.factorization->complete)
        r.notes.push_back("factorization of det is not certified complete");

    const auto& dr = *r.diagonal;
    if (dr.verdict == Verdict::Yes) {
        const EquivalenceCertificate& cert = *dr.certificate;
        std::vector<Poly> lambdas = cert.target.diagonal_entries();

        EquivalenceCertificate tc = transpose_certificate_from_diagonal(cert);
        bool t_ok = verify_certificate(tc).valid;
        r.findings.push_back({"diagonal form => m ~ m^T, from P m Q = D", t_ok,
                              t_ok ? "transpose certificate verified" : "transpose certificate failed"});
        if (t_ok && (r.qg->verdict != Verdict::Yes || !r.qg->certificate)) {
            if (r.qg->verdict != Verdict::Yes)
                r.notes.push_back("quasi-Gorenstein verdict upgraded from " + to_string(r.qg->verdict) +
                                  " by the transpose certificate derived from the diagonal form");
            r.qg->verdict = Verdict::Yes;
            r.qg->certificate = tc;
            r.qg->certificate_kind = "decomposition";
        }

        bool same_fitting = true;
        for (std::size_t k = 0; k <= n; ++k)
            same_fitting = same_fitting && fitting_ideal(m, k) == fitting_ideal(cert.target, k);
        r.findings.push_back({"diagonal form => M is the sum of the R/(lambda_i), lambda = " + diag_text(lambdas),
                              same_fitting, same_fitting ? "Fitting ideals of m and D agree for every k"
                                                         : "Fitting ideals of m and D differ"});

        CyclicFiltration f = filtration_from_decomposition(R, lambdas);
        AnnihilatorSample own = sample_lattice(f.module, bounds);
        FiltrationCheck fc = verify_filtration(f, &own);
        r.findings.push_back({"direct sum => minimal cyclic filtration, peeled from the decomposition", fc.valid,
                              fc.valid ? "length " + std::to_string(f.steps.size()) + " chain verified" : fc.reason});
        if (fc.valid) {
            r.decomposition_filtration = f;
            r.filtration_condition = Verdict::Yes;
        }
        if (!r.filtration->filtration)
            r.notes.push_back("the bounded search found no chain under the strict reading (" + r.filtration->reading +
                              "); the decomposition supplies one");
        for (const auto& l : lambdas)
            if (is_unit(l)) {
                r.notes.push_back("D has unit entries, i.e. zero summands R/(unit)");
                break;
            }
        if (!t_ok || !same_fitting || !fc.valid)
            r.notes.push_back("discrepancy: an implication from a verified diagonal form failed");
    } else if (dr.verdict == Verdict::No) {
        if (r.qg->verdict == Verdict::Yes && r.filtration->filtration)
            r.notes.push_back("discrepancy: m is certified non-diagonalizable, yet it is quasi-Gorenstein and a "
                              "minimal cyclic filtration was found");
        else if (r.qg->verdict == Verdict::Yes)
            r.findings.push_back({"not diagonalizable while m ~ m^T, so no admissible filtration may exist", true,
                                  r.filtration->filtration ? "a filtration was found" : "no admissible filtration found within bounds"});
        else
            r.findings.push_back({"not diagonalizable", true, "quasi-Gorenstein verdict " + to_string(r.qg->verdict)});
    }
    if (r.qg->verdict == Verdict::No && dr.verdict == Verdict::Yes)
        r.notes.push_back("discrepancy: diagonalizable but not quasi-Gorenstein");
    if (r.qg->verdict == Verdict::No)
        r.findings.push_back({"m not equivalent to m^T => not diagonalizable", dr.verdict != Verdict::Yes, "diagonalize " + to_string(dr.verdict)});

    if (claims.diagonalizable && dr.verdict != Verdict::Unknown &&
        *claims.diagonalizable != (dr.verdict == Verdict::Yes)) {
        std::string what = dr.verdict == Verdict::Yes
                               ? "the verified certificate P m Q = " + diag_text(dr.certificate->target.diagonal_entries())
                               : "the re-verified Fitting obstruction";
        r.notes.push_back(std::string("discrepancy: the accompanying claim says m is ") +
                          (*claims.diagonalizable ? "" : "not ") + "equivalent to a diagonal matrix; " + what +
                          " shows otherwise");
    }
    bool t_decided = (r.qg->verdict == Verdict::Yes && r.qg->certificate) || r.qg->verdict == Verdict::No;
    if (claims.transpose_equivalent && t_decided && *claims.transpose_equivalent != (r.qg->verdict == Verdict::Yes))
        r.notes.push_back(std::string("discrepancy: the accompanying claim says m is ") +
                          (*claims.transpose_equivalent ? "" : "not ") + "equivalent to its transpose; the " +
                          (r.qg->certificate ? "verified certificate P m Q = m^T" : "computed obstruction") +
                          " shows otherwise");
    return r;
}

} // namespace diagcert
