#include "diagcert/linalg.hpp"

namespace diagcert {

namespace {

// Euclidean elimination on the block rows[t..] x cols[t..]; pivots land on (rows[t], cols[t]).
void eliminate(CertificateBuilder& b, const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols)
{
    std::size_t k = std::min(rows.size(), cols.size());
    for (std::size_t t = 0; t < k; ++t) {
        for (;;) {
            const Matrix& a = b.current();
            std::optional<std::pair<std::size_t, std::size_t>> best;
            mpz_class best_size;
            for (std::size_t i = t; i < rows.size(); ++i)
                for (std::size_t j = t; j < cols.size(); ++j) {
                    const Poly& e = a.at(rows[i], cols[j]);
                    if (e.is_zero())
                        continue;
                    mpz_class s = euclidean_size(e);
                    if (!best || s < best_size) {
                        best = {i, j};
                        best_size = s;
                    }
                }
            if (!best)
                return;
            if (best->first != t)
                b.apply(ElementaryOp::swap(Side::Row, rows[t], rows[best->first]));
            if (best->second != t)
                b.apply(ElementaryOp::swap(Side::Column, cols[t], cols[best->second]));
            std::size_t pr = rows[t], pc = cols[t];
            bool clean = true;
            for (std::size_t i = t + 1; i < rows.size(); ++i) {
                const Poly& e = b.current().at(rows[i], pc);
                if (e.is_zero())
                    continue;
                Poly q = euclidean_divide(e, b.current().at(pr, pc)).first;
                if (!q.is_zero())
                    b.apply(ElementaryOp::add(Side::Row, rows[i], pr, -q));
                if (!b.current().at(rows[i], pc).is_zero())
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols.size(); ++j) {
                const Poly& e = b.current().at(pr, cols[j]);
                if (e.is_zero())
                    continue;
                Poly q = euclidean_divide(e, b.current().at(pr, pc)).first;
                if (!q.is_zero())
                    b.apply(ElementaryOp::add(Side::Column, cols[j], pc, -q));
                if (!b.current().at(pr, cols[j]).is_zero())
                    clean = false;
            }
            if (clean)
                break;
        }
    }
}

} // namespace

SmithForm smith_normal_form(const Matrix& m)
{
    const Ring& R = m.ring();
    if (!R.is_euclidean())
        throw NotEuclidean(R.describe());
    CertificateBuilder b(m);
    std::vector<std::size_t> rows, cols;
    for (std::size_t i = 0; i < m.rows(); ++i)
        rows.push_back(i);
    for (std::size_t j = 0; j < m.cols(); ++j)
        cols.push_back(j);
    eliminate(b, rows, cols);

    // gcd trick on diagonal pairs: diag(a, b) -> diag(gcd, lcm) up to units
    std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = i + 1; j < k; ++j) {
            const Poly& a = b.current().at(i, i);
            const Poly& c = b.current().at(j, j);
            if (a.is_zero() || c.is_zero() || divides(a, c))
                continue;
            b.apply(ElementaryOp::add(Side::Row, i, j, Poly::constant(R, 1)));
            eliminate(b, {i, j}, {i, j});
        }

    for (std::size_t i = 0; i < k; ++i) {
        const Poly& d = b.current().at(i, i);
        if (d.is_zero())
            continue;
        Associate as = canonical_associate(d);
        if (as.unit != 1)
            b.apply(ElementaryOp::scale(Side::Row, i, Poly::constant(R, R.cinv(as.unit))));
    }

    SmithForm out{b.certificate(), b.current().diagonal_entries()};
    if (!out.certificate.target.is_diagonal())
        throw InternalError("Smith form target is not diagonal");
    for (std::size_t i = 0; i + 1 < out.invariants.size(); ++i)
        if (out.invariants[i].is_zero() ? !out.invariants[i + 1].is_zero()
                                        : !divides(out.invariants[i], out.invariants[i + 1]))
            throw InternalError("Smith form divisibility chain broken");
    auto v = verify_certificate(out.certificate);
    if (!v.valid)
        throw InternalError("Smith form certificate rejected: " + v.reason);
    return out;
}

} // namespace diagcert
