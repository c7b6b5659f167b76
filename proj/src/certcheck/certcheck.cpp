#include "diagcert/certcheck.hpp"

namespace diagcert::certcheck {

namespace {

bool rectangular(const Grid& g, std::size_t& rows, std::size_t& cols)
{
    rows = g.size();
    cols = rows ? g[0].size() : 0;
    for (const auto& r : g)
        if (r.size() != cols)
            return false;
    return true;
}

std::string dims(std::size_t r, std::size_t c)
{
    return std::to_string(r) + "x" + std::to_string(c);
}

} // namespace

Grid multiply(const Ring& ring, const Grid& a, const Grid& b)
{
    std::size_t n = a.size(), k = a.empty() ? 0 : a[0].size(), m = b.empty() ? 0 : b[0].size();
    Grid out(n, std::vector<Poly>(m, Poly(ring)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Poly s(ring);
            for (std::size_t t = 0; t < k; ++t)
                s = s + a[i][t] * b[t][j];
            out[i][j] = s;
        }
    return out;
}

Poly laplace_determinant(const Ring& ring, const Grid& a)
{
    std::size_t n = a.size();
    if (n == 0)
        return Poly::constant(ring, 1);
    if (n == 1)
        return a[0][0];
    Poly det(ring);
    for (std::size_t j = 0; j < n; ++j) {
        if (a[0][j].is_zero())
            continue;
        Grid minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<Poly> row;
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    row.push_back(a[i][c]);
            minor.push_back(std::move(row));
        }
        Poly term = a[0][j] * laplace_determinant(ring, minor);
        det = (j % 2 == 0) ? det + term : det - term;
    }
    return det;
}

std::optional<std::string> check_equivalence(const Ring& ring, const Grid& source, const Grid& left,
                                             const Grid& right, const Grid& target)
{
    std::size_t sr, sc, lr, lc, rr, rc, tr, tc;
    if (!rectangular(source, sr, sc) || !rectangular(left, lr, lc) || !rectangular(right, rr, rc)
        || !rectangular(target, tr, tc))
        return std::string("ragged matrix");
    if (lr != sr || lc != sr)
        return "left transform is " + dims(lr, lc) + ", expected " + dims(sr, sr);
    if (rr != sc || rc != sc)
        return "right transform is " + dims(rr, rc) + ", expected " + dims(sc, sc);
    if (tr != sr || tc != sc)
        return "target is " + dims(tr, tc) + ", expected " + dims(sr, sc);
    for (const Grid* g : {&source, &left, &right, &target})
        for (const auto& row : *g)
            for (const auto& e : row)
                if (e.ring() != ring)
                    return std::string("entry over a different ring");

    Poly dl = laplace_determinant(ring, left);
    if (!dl.is_constant() || dl.is_zero() || !ring.cis_unit(dl.leading_coeff()))
        return "det(left) = " + dl.to_string() + " is not a unit";
    Poly dr = laplace_determinant(ring, right);
    if (!dr.is_constant() || dr.is_zero() || !ring.cis_unit(dr.leading_coeff()))
        return "det(right) = " + dr.to_string() + " is not a unit";

    Grid prod = multiply(ring, multiply(ring, left, source), right);
    for (std::size_t i = 0; i < tr; ++i)
        for (std::size_t j = 0; j < tc; ++j)
            if (prod[i][j] != target[i][j])
                return "entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") of left*source*right is "
                       + prod[i][j].to_string() + ", target has " + target[i][j].to_string();
    return std::nullopt;
}

} // namespace diagcert::certcheck
