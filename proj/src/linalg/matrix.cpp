#include "diagcert/linalg.hpp"

#include "diagcert/certcheck.hpp"

namespace diagcert {

Matrix::Matrix(Ring ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, Poly(ring_))
{
}

Matrix Matrix::identity(const Ring& ring, std::size_t n)
{
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i)
        m.at(i, i) = Poly::constant(ring, 1);
    return m;
}

Matrix Matrix::diagonal(const Ring& ring, const std::vector<Poly>& entries)
{
    Matrix m(ring, entries.size(), entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.at(i, i) = entries[i];
    return m;
}

Matrix Matrix::from_rows(const Ring& ring, const std::vector<std::vector<Poly>>& rows)
{
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c)
            throw UsageError("ragged matrix: row " + std::to_string(i + 1) + " has " + std::to_string(rows[i].size())
                             + " entries, expected " + std::to_string(c));
        for (std::size_t j = 0; j < c; ++j) {
            if (rows[i][j].ring() != ring)
                throw UsageError("matrix entry over the wrong ring");
            m.at(i, j) = rows[i][j];
        }
    }
    return m;
}

Matrix Matrix::parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows)
{
    std::vector<std::vector<Poly>> ps;
    for (const auto& r : rows) {
        std::vector<Poly> row;
        for (const auto& s : r)
            row.push_back(Poly::parse(ring, s));
        ps.push_back(std::move(row));
    }
    return from_rows(ring, ps);
}

Matrix Matrix::from_columns(const Ring& ring, std::size_t rows, const std::vector<FreeVector>& cols)
{
    Matrix m(ring, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].size() != rows)
            throw UsageError("column length mismatch");
        for (std::size_t i = 0; i < rows; ++i)
            m.at(i, j) = cols[j][i];
    }
    return m;
}

FreeVector Matrix::column(std::size_t j) const
{
    FreeVector v;
    for (std::size_t i = 0; i < rows_; ++i)
        v.push_back(at(i, j));
    return v;
}

std::vector<FreeVector> Matrix::columns() const
{
    std::vector<FreeVector> out;
    for (std::size_t j = 0; j < cols_; ++j)
        out.push_back(column(j));
    return out;
}

std::vector<Poly> Matrix::row(std::size_t i) const
{
    std::vector<Poly> r;
    for (std::size_t j = 0; j < cols_; ++j)
        r.push_back(at(i, j));
    return r;
}

Matrix Matrix::submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const
{
    Matrix m(ring_, rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = 0; j < cs.size(); ++j)
            m.at(i, j) = at(rs[i], cs[j]);
    return m;
}

Matrix Matrix::transpose() const
{
    Matrix m(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m.at(j, i) = at(i, j);
    return m;
}

bool Matrix::is_diagonal() const
{
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && !at(i, j).is_zero())
                return false;
    return true;
}

bool Matrix::is_identity() const
{
    if (!is_square() || !is_diagonal())
        return false;
    for (std::size_t i = 0; i < rows_; ++i)
        if (!at(i, i).is_one())
            return false;
    return true;
}

bool Matrix::is_zero() const
{
    for (const auto& p : data_)
        if (!p.is_zero())
            return false;
    return true;
}

std::vector<Poly> Matrix::diagonal_entries() const
{
    std::vector<Poly> d;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
        d.push_back(at(i, i));
    return d;
}

Matrix Matrix::operator*(const Matrix& o) const
{
    if (cols_ != o.rows_)
        throw UsageError("dimension mismatch in matrix product");
    if (ring_ != o.ring_)
        throw UsageError("ring mismatch in matrix product");
    Matrix m(ring_, rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Poly& a = at(i, k);
            if (a.is_zero())
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                if (!o.at(k, j).is_zero())
                    m.at(i, j) += a * o.at(k, j);
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const
{
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw UsageError("dimension mismatch in matrix sum");
    Matrix m = *this;
    for (std::size_t i = 0; i < data_.size(); ++i)
        m.data_[i] += o.data_[i];
    return m;
}

bool Matrix::operator==(const Matrix& o) const
{
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

std::vector<std::vector<std::string>> Matrix::to_strings() const
{
    std::vector<std::vector<std::string>> out;
    for (std::size_t i = 0; i < rows_; ++i) {
        std::vector<std::string> r;
        for (std::size_t j = 0; j < cols_; ++j)
            r.push_back(at(i, j).to_string());
        out.push_back(std::move(r));
    }
    return out;
}

std::string Matrix::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j)
                s += ", ";
            s += at(i, j).to_string();
        }
        s += "]";
    }
    return s + "]";
}

namespace {

Poly cofactor_determinant(const Matrix& m)
{
    std::size_t n = m.rows();
    if (n == 0)
        return Poly::constant(m.ring(), 1);
    if (n == 1)
        return m.at(0, 0);
    Poly det(m.ring());
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::size_t> rs, cs;
        for (std::size_t i = 1; i < n; ++i)
            rs.push_back(i);
        for (std::size_t c = 0; c < n; ++c)
            if (c != j)
                cs.push_back(c);
        Poly t = m.at(0, j) * cofactor_determinant(m.submatrix(rs, cs));
        det = (j % 2 == 0) ? det + t : det - t;
    }
    return det;
}

Poly bareiss(Matrix a)
{
    std::size_t n = a.rows();
    const Ring& R = a.ring();
    if (n == 0)
        return Poly::constant(R, 1);
    bool negate = false;
    Poly prev = Poly::constant(R, 1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k).is_zero()) {
            std::size_t p = k + 1;
            while (p < n && a.at(p, k).is_zero())
                ++p;
            if (p == n)
                return Poly(R);
            for (std::size_t j = 0; j < n; ++j)
                std::swap(a.at(k, j), a.at(p, j));
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Poly num = a.at(k, k) * a.at(i, j) - a.at(i, k) * a.at(k, j);
                auto q = exact_divide(num, prev);
                if (!q)
                    throw InternalError("inexact division in fraction-free elimination");
                a.at(i, j) = std::move(*q);
            }
            a.at(i, k) = Poly(R);
        }
        prev = a.at(k, k);
    }
    Poly d = a.at(n - 1, n - 1);
    return negate ? -d : d;
}

} // namespace

Poly determinant(const Matrix& m)
{
    if (!m.is_square())
        throw UsageError("determinant of a non-square matrix");
    Poly d = bareiss(m);
    if (m.rows() <= 3 && d != cofactor_determinant(m))
        throw InternalError("fraction-free determinant disagrees with cofactor expansion");
    return d;
}

Matrix adjugate(const Matrix& m)
{
    if (!m.is_square())
        throw UsageError("adjugate of a non-square matrix");
    std::size_t n = m.rows();
    Matrix adj(m.ring(), n, n);
    if (n == 1) {
        adj.at(0, 0) = Poly::constant(m.ring(), 1);
        return adj;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rs, cs;
            for (std::size_t r = 0; r < n; ++r)
                if (r != i)
                    rs.push_back(r);
            for (std::size_t c = 0; c < n; ++c)
                if (c != j)
                    cs.push_back(c);
            Poly d = determinant(m.submatrix(rs, cs));
            adj.at(j, i) = ((i + j) % 2 == 0) ? d : -d;
        }
    return adj;
}

std::optional<Matrix> inverse(const Matrix& m)
{
    Poly d = determinant(m);
    if (!is_unit(d))
        return std::nullopt;
    Coeff inv = m.ring().cinv(d.leading_coeff());
    Matrix adj = adjugate(m);
    Matrix out(m.ring(), m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out.at(i, j) = adj.at(i, j).scaled(inv);
    if (!(out * m).is_identity())
        throw InternalError("adjugate inverse check failed");
    return out;
}

std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k)
{
    std::vector<std::vector<std::size_t>> out;
    if (k > n)
        return out;
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = i;
    for (;;) {
        out.push_back(c);
        std::size_t i = k;
        while (i > 0 && c[i - 1] == n - k + i - 1)
            --i;
        if (i == 0)
            break;
        ++c[i - 1];
        for (std::size_t j = i; j < k; ++j)
            c[j] = c[j - 1] + 1;
    }
    return out;
}

std::vector<Poly> minors(const Matrix& m, std::size_t k)
{
    std::vector<Poly> out;
    if (k == 0) {
        out.push_back(Poly::constant(m.ring(), 1));
        return out;
    }
    for (const auto& rs : combinations(m.rows(), k))
        for (const auto& cs : combinations(m.cols(), k))
            out.push_back(determinant(m.submatrix(rs, cs)));
    return out;
}

IdealHandle fitting_ideal(const Matrix& m, std::size_t k)
{
    if (k > std::min(m.rows(), m.cols()))
        throw UsageError("minor size " + std::to_string(k) + " out of range for a " + std::to_string(m.rows()) + "x"
                         + std::to_string(m.cols()) + " matrix");
    if (k == 0)
        return IdealHandle::unit(m.ring());
    return IdealHandle(m.ring(), minors(m, k));
}

ElementaryOp ElementaryOp::add(Side side, std::size_t target, std::size_t source, Poly multiplier)
{
    if (target == source)
        throw UsageError("elementary addition needs distinct lines");
    return {side, OpKind::AddMultiple, target, source, std::move(multiplier)};
}

ElementaryOp ElementaryOp::swap(Side side, std::size_t a, std::size_t b)
{
    if (a == b)
        throw UsageError("swap needs distinct lines");
    // multiplier is unused for swaps; keep a ring-tagged zero out of the way
    return {side, OpKind::Swap, a, b, Poly(Ring::integers())};
}

ElementaryOp ElementaryOp::scale(Side side, std::size_t target, Poly unit)
{
    if (!is_unit(unit))
        throw UsageError("scaling by the non-unit " + unit.to_string());
    return {side, OpKind::Scale, target, target, std::move(unit)};
}

std::string ElementaryOp::to_string() const
{
    std::string l = side == Side::Row ? "R" : "C";
    std::string t = l + std::to_string(target + 1), s = l + std::to_string(source + 1);
    switch (kind) {
    case OpKind::AddMultiple:
        return t + " += (" + multiplier.to_string() + ")*" + s;
    case OpKind::Swap:
        return "swap " + t + ", " + s;
    case OpKind::Scale:
        return t + " *= " + multiplier.to_string();
    }
    return "";
}

namespace {

void check_op(const Matrix& m, const ElementaryOp& op)
{
    std::size_t n = op.side == Side::Row ? m.rows() : m.cols();
    if (op.target >= n || op.source >= n)
        throw UsageError("elementary operation index out of range: " + op.to_string());
    if (op.kind != OpKind::Swap && op.multiplier.ring() != m.ring())
        throw UsageError("elementary multiplier over the wrong ring");
    if (op.kind == OpKind::Scale && !is_unit(op.multiplier))
        throw UsageError("scaling by the non-unit " + op.multiplier.to_string());
}

} // namespace

Matrix apply_elementary(const Matrix& m, const ElementaryOp& op)
{
    check_op(m, op);
    Matrix r = m;
    bool row = op.side == Side::Row;
    std::size_t len = row ? m.cols() : m.rows();
    auto cell = [&](Matrix& x, std::size_t line, std::size_t k) -> Poly& {
        return row ? x.at(line, k) : x.at(k, line);
    };
    for (std::size_t k = 0; k < len; ++k) {
        switch (op.kind) {
        case OpKind::AddMultiple:
            if (!cell(r, op.source, k).is_zero())
                cell(r, op.target, k) += op.multiplier * cell(r, op.source, k);
            break;
        case OpKind::Swap:
            std::swap(cell(r, op.target, k), cell(r, op.source, k));
            break;
        case OpKind::Scale:
            cell(r, op.target, k) = cell(r, op.target, k) * op.multiplier;
            break;
        }
    }
    return r;
}

Matrix elementary_matrix(const Ring& ring, std::size_t n, const ElementaryOp& op)
{
    // E*I = E for rows, I*E = E for columns
    return apply_elementary(Matrix::identity(ring, n), op);
}

CertificateBuilder::CertificateBuilder(const Matrix& m)
    : cert_{m, Matrix::identity(m.ring(), m.rows()), Matrix::identity(m.ring(), m.cols()), m, {}}
{
}

void CertificateBuilder::apply(const ElementaryOp& op)
{
    cert_.target = apply_elementary(cert_.target, op);
    if (op.side == Side::Row)
        cert_.left = apply_elementary(cert_.left, op);
    else
        cert_.right = apply_elementary(cert_.right, op);
    cert_.transcript.push_back(op);
}

Verification verify_certificate(const EquivalenceCertificate& cert)
{
    auto grid = [](const Matrix& m) {
        certcheck::Grid g;
        for (std::size_t i = 0; i < m.rows(); ++i)
            g.push_back(m.row(i));
        return g;
    };
    const Ring& R = cert.source.ring();
    for (const Matrix* m : {&cert.left, &cert.right, &cert.target})
        if (m->ring() != R)
            return {false, "matrices over different rings"};
    auto failure = certcheck::check_equivalence(R, grid(cert.source), grid(cert.left), grid(cert.right),
                                                grid(cert.target));
    if (failure)
        return {false, *failure};
    return {true, ""};
}

} // namespace diagcert
