#ifndef DIAGCERT_LINALG_HPP
#define DIAGCERT_LINALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "diagcert/groebner.hpp"
#include "diagcert/rings.hpp"

namespace diagcert {

/// Dense matrix over a ring.
class Matrix {
public:
    Matrix(Ring ring, std::size_t rows, std::size_t cols);
    static Matrix identity(const Ring& ring, std::size_t n);
    static Matrix diagonal(const Ring& ring, const std::vector<Poly>& entries);
    static Matrix from_rows(const Ring& ring, const std::vector<std::vector<Poly>>& rows);
    static Matrix parse(const Ring& ring, const std::vector<std::vector<std::string>>& rows);
    /// Matrix whose columns are the given vectors.
    static Matrix from_columns(const Ring& ring, std::size_t rows, const std::vector<FreeVector>& cols);

    const Ring& ring() const { return ring_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Poly& at(std::size_t i, std::size_t j) { return data_.at(i * cols_ + j); }
    const Poly& at(std::size_t i, std::size_t j) const { return data_.at(i * cols_ + j); }

    FreeVector column(std::size_t j) const;
    std::vector<FreeVector> columns() const;
    std::vector<Poly> row(std::size_t i) const;
    Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
    Matrix transpose() const;
    bool is_diagonal() const;
    bool is_identity() const;
    bool is_zero() const;
    /// Diagonal entries of a square matrix.
    std::vector<Poly> diagonal_entries() const;

    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    bool operator==(const Matrix& o) const;
    bool operator!=(const Matrix& o) const { return !(*this == o); }

    std::vector<std::vector<std::string>> to_strings() const;
    std::string to_string() const;

private:
    Ring ring_;
    std::size_t rows_, cols_;
    std::vector<Poly> data_;
};

/// Fraction-free elimination; cross-checked by cofactor expansion up to 3x3.
Poly determinant(const Matrix& m);
Matrix adjugate(const Matrix& m);
/// Exact inverse when det(m) is a unit.
std::optional<Matrix> inverse(const Matrix& m);

/// All k-element subsets of {0..n-1} in lexicographic order.
std::vector<std::vector<std::size_t>> combinations(std::size_t n, std::size_t k);
std::vector<Poly> minors(const Matrix& m, std::size_t k);
/// Ideal of k x k minors (k = 0 gives the unit ideal).
IdealHandle fitting_ideal(const Matrix& m, std::size_t k);

enum class Side { Row, Column };
enum class OpKind { AddMultiple, Swap, Scale };

/// Row op AddMultiple: row[target] += multiplier * row[source]. Column ops act on columns.
/// Scale multiplies the target line by a unit; Swap exchanges target and source.
struct ElementaryOp {
    Side side;
    OpKind kind;
    std::size_t target;
    std::size_t source;
    Poly multiplier;

    static ElementaryOp add(Side side, std::size_t target, std::size_t source, Poly multiplier);
    static ElementaryOp swap(Side side, std::size_t a, std::size_t b);
    static ElementaryOp scale(Side side, std::size_t target, Poly unit);
    std::string to_string() const;
};

/// Matrix E with E*m (rows) or m*E (columns) equal to the operation's effect.
Matrix elementary_matrix(const Ring& ring, std::size_t n, const ElementaryOp& op);
Matrix apply_elementary(const Matrix& m, const ElementaryOp& op);

/// Witness that P * source * Q = target with P, Q invertible.
struct EquivalenceCertificate {
    Matrix source;
    Matrix left;
    Matrix right;
    Matrix target;
    std::vector<ElementaryOp> transcript;
};

/// Starts a certificate with P = Q = identity and records ops as they are applied.
class CertificateBuilder {
public:
    explicit CertificateBuilder(const Matrix& m);
    void apply(const ElementaryOp& op);
    const Matrix& current() const { return cert_.target; }
    const EquivalenceCertificate& certificate() const { return cert_; }

private:
    EquivalenceCertificate cert_;
};

struct Verification {
    bool valid = false;
    std::string reason; // first failing check when invalid
};
/// Checks unit determinants and the triple product with the independent arithmetic in certcheck.
Verification verify_certificate(const EquivalenceCertificate& cert);

struct SmithForm {
    EquivalenceCertificate certificate;
    std::vector<Poly> invariants;
};
/// Smith normal form over Z and univariate polynomial rings over a field.
SmithForm smith_normal_form(const Matrix& m);

} // namespace diagcert

#endif
