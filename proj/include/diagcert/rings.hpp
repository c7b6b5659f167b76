#ifndef DIAGCERT_RINGS_HPP
#define DIAGCERT_RINGS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "diagcert/errors.hpp"

namespace diagcert {

using Coeff = mpq_class;
using Exponents = std::vector<std::uint32_t>;

enum class CoeffDomain { Integers, Rationals, PrimeField };
enum class MonomialOrder { Lex, GRevLex };

/// One of Z, Z[x..], Q[x..], F_p[x..]. Cheap to copy; compares by value.
class Ring {
public:
    static Ring integers();
    static Ring polynomial(CoeffDomain coeffs, std::vector<std::string> variables,
                           MonomialOrder order = MonomialOrder::GRevLex, unsigned long modulus = 0);

    bool is_integers() const { return d_->variables.empty(); }
    CoeffDomain coeff_domain() const { return d_->coeffs; }
    bool field_coefficients() const { return d_->coeffs != CoeffDomain::Integers; }
    std::size_t nvars() const { return d_->variables.size(); }
    const std::vector<std::string>& variables() const { return d_->variables; }
    MonomialOrder order() const { return d_->order; }
    const mpz_class& modulus() const { return d_->modulus; }

    /// Z, or a univariate polynomial ring over a field.
    bool is_euclidean() const;
    std::string describe() const;

    bool operator==(const Ring& other) const;
    bool operator!=(const Ring& other) const { return !(*this == other); }

    // Coefficient arithmetic in the coefficient domain. Inputs are assumed normalized.
    Coeff normalize(Coeff c) const;
    Coeff cadd(const Coeff& a, const Coeff& b) const { return normalize(a + b); }
    Coeff csub(const Coeff& a, const Coeff& b) const { return normalize(a - b); }
    Coeff cmul(const Coeff& a, const Coeff& b) const { return normalize(a * b); }
    Coeff cneg(const Coeff& a) const { return normalize(-a); }
    bool cdivides(const Coeff& a, const Coeff& b) const;
    Coeff cdiv_exact(const Coeff& b, const Coeff& a) const;
    Coeff cinv(const Coeff& a) const;
    bool cis_unit(const Coeff& a) const;
    /// Unit u with c/u canonical (positive for Z, one for fields).
    Coeff ccanonical_unit(const Coeff& c) const;
    Coeff cgcd(const Coeff& a, const Coeff& b) const;
    /// Returns q with c - q*d in [0, |d|) over Z; exact quotient over fields.
    Coeff cquotient(const Coeff& c, const Coeff& d) const;
    /// Smaller means "simpler"; used for pivoting and tie-breaking.
    mpz_class cheight(const Coeff& c) const;

    /// Monomial order: negative, zero, positive like strcmp.
    int compare(const Exponents& a, const Exponents& b) const;

private:
    struct Data {
        CoeffDomain coeffs = CoeffDomain::Integers;
        std::vector<std::string> variables;
        MonomialOrder order = MonomialOrder::GRevLex;
        mpz_class modulus = 0;
    };
    explicit Ring(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
    std::shared_ptr<const Data> d_;
};

std::uint32_t total_degree(const Exponents& e);
bool divides(const Exponents& a, const Exponents& b);
Exponents lcm(const Exponents& a, const Exponents& b);
Exponents exp_sub(const Exponents& a, const Exponents& b);
Exponents exp_add(const Exponents& a, const Exponents& b);

/// Sparse polynomial with terms sorted by decreasing monomial order; no zero terms.
class Poly {
public:
    struct Term {
        Exponents exp;
        Coeff coeff;
        bool operator==(const Term& o) const { return exp == o.exp && coeff == o.coeff; }
    };

    explicit Poly(Ring ring) : ring_(std::move(ring)) {}
    static Poly constant(const Ring& ring, const Coeff& c);
    static Poly constant(const Ring& ring, long c) { return constant(ring, Coeff(c)); }
    static Poly variable(const Ring& ring, std::size_t index);
    static Poly monomial(const Ring& ring, Exponents exp, const Coeff& c);
    /// Builds from unsorted terms, merging duplicates.
    static Poly from_terms(const Ring& ring, std::vector<Term> terms);
    static Poly parse(const Ring& ring, std::string_view text);

    const Ring& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    bool is_one() const;
    const Term& leading() const;
    const Coeff& leading_coeff() const { return leading().coeff; }
    std::uint32_t total_degree() const;
    std::uint32_t degree_in(std::size_t var) const;
    std::size_t size() const { return terms_.size(); }

    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator-() const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    bool operator==(const Poly& o) const { return ring_ == o.ring_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const Coeff& c) const;
    Poly shifted(const Exponents& e, const Coeff& c) const;
    /// this += c * x^e * g
    void add_multiple(const Poly& g, const Exponents& e, const Coeff& c);
    Poly pow(unsigned k) const;

    /// Coefficient of var^k viewing this as univariate in var.
    Poly coeff_in(std::size_t var, std::uint32_t k) const;
    Poly derivative(std::size_t var) const;
    Poly substitute(std::size_t var, const Poly& value) const;
    /// Size measure for search heuristics: degree first, then height, then term count.
    std::uint64_t weight() const;

    std::string to_string() const;

private:
    void check_same_ring(const Poly& o) const;
    Ring ring_;
    std::vector<Term> terms_;
};

/// Canonical-order comparison used for tie-breaking: degree, then term-wise.
int canonical_compare(const Poly& a, const Poly& b);

/// a = b*q, or nullopt. Throws DivisionByZero when b = 0.
std::optional<Poly> exact_divide(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);
Poly gcd(const Poly& a, const Poly& b);
Poly gcd(const std::vector<Poly>& xs);
bool is_unit(const Poly& a);

struct Associate {
    Coeff unit;
    Poly canonical;
};
/// a = unit * canonical, canonical has positive (Z) or unit (field) leading coefficient.
Associate canonical_associate(const Poly& a);
Poly canonical(const Poly& a);
bool are_associates(const Poly& a, const Poly& b);

/// Euclidean division for Z and K[x]: a = q*b + r with r smaller than b.
std::pair<Poly, Poly> euclidean_divide(const Poly& a, const Poly& b);
/// Euclidean size: |a| for Z, degree for K[x].
mpz_class euclidean_size(const Poly& a);

struct Factorization {
    Coeff unit;
    std::vector<std::pair<Poly, unsigned>> factors; // canonical primes, sorted canonically
    bool complete = true;
    Poly product() const;
};
/// Best-effort factorization; `complete` is false when the bounded methods could not certify it.
Factorization factor(const Poly& a);

} // namespace diagcert

#endif
