#include "diagcert/rings.hpp"

#include <algorithm>
#include <regex>
#include <set>

namespace diagcert {

Ring Ring::integers()
{
    auto d = std::make_shared<Data>();
    d->coeffs = CoeffDomain::Integers;
    return Ring(std::move(d));
}

Ring Ring::polynomial(CoeffDomain coeffs, std::vector<std::string> variables, MonomialOrder order,
                      unsigned long modulus)
{
    if (variables.empty())
        throw UsageError("polynomial ring needs at least one variable");
    static const std::regex name_re("[a-z][a-z0-9]*");
    std::set<std::string> seen;
    for (const auto& v : variables) {
        if (!std::regex_match(v, name_re))
            throw UsageError("invalid variable name '" + v + "'");
        if (!seen.insert(v).second)
            throw UsageError("duplicate variable name '" + v + "'");
    }
    auto d = std::make_shared<Data>();
    d->coeffs = coeffs;
    d->variables = std::move(variables);
    d->order = order;
    if (coeffs == CoeffDomain::PrimeField) {
        mpz_class p = modulus;
        if (p < 2 || mpz_probab_prime_p(p.get_mpz_t(), 40) == 0)
            throw UsageError("prime field modulus " + p.get_str() + " is not prime");
        d->modulus = p;
    } else if (modulus != 0) {
        throw UsageError("modulus given for a coefficient domain that is not a prime field");
    }
    return Ring(std::move(d));
}

bool Ring::is_euclidean() const
{
    if (is_integers())
        return true;
    return field_coefficients() && nvars() == 1;
}

std::string Ring::describe() const
{
    if (is_integers())
        return "Z";
    std::string s;
    switch (d_->coeffs) {
    case CoeffDomain::Integers: s = "Z"; break;
    case CoeffDomain::Rationals: s = "Q"; break;
    case CoeffDomain::PrimeField: s = "F_" + d_->modulus.get_str(); break;
    }
    s += "[";
    for (std::size_t i = 0; i < d_->variables.size(); ++i) {
        if (i)
            s += ",";
        s += d_->variables[i];
    }
    return s + "]";
}

bool Ring::operator==(const Ring& other) const
{
    if (d_ == other.d_)
        return true;
    return d_->coeffs == other.d_->coeffs && d_->variables == other.d_->variables
        && d_->order == other.d_->order && d_->modulus == other.d_->modulus;
}

Coeff Ring::normalize(Coeff c) const
{
    if (d_->coeffs != CoeffDomain::PrimeField)
        return c;
    const mpz_class& p = d_->modulus;
    mpz_class num = c.get_num();
    mpz_class den = c.get_den();
    if (den != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t()) == 0)
            throw DivisionByZero();
        num *= inv;
    }
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    return Coeff(r);
}

bool Ring::cdivides(const Coeff& a, const Coeff& b) const
{
    if (a == 0)
        return b == 0;
    if (field_coefficients())
        return true;
    return mpz_divisible_p(b.get_num_mpz_t(), a.get_num_mpz_t()) != 0;
}

Coeff Ring::cdiv_exact(const Coeff& b, const Coeff& a) const
{
    if (a == 0)
        throw DivisionByZero();
    switch (d_->coeffs) {
    case CoeffDomain::Integers: {
        if (!cdivides(a, b))
            throw InternalError("inexact integer division " + b.get_str() + " / " + a.get_str());
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), b.get_num_mpz_t(), a.get_num_mpz_t());
        return Coeff(q);
    }
    case CoeffDomain::Rationals: return b / a;
    case CoeffDomain::PrimeField: return cmul(b, cinv(a));
    }
    return {};
}

Coeff Ring::cinv(const Coeff& a) const
{
    if (a == 0)
        throw DivisionByZero();
    switch (d_->coeffs) {
    case CoeffDomain::Integers:
        if (abs(a) != 1)
            throw UsageError("integer " + a.get_str() + " is not invertible");
        return a;
    case CoeffDomain::Rationals: return 1 / a;
    case CoeffDomain::PrimeField: {
        mpz_class inv;
        mpz_class num = a.get_num();
        mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), d_->modulus.get_mpz_t());
        return Coeff(inv);
    }
    }
    return {};
}

bool Ring::cis_unit(const Coeff& a) const
{
    if (field_coefficients())
        return a != 0;
    return abs(a) == 1;
}

Coeff Ring::ccanonical_unit(const Coeff& c) const
{
    if (c == 0)
        return Coeff(1);
    if (field_coefficients())
        return c;
    return c < 0 ? Coeff(-1) : Coeff(1);
}

Coeff Ring::cgcd(const Coeff& a, const Coeff& b) const
{
    if (field_coefficients())
        return (a == 0 && b == 0) ? Coeff(0) : Coeff(1);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
    return Coeff(g);
}

Coeff Ring::cquotient(const Coeff& c, const Coeff& d) const
{
    if (d == 0)
        throw DivisionByZero();
    if (field_coefficients())
        return cdiv_exact(c, d);
    mpz_class ad = abs(d.get_num());
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_num_mpz_t(), ad.get_mpz_t());
    mpz_class q;
    mpz_class diff = c.get_num() - r;
    mpz_divexact(q.get_mpz_t(), diff.get_mpz_t(), d.get_num_mpz_t());
    return Coeff(q);
}

mpz_class Ring::cheight(const Coeff& c) const
{
    if (d_->coeffs == CoeffDomain::PrimeField) {
        mpz_class v = c.get_num();
        mpz_class w = d_->modulus - v;
        return v < w ? v : w;
    }
    mpz_class n = abs(c.get_num());
    mpz_class den = c.get_den();
    return n > den ? n : den;
}

int Ring::compare(const Exponents& a, const Exponents& b) const
{
    if (d_->order == MonomialOrder::GRevLex) {
        auto da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db ? -1 : 1;
        for (std::size_t i = a.size(); i-- > 0;) {
            if (a[i] != b[i])
                return a[i] > b[i] ? -1 : 1;
        }
        return 0;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i])
            return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

std::uint32_t total_degree(const Exponents& e)
{
    std::uint32_t d = 0;
    for (auto x : e)
        d += x;
    return d;
}

bool divides(const Exponents& a, const Exponents& b)
{
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i])
            return false;
    return true;
}

Exponents lcm(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = std::max(a[i], b[i]);
    return r;
}

Exponents exp_sub(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i])
            throw InternalError("monomial subtraction underflow");
        r[i] = a[i] - b[i];
    }
    return r;
}

Exponents exp_add(const Exponents& a, const Exponents& b)
{
    Exponents r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

} // namespace diagcert
