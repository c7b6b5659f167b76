#include "diagcert/rings.hpp"

#include <algorithm>

namespace diagcert {

Poly Poly::constant(const Ring& ring, const Coeff& c)
{
    return monomial(ring, Exponents(ring.nvars(), 0), c);
}

Poly Poly::variable(const Ring& ring, std::size_t index)
{
    if (index >= ring.nvars())
        throw UsageError("variable index out of range");
    Exponents e(ring.nvars(), 0);
    e[index] = 1;
    return monomial(ring, std::move(e), Coeff(1));
}

Poly Poly::monomial(const Ring& ring, Exponents exp, const Coeff& c)
{
    Poly p(ring);
    Coeff n = ring.normalize(c);
    if (n != 0)
        p.terms_.push_back({std::move(exp), std::move(n)});
    return p;
}

Poly Poly::from_terms(const Ring& ring, std::vector<Term> terms)
{
    std::sort(terms.begin(), terms.end(),
              [&](const Term& a, const Term& b) { return ring.compare(a.exp, b.exp) > 0; });
    Poly p(ring);
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().exp == t.exp)
            p.terms_.back().coeff = ring.cadd(p.terms_.back().coeff, t.coeff);
        else
            p.terms_.push_back({std::move(t.exp), ring.normalize(t.coeff)});
        if (p.terms_.back().coeff == 0)
            p.terms_.pop_back();
    }
    return p;
}

bool Poly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && diagcert::total_degree(terms_[0].exp) == 0);
}

bool Poly::is_one() const
{
    return terms_.size() == 1 && diagcert::total_degree(terms_[0].exp) == 0 && terms_[0].coeff == 1;
}

const Poly::Term& Poly::leading() const
{
    if (terms_.empty())
        throw InternalError("leading term of zero polynomial");
    return terms_.front();
}

std::uint32_t Poly::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_)
        d = std::max(d, diagcert::total_degree(t.exp));
    return d;
}

std::uint32_t Poly::degree_in(std::size_t var) const
{
    std::uint32_t d = 0;
    for (const auto& t : terms_)
        d = std::max(d, t.exp[var]);
    return d;
}

void Poly::check_same_ring(const Poly& o) const
{
    if (ring_ != o.ring_)
        throw UsageError("ring mismatch: " + ring_.describe() + " vs " + o.ring_.describe());
}

Poly Poly::operator+(const Poly& o) const
{
    check_same_ring(o);
    Poly r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
        int c = ring_.compare(terms_[i].exp, o.terms_[j].exp);
        if (c > 0) {
            r.terms_.push_back(terms_[i++]);
        } else if (c < 0) {
            r.terms_.push_back(o.terms_[j++]);
        } else {
            Coeff s = ring_.cadd(terms_[i].coeff, o.terms_[j].coeff);
            if (s != 0)
                r.terms_.push_back({terms_[i].exp, std::move(s)});
            ++i;
            ++j;
        }
    }
    for (; i < terms_.size(); ++i)
        r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j)
        r.terms_.push_back(o.terms_[j]);
    return r;
}

Poly Poly::operator-() const
{
    Poly r(ring_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_)
        r.terms_.push_back({t.exp, ring_.cneg(t.coeff)});
    return r;
}

Poly Poly::operator-(const Poly& o) const
{
    return *this + (-o);
}

Poly Poly::operator*(const Poly& o) const
{
    check_same_ring(o);
    if (is_zero() || o.is_zero())
        return Poly(ring_);
    std::vector<Term> acc;
    acc.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
        for (const auto& b : o.terms_)
            acc.push_back({exp_add(a.exp, b.exp), a.coeff * b.coeff});
    return from_terms(ring_, std::move(acc));
}

Poly Poly::scaled(const Coeff& c) const
{
    Poly r(ring_);
    Coeff n = ring_.normalize(c);
    if (n == 0)
        return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Coeff x = ring_.cmul(t.coeff, n);
        if (x != 0)
            r.terms_.push_back({t.exp, std::move(x)});
    }
    return r;
}

Poly Poly::shifted(const Exponents& e, const Coeff& c) const
{
    Poly r(ring_);
    Coeff n = ring_.normalize(c);
    if (n == 0)
        return r;
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        Coeff x = ring_.cmul(t.coeff, n);
        if (x != 0)
            r.terms_.push_back({exp_add(t.exp, e), std::move(x)});
    }
    return r;
}

void Poly::add_multiple(const Poly& g, const Exponents& e, const Coeff& c)
{
    *this = *this + g.shifted(e, c);
}

Poly Poly::pow(unsigned k) const
{
    Poly result = constant(ring_, 1);
    Poly base = *this;
    while (k) {
        if (k & 1)
            result = result * base;
        k >>= 1;
        if (k)
            base = base * base;
    }
    return result;
}

Poly Poly::coeff_in(std::size_t var, std::uint32_t k) const
{
    Poly r(ring_);
    for (const auto& t : terms_) {
        if (t.exp[var] == k) {
            Term u = t;
            u.exp[var] = 0;
            r.terms_.push_back(std::move(u));
        }
    }
    return from_terms(ring_, std::move(r.terms_));
}

Poly Poly::derivative(std::size_t var) const
{
    std::vector<Term> acc;
    for (const auto& t : terms_) {
        if (t.exp[var] == 0)
            continue;
        Term u = t;
        u.coeff = t.coeff * t.exp[var];
        u.exp[var] -= 1;
        acc.push_back(std::move(u));
    }
    return from_terms(ring_, std::move(acc));
}

Poly Poly::substitute(std::size_t var, const Poly& value) const
{
    check_same_ring(value);
    Poly r(ring_);
    std::uint32_t d = degree_in(var);
    std::vector<Poly> powers;
    powers.push_back(constant(ring_, 1));
    for (std::uint32_t k = 1; k <= d; ++k)
        powers.push_back(powers.back() * value);
    for (std::uint32_t k = 0; k <= d; ++k) {
        Poly c = coeff_in(var, k);
        if (!c.is_zero())
            r += c * powers[k];
    }
    return r;
}

std::uint64_t Poly::weight() const
{
    if (is_zero())
        return 0;
    std::size_t bits = 0;
    for (const auto& t : terms_) {
        mpz_class h = ring_.cheight(t.coeff);
        bits = std::max(bits, mpz_sizeinbase(h.get_mpz_t(), 2));
    }
    return (std::uint64_t(total_degree() + 1) << 32) + (std::uint64_t(bits) << 16) + terms_.size();
}

namespace {

std::string coeff_text(const Coeff& c)
{
    if (c.get_den() == 1)
        return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

} // namespace

std::string Poly::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
        Coeff c = t.coeff;
        bool neg = c < 0;
        if (neg)
            c = -c;
        if (first)
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        first = false;
        bool is_const = diagcert::total_degree(t.exp) == 0;
        std::string mono;
        for (std::size_t i = 0; i < t.exp.size(); ++i) {
            if (t.exp[i] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += ring_.variables()[i];
            if (t.exp[i] > 1)
                mono += "^" + std::to_string(t.exp[i]);
        }
        if (is_const)
            out += coeff_text(c);
        else if (c == 1)
            out += mono;
        else
            out += coeff_text(c) + "*" + mono;
    }
    return out;
}

int canonical_compare(const Poly& a, const Poly& b)
{
    auto da = a.is_zero() ? -1 : static_cast<long>(a.total_degree());
    auto db = b.is_zero() ? -1 : static_cast<long>(b.total_degree());
    if (da != db)
        return da < db ? -1 : 1;
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < std::min(ta.size(), tb.size()); ++i) {
        int c = a.ring().compare(ta[i].exp, tb[i].exp);
        if (c != 0)
            return c < 0 ? -1 : 1;
        if (ta[i].coeff != tb[i].coeff)
            return ta[i].coeff < tb[i].coeff ? -1 : 1;
    }
    if (ta.size() != tb.size())
        return ta.size() < tb.size() ? -1 : 1;
    return 0;
}

std::optional<Poly> exact_divide(const Poly& a, const Poly& b)
{
    if (b.is_zero())
        throw DivisionByZero();
    if (a.ring() != b.ring())
        throw UsageError("ring mismatch in division");
    const Ring& R = a.ring();
    Poly rem = a;
    std::vector<Poly::Term> quot;
    const auto& lb = b.leading();
    while (!rem.is_zero()) {
        const auto& lr = rem.leading();
        if (!divides(lb.exp, lr.exp) || !R.cdivides(lb.coeff, lr.coeff))
            return std::nullopt;
        Exponents e = exp_sub(lr.exp, lb.exp);
        Coeff c = R.cdiv_exact(lr.coeff, lb.coeff);
        quot.push_back({e, c});
        rem.add_multiple(b, e, R.cneg(c));
    }
    Poly q = Poly::from_terms(R, std::move(quot));
    if (q * b != a)
        throw InternalError("exact division failed its multiplication check");
    return q;
}

bool divides(const Poly& b, const Poly& a)
{
    if (b.is_zero())
        return a.is_zero();
    return exact_divide(a, b).has_value();
}

bool is_unit(const Poly& a)
{
    return a.is_constant() && !a.is_zero() && a.ring().cis_unit(a.leading_coeff());
}

Associate canonical_associate(const Poly& a)
{
    if (a.is_zero())
        return {Coeff(1), a};
    const Ring& R = a.ring();
    Coeff u = R.ccanonical_unit(a.leading_coeff());
    return {u, a.scaled(R.cinv(u))};
}

Poly canonical(const Poly& a)
{
    return canonical_associate(a).canonical;
}

bool are_associates(const Poly& a, const Poly& b)
{
    return canonical(a) == canonical(b);
}

mpz_class euclidean_size(const Poly& a)
{
    if (!a.ring().is_euclidean())
        throw NotEuclidean(a.ring().describe());
    if (a.is_zero())
        return -1;
    if (a.ring().is_integers())
        return abs(a.leading_coeff().get_num());
    return a.total_degree();
}

std::pair<Poly, Poly> euclidean_divide(const Poly& a, const Poly& b)
{
    const Ring& R = a.ring();
    if (!R.is_euclidean())
        throw NotEuclidean(R.describe());
    if (b.is_zero())
        throw DivisionByZero();
    if (R.is_integers()) {
        Coeff av = a.is_zero() ? Coeff(0) : a.leading_coeff();
        Coeff q = R.cquotient(av, b.leading_coeff());
        Poly qp = Poly::constant(R, q);
        return {qp, a - qp * b};
    }
    Poly q(R);
    Poly r = a;
    const auto& lb = b.leading();
    while (!r.is_zero() && r.total_degree() >= b.total_degree()) {
        const auto& lr = r.leading();
        Exponents e = exp_sub(lr.exp, lb.exp);
        Coeff c = R.cdiv_exact(lr.coeff, lb.coeff);
        q += Poly::monomial(R, e, c);
        r.add_multiple(b, e, R.cneg(c));
    }
    return {q, r};
}

} // namespace diagcert
