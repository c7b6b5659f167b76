#include "diagcert/rings.hpp"

#include <algorithm>

namespace diagcert {

namespace {

// Smallest-index variable occurring in a or b, or nvars when both are constants.
std::size_t main_variable(const Poly& a, const Poly& b)
{
    std::size_t n = a.ring().nvars();
    for (std::size_t v = 0; v < n; ++v)
        if (a.degree_in(v) > 0 || b.degree_in(v) > 0)
            return v;
    return n;
}

Poly content_in(const Poly& p, std::size_t var)
{
    std::vector<Poly> cs;
    for (std::uint32_t k = 0; k <= p.degree_in(var); ++k) {
        Poly c = p.coeff_in(var, k);
        if (!c.is_zero())
            cs.push_back(std::move(c));
    }
    return gcd(cs);
}

Poly primitive_in(const Poly& p, std::size_t var)
{
    if (p.is_zero())
        return p;
    Poly c = content_in(p, var);
    auto q = exact_divide(p, c);
    if (!q)
        throw InternalError("content does not divide polynomial");
    return *q;
}

Poly leading_in(const Poly& p, std::size_t var)
{
    return p.coeff_in(var, p.degree_in(var));
}

// Sparse pseudo-remainder of a by b with respect to var.
Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t var)
{
    const Ring& R = a.ring();
    std::uint32_t db = b.degree_in(var);
    Poly lb = leading_in(b, var);
    Poly r = a;
    while (!r.is_zero() && r.degree_in(var) >= db) {
        std::uint32_t dr = r.degree_in(var);
        Exponents shift(R.nvars(), 0);
        shift[var] = dr - db;
        Poly lr = leading_in(r, var);
        r = lb * r - (lr * b).shifted(shift, Coeff(1));
    }
    return r;
}

} // namespace

Poly gcd(const Poly& a, const Poly& b)
{
    if (a.ring() != b.ring())
        throw UsageError("ring mismatch in gcd");
    const Ring& R = a.ring();
    if (a.is_zero() && b.is_zero())
        throw UsageError("gcd(0, 0) is undefined");
    if (a.is_zero())
        return canonical(b);
    if (b.is_zero())
        return canonical(a);

    std::size_t v = main_variable(a, b);
    if (v == R.nvars())
        return Poly::constant(R, R.cgcd(a.leading_coeff(), b.leading_coeff()));
    if (a.degree_in(v) == 0)
        return gcd(a, content_in(b, v));
    if (b.degree_in(v) == 0)
        return gcd(content_in(a, v), b);

    Poly ca = content_in(a, v);
    Poly cb = content_in(b, v);
    Poly c = gcd(ca, cb);
    Poly A = *exact_divide(a, ca);
    Poly B = *exact_divide(b, cb);
    if (A.degree_in(v) < B.degree_in(v))
        std::swap(A, B);
    Poly g(R);
    for (;;) {
        Poly r = pseudo_remainder(A, B, v);
        if (r.is_zero()) {
            g = B;
            break;
        }
        if (r.degree_in(v) == 0) {
            g = Poly::constant(R, 1);
            break;
        }
        A = std::move(B);
        B = primitive_in(r, v);
    }
    g = primitive_in(g, v);
    return canonical(c * g);
}

Poly gcd(const std::vector<Poly>& xs)
{
    if (xs.empty())
        throw UsageError("gcd of an empty list");
    Poly g = xs.front();
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (is_unit(g))
            break;
        g = g.is_zero() && xs[i].is_zero() ? g : gcd(g, xs[i]);
    }
    if (g.is_zero())
        throw UsageError("gcd of zero polynomials is undefined");
    return canonical(g);
}

} // namespace diagcert
