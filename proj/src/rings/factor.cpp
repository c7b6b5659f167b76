#include "diagcert/rings.hpp"

#include <algorithm>
#include <map>

namespace diagcert {

namespace {

constexpr unsigned long kTrialLimit = 1000000;
constexpr std::uint64_t kKroneckerBudget = 400000;
constexpr std::uint32_t kMaxSubstitutedDegree = 48;
constexpr std::size_t kMaxRecombinationFactors = 16;

struct IntFactors {
    std::vector<std::pair<mpz_class, unsigned>> primes;
    bool complete = true;
};

IntFactors factor_integer(mpz_class n)
{
    IntFactors out;
    n = abs(n);
    auto take = [&](const mpz_class& p) {
        unsigned k = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++k;
        }
        if (k)
            out.primes.push_back({p, k});
    };
    take(2);
    for (unsigned long d = 3; d <= kTrialLimit; d += 2) {
        if (mpz_class(d) * d > n)
            break;
        take(mpz_class(d));
    }
    if (n > 1) {
        bool proven = n < mpz_class(kTrialLimit) * kTrialLimit
            || mpz_probab_prime_p(n.get_mpz_t(), 40) == 2;
        if (!proven)
            out.complete = false;
        out.primes.push_back({n, 1});
    }
    return out;
}

std::vector<mpz_class> positive_divisors(const mpz_class& n, bool& ok, std::size_t limit)
{
    IntFactors f = factor_integer(n);
    if (!f.complete) {
        ok = false;
        return {};
    }
    std::vector<mpz_class> divs{1};
    for (auto& [p, k] : f.primes) {
        std::size_t base = divs.size();
        mpz_class pk = 1;
        for (unsigned e = 1; e <= k; ++e) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i)
                divs.push_back(divs[i] * pk);
        }
        if (divs.size() > limit) {
            ok = false;
            return {};
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

bool char_zero(const Ring& R)
{
    return R.coeff_domain() != CoeffDomain::PrimeField;
}

std::vector<std::size_t> occurring_vars(const Poly& f)
{
    std::vector<std::size_t> vs;
    for (std::size_t v = 0; v < f.ring().nvars(); ++v)
        if (f.degree_in(v) > 0)
            vs.push_back(v);
    return vs;
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

bool evidently_irreducible(const Poly& f)
{
    if (f.total_degree() == 1)
        return true;
    for (auto v : occurring_vars(f))
        if (f.degree_in(v) == 1 && is_unit(content_in(f, v)))
            return true;
    return false;
}

mpq_class eval_univariate(const Poly& f, std::size_t var, const mpq_class& x)
{
    mpq_class acc = 0;
    for (const auto& t : f.terms()) {
        mpq_class term = t.coeff;
        for (std::uint32_t i = 0; i < t.exp[var]; ++i)
            term *= x;
        acc += term;
    }
    return acc;
}

// Integer-coefficient associate of f over Q (or f itself over Z).
Poly integral_associate(const Poly& f)
{
    if (f.ring().coeff_domain() != CoeffDomain::Rationals)
        return f;
    mpz_class l = 1;
    for (const auto& t : f.terms())
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
    Poly g = f.scaled(Coeff(l));
    mpz_class c = 0;
    for (const auto& t : g.terms())
        mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coeff.get_num_mpz_t());
    return g.scaled(Coeff(mpz_class(1), c));
}

// Coefficients low-to-high of the interpolating polynomial through (xs[i], ys[i]).
std::vector<mpq_class> interpolate(const std::vector<mpz_class>& xs, const std::vector<mpz_class>& ys)
{
    std::size_t n = xs.size();
    std::vector<mpq_class> dd(ys.begin(), ys.end());
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i) {
            dd[i] = (dd[i] - dd[i - 1]) / mpq_class(xs[i] - xs[i - j]);
            if (i == j)
                break;
        }
    std::vector<mpq_class> coeffs(n, 0);
    for (std::size_t k = n; k-- > 0;) {
        // coeffs = coeffs * (x - xs[k]) + dd[k]
        std::vector<mpq_class> next(n, 0);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            next[i + 1] += coeffs[i];
            next[i] -= coeffs[i] * mpq_class(xs[k]);
        }
        next[0] += dd[k];
        coeffs = std::move(next);
    }
    return coeffs;
}

struct Search {
    bool complete = true;
};

std::optional<Poly> univariate_factor_char0(const Poly& f, std::size_t var, Search& st)
{
    const Ring& R = f.ring();
    Poly fz = integral_associate(f);
    std::uint32_t n = fz.degree_in(var);
    // rational roots p/q
    mpz_class a0 = fz.coeff_in(var, 0).is_zero() ? mpz_class(0) : fz.coeff_in(var, 0).leading_coeff().get_num();
    mpz_class an = fz.coeff_in(var, n).leading_coeff().get_num();
    if (a0 == 0)
        return Poly::variable(R, var);
    bool ok = true;
    auto ps = positive_divisors(a0, ok, 4096);
    auto qs = positive_divisors(an, ok, 4096);
    if (!ok) {
        st.complete = false;
        return std::nullopt;
    }
    for (const auto& q : qs)
        for (const auto& p : ps)
            for (int sgn : {1, -1}) {
                mpq_class r(p * sgn, q);
                r.canonicalize();
                if (r.get_den() != q)
                    continue;
                if (eval_univariate(fz, var, r) == 0) {
                    Poly lin = Poly::variable(R, var).scaled(Coeff(q)) - Poly::constant(R, Coeff(p * sgn));
                    return lin;
                }
            }
    // Kronecker's method for higher-degree factors
    std::uint64_t spent = 0;
    for (std::uint32_t d = 2; d <= n / 2; ++d) {
        std::vector<mpz_class> xs;
        std::vector<std::vector<mpz_class>> divs;
        for (long k = 0; xs.size() < d + 1; ++k) {
            long x = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
            mpq_class v = eval_univariate(fz, var, mpq_class(x));
            bool dok = true;
            auto dv = positive_divisors(v.get_num(), dok, 4096);
            if (!dok) {
                st.complete = false;
                return std::nullopt;
            }
            xs.push_back(x);
            divs.push_back(std::move(dv));
        }
        std::uint64_t total = 1;
        for (std::size_t i = 0; i < divs.size(); ++i) {
            total *= divs[i].size() * (i == 0 ? 1 : 2);
            if (total > kKroneckerBudget)
                break;
        }
        if (spent + total > kKroneckerBudget) {
            st.complete = false;
            return std::nullopt;
        }
        spent += total;
        std::vector<std::size_t> idx(xs.size(), 0);
        std::size_t m = xs.size();
        for (;;) {
            std::vector<mpz_class> ys(m);
            for (std::size_t i = 0; i < m; ++i) {
                std::size_t nd = divs[i].size();
                std::size_t j = idx[i];
                bool neg = i > 0 && j >= nd;
                ys[i] = divs[i][j % nd] * (neg ? -1 : 1);
            }
            auto coeffs = interpolate(xs, ys);
            bool integral = coeffs.back() != 0;
            for (const auto& c : coeffs)
                if (c.get_den() != 1)
                    integral = false;
            if (integral) {
                std::vector<Poly::Term> terms;
                for (std::size_t i = 0; i < coeffs.size(); ++i) {
                    Exponents e(R.nvars(), 0);
                    e[var] = static_cast<std::uint32_t>(i);
                    terms.push_back({e, coeffs[i]});
                }
                Poly g = Poly::from_terms(R, std::move(terms));
                if (exact_divide(fz, g))
                    return g;
            }
            std::size_t i = 0;
            for (; i < m; ++i) {
                std::size_t lim = divs[i].size() * (i == 0 ? 1 : 2);
                if (++idx[i] < lim)
                    break;
                idx[i] = 0;
            }
            if (i == m)
                break;
        }
    }
    return std::nullopt;
}

std::optional<Poly> univariate_factor_fp(const Poly& f, std::size_t var, Search& st)
{
    const Ring& R = f.ring();
    std::uint32_t n = f.degree_in(var);
    unsigned long p = R.modulus().get_ui();
    std::uint64_t spent = 0;
    for (std::uint32_t d = 1; d <= n / 2; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) {
            count *= p;
            if (count > kKroneckerBudget)
                break;
        }
        if (spent + count > kKroneckerBudget) {
            st.complete = false;
            return std::nullopt;
        }
        spent += count;
        std::vector<unsigned long> c(d, 0);
        for (;;) {
            std::vector<Poly::Term> terms;
            Exponents top(R.nvars(), 0);
            top[var] = d;
            terms.push_back({top, Coeff(1)});
            for (std::uint32_t i = 0; i < d; ++i) {
                Exponents e(R.nvars(), 0);
                e[var] = i;
                terms.push_back({e, Coeff(c[i])});
            }
            Poly g = Poly::from_terms(R, std::move(terms));
            if (exact_divide(f, g))
                return g;
            std::uint32_t i = 0;
            for (; i < d; ++i) {
                if (++c[i] < p)
                    break;
                c[i] = 0;
            }
            if (i == d)
                break;
        }
    }
    return std::nullopt;
}

std::optional<Poly> find_factor(const Poly& f, Search& st);

// Kronecker substitution x_k -> t^(D^k) followed by recombination of univariate factors.
std::optional<Poly> multivariate_factor(const Poly& f, const std::vector<std::size_t>& vars, Search& st)
{
    const Ring& R = f.ring();
    std::uint32_t D = 0;
    for (auto v : vars)
        D = std::max(D, f.degree_in(v));
    D += 1;
    std::uint64_t maxdeg = 1;
    for (std::size_t i = 0; i < vars.size(); ++i)
        maxdeg *= D;
    if (maxdeg - 1 > kMaxSubstitutedDegree) {
        st.complete = false;
        return std::nullopt;
    }
    Ring U = Ring::polynomial(R.coeff_domain(), {"t"}, MonomialOrder::GRevLex,
                              R.coeff_domain() == CoeffDomain::PrimeField ? R.modulus().get_ui() : 0);
    std::vector<Poly::Term> terms;
    for (const auto& t : f.terms()) {
        std::uint64_t e = 0, w = 1;
        for (auto v : vars) {
            e += t.exp[v] * w;
            w *= D;
        }
        terms.push_back({Exponents{static_cast<std::uint32_t>(e)}, t.coeff});
    }
    Poly u = Poly::from_terms(U, std::move(terms));
    Factorization uf = factor(u);
    if (!uf.complete) {
        st.complete = false;
        return std::nullopt;
    }
    std::vector<Poly> parts;
    for (auto& [p, k] : uf.factors)
        for (unsigned i = 0; i < k; ++i)
            parts.push_back(p);
    if (parts.size() > kMaxRecombinationFactors) {
        st.complete = false;
        return std::nullopt;
    }
    auto back = [&](const Poly& g) {
        std::vector<Poly::Term> ts;
        for (const auto& t : g.terms()) {
            std::uint64_t e = t.exp[0];
            Exponents ex(R.nvars(), 0);
            for (auto v : vars) {
                ex[v] = static_cast<std::uint32_t>(e % D);
                e /= D;
            }
            if (e != 0)
                return std::optional<Poly>();
            ts.push_back({ex, t.coeff});
        }
        return std::optional<Poly>(Poly::from_terms(R, std::move(ts)));
    };
    std::size_t m = parts.size();
    std::uint32_t fdeg = f.total_degree();
    // subsets in increasing size; only half needed since complements are cofactors
    for (std::size_t size = 1; size <= m / 2 + (m % 2); ++size) {
        std::vector<bool> pick(m, false);
        std::fill(pick.begin(), pick.begin() + static_cast<long>(size), true);
        do {
            Poly prod = Poly::constant(U, 1);
            for (std::size_t i = 0; i < m; ++i)
                if (pick[i])
                    prod *= parts[i];
            auto g = back(prod);
            if (g && !g->is_constant() && g->total_degree() < fdeg) {
                Poly gc = canonical(*g);
                if (exact_divide(f, gc))
                    return gc;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    return std::nullopt;
}

std::optional<Poly> find_factor(const Poly& f, Search& st)
{
    const Ring& R = f.ring();
    auto vars = occurring_vars(f);
    for (auto v : vars) {
        Poly c = content_in(f, v);
        if (!is_unit(c))
            return c;
    }
    for (auto v : vars) {
        Poly d = f.derivative(v);
        if (d.is_zero())
            continue;
        Poly g = gcd(f, d);
        if (!is_unit(g) && g.total_degree() < f.total_degree())
            return g;
    }
    if (!char_zero(R)) {
        bool all_zero = true;
        for (auto v : vars)
            if (!f.derivative(v).is_zero())
                all_zero = false;
        if (all_zero) {
            // f is a p-th power: coefficients are fixed by Frobenius in F_p
            unsigned long p = R.modulus().get_ui();
            std::vector<Poly::Term> ts;
            for (const auto& t : f.terms()) {
                Exponents e = t.exp;
                for (auto& x : e)
                    x /= static_cast<std::uint32_t>(p);
                ts.push_back({e, t.coeff});
            }
            return Poly::from_terms(R, std::move(ts));
        }
    }
    if (vars.size() == 1)
        return char_zero(R) ? univariate_factor_char0(f, vars[0], st) : univariate_factor_fp(f, vars[0], st);
    return multivariate_factor(f, vars, st);
}

void split(const Poly& f, std::vector<Poly>& out, Search& st)
{
    if (evidently_irreducible(f)) {
        out.push_back(canonical(f));
        return;
    }
    auto g = find_factor(f, st);
    if (!g) {
        out.push_back(canonical(f));
        return;
    }
    Poly gc = canonical(*g);
    auto q = exact_divide(f, gc);
    if (!q || is_unit(gc) || is_unit(*q))
        throw InternalError("factor search returned a trivial divisor of " + f.to_string());
    split(gc, out, st);
    split(canonical(*q), out, st);
}

} // namespace

Poly Factorization::product() const
{
    if (factors.empty())
        throw InternalError("empty factorization");
    const Ring& R = factors.front().first.ring();
    Poly p = Poly::constant(R, unit);
    for (const auto& [q, k] : factors)
        p *= q.pow(k);
    return p;
}

Factorization factor(const Poly& a)
{
    if (a.is_zero())
        throw UsageError("cannot factor zero");
    if (is_unit(a))
        throw UsageError("cannot factor a unit");
    const Ring& R = a.ring();
    Poly f = canonical(a);
    std::vector<Poly> pieces;
    Search st;

    if (!R.field_coefficients()) {
        mpz_class c = 0;
        for (const auto& t : f.terms())
            mpz_gcd(c.get_mpz_t(), c.get_mpz_t(), t.coeff.get_num_mpz_t());
        if (c > 1) {
            IntFactors fi = factor_integer(c);
            if (!fi.complete)
                st.complete = false;
            for (auto& [p, k] : fi.primes)
                for (unsigned i = 0; i < k; ++i)
                    pieces.push_back(Poly::constant(R, Coeff(p)));
            f = f.scaled(Coeff(mpz_class(1), c));
        }
    }
    for (std::size_t v = 0; v < R.nvars(); ++v) {
        std::uint32_t e = UINT32_MAX;
        for (const auto& t : f.terms())
            e = std::min(e, t.exp[v]);
        if (e == 0 || e == UINT32_MAX)
            continue;
        for (std::uint32_t i = 0; i < e; ++i)
            pieces.push_back(Poly::variable(R, v));
        Exponents shift(R.nvars(), 0);
        shift[v] = e;
        std::vector<Poly::Term> ts;
        for (const auto& t : f.terms())
            ts.push_back({exp_sub(t.exp, shift), t.coeff});
        f = Poly::from_terms(R, std::move(ts));
    }
    if (!is_unit(f))
        split(f, pieces, st);

    std::map<std::string, std::pair<Poly, unsigned>> tally;
    for (auto& p : pieces) {
        auto key = p.to_string();
        auto it = tally.find(key);
        if (it == tally.end())
            tally.emplace(key, std::make_pair(p, 1u));
        else
            it->second.second += 1;
    }
    Factorization out;
    out.complete = st.complete;
    for (auto& [k, v] : tally)
        out.factors.push_back(v);
    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& x, const auto& y) { return canonical_compare(x.first, y.first) < 0; });
    Poly prod = Poly::constant(R, 1);
    for (const auto& [q, k] : out.factors)
        prod *= q.pow(k);
    auto u = exact_divide(a, prod);
    if (!u || !is_unit(*u))
        throw InternalError("factorization does not recombine to its input");
    out.unit = u->leading_coeff();
    return out;
}

} // namespace diagcert
