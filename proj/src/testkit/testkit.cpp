#include "diagcert/testkit.hpp"

#include <random>

namespace diagcert::testkit {

std::vector<Poly> minors_gcd_snf_oracle(const Matrix& m)
{
    const Ring& R = m.ring();
    std::size_t top = std::min(m.rows(), m.cols());
    std::vector<Poly> out;
    Poly prev = Poly::constant(R, 1);
    for (std::size_t k = 1; k <= top; ++k) {
        std::vector<Poly> ms;
        for (auto& p : minors(m, k))
            if (!p.is_zero())
                ms.push_back(std::move(p));
        if (ms.empty()) {
            while (out.size() < top)
                out.push_back(Poly(R));
            break;
        }
        Poly g = gcd(ms);
        auto d = exact_divide(g, prev);
        if (!d)
            throw InternalError("determinantal divisors do not form a divisibility chain");
        out.push_back(canonical(*d));
        prev = g;
    }
    return out;
}

Scrambled scramble(const Matrix& d, const ScrambleRecipe& recipe)
{
    const Ring& R = d.ring();
    std::vector<Poly> pool = recipe.pool;
    if (pool.empty())
        pool = coefficient_pool(R, Bounds{1, 2, 0});
    std::mt19937_64 rng(recipe.seed);
    CertificateBuilder b(d);
    std::size_t n = d.rows();
    if (n >= 2)
        for (std::size_t k = 0; k < recipe.operations; ++k) {
            Side side = rng() % 2 == 0 ? Side::Row : Side::Column;
            std::size_t t = rng() % n;
            std::size_t s = (t + 1 + rng() % (n - 1)) % n;
            const Poly& c = pool[rng() % pool.size()];
            b.apply(ElementaryOp::add(side, t, s, c));
        }
    const auto& cert = b.certificate();
    auto pinv = inverse(cert.left);
    auto qinv = inverse(cert.right);
    if (!pinv || !qinv)
        throw InternalError("elementary products must be invertible");
    Scrambled out{cert.target, cert.transcript, EquivalenceCertificate{cert.target, *pinv, *qinv, d, {}}};
    if (!verify_certificate(out.ground_truth).valid)
        throw InternalError("scramble ground truth does not verify");
    return out;
}

std::vector<SpecializationProbe> default_probes(const Ring& ring)
{
    std::size_t n = ring.nvars();
    std::vector<std::vector<long>> tuples{{}};
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<std::vector<long>> next;
        for (const auto& t : tuples)
            for (long a : {0L, 1L, -1L}) {
                auto u = t;
                u.push_back(a);
                next.push_back(std::move(u));
            }
        tuples = std::move(next);
    }
    std::vector<SpecializationProbe> out;
    if (!ring.field_coefficients()) {
        for (const auto& t : tuples) {
            out.push_back({t, std::nullopt, 0, 0});
            for (unsigned long p : {2UL, 3UL, 5UL})
                for (unsigned e : {1U, 2U})
                    out.push_back({t, std::nullopt, p, e});
        }
        return out;
    }
    for (const auto& t : tuples)
        out.push_back({t, std::nullopt, 0, 0});
    for (std::size_t keep = 0; keep < n; ++keep)
        for (const auto& t : tuples) {
            if (t[keep] != 0)
                continue;
            out.push_back({t, keep, 0, 0});
        }
    return out;
}

std::string ProbeInvariants::to_string() const
{
    std::string s = "[";
    for (std::size_t i = 0; i < torsion.size(); ++i)
        s += (i ? ", " : "") + torsion[i];
    return s + "] + free rank " + std::to_string(free_rank);
}

namespace {

Ring probe_ring(const Ring& ring, const SpecializationProbe& probe)
{
    if (probe.values.size() != ring.nvars())
        throw UsageError("probe needs one value per variable");
    if (probe.kept && *probe.kept >= ring.nvars())
        throw UsageError("probe keeps a variable that does not exist");
    if (!ring.field_coefficients()) {
        if (probe.kept)
            throw UsageError("probes over integer coefficients must substitute every variable");
        if (probe.prime) {
            mpz_class p(probe.prime);
            if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0 || probe.exponent == 0)
                throw UsageError("probe modulus must be a positive power of a prime");
        }
        return Ring::integers();
    }
    if (probe.prime)
        throw UsageError("probes over field coefficients cannot reduce modulo a prime");
    std::string name = probe.kept ? ring.variables()[*probe.kept] : "t";
    unsigned long mod = ring.coeff_domain() == CoeffDomain::PrimeField ? ring.modulus().get_ui() : 0;
    return Ring::polynomial(ring.coeff_domain(), {name}, MonomialOrder::GRevLex, mod);
}

Poly specialize_poly(const Poly& p, const Ring& target, const SpecializationProbe& probe)
{
    std::vector<Poly::Term> terms;
    for (const auto& t : p.terms()) {
        Coeff c = t.coeff;
        for (std::size_t v = 0; v < t.exp.size(); ++v) {
            if (probe.kept && *probe.kept == v)
                continue;
            mpz_class base(probe.values[v]), pw;
            mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), t.exp[v]);
            c *= Coeff(pw);
        }
        Exponents e(target.nvars(), 0);
        if (probe.kept)
            e[0] = t.exp[*probe.kept];
        terms.push_back({e, target.normalize(c)});
    }
    return Poly::from_terms(target, std::move(terms));
}

} // namespace

ProbeInvariants specialize(const FPModule& m, const SpecializationProbe& probe)
{
    Ring T = probe_ring(m.ring(), probe);
    std::size_t g = m.generators();
    std::vector<FreeVector> cols;
    for (const auto& r : m.relations()) {
        FreeVector v;
        for (const auto& p : r)
            v.push_back(specialize_poly(p, T, probe));
        cols.push_back(std::move(v));
    }
    if (probe.prime) {
        mpz_class q;
        mpz_ui_pow_ui(q.get_mpz_t(), probe.prime, probe.exponent);
        for (std::size_t i = 0; i < g; ++i) {
            FreeVector v = zero_vector(T, g);
            v[i] = Poly::constant(T, Coeff(q));
            cols.push_back(std::move(v));
        }
    }
    ProbeInvariants out;
    if (g == 0)
        return out;
    if (cols.empty()) {
        out.free_rank = g;
        return out;
    }
    SmithForm s = smith_normal_form(Matrix::from_columns(T, g, cols));
    for (const auto& d : s.invariants) {
        if (d.is_zero())
            ++out.free_rank;
        else if (!is_unit(d))
            out.torsion.push_back(d.to_string());
    }
    out.free_rank += g - s.invariants.size();
    return out;
}

SpecializationResult specialization_oracle(const FPModule& m, const FPModule& n,
                                           const std::vector<SpecializationProbe>& probes)
{
    if (m.ring() != n.ring())
        throw UsageError("specialization of modules over different rings");
    for (const auto& p : probes) {
        ProbeInvariants a = specialize(m, p), b = specialize(n, p);
        if (!(a == b))
            return {true, p, a.to_string() + " vs " + b.to_string()};
    }
    return {false, std::nullopt, "indistinguishable under " + std::to_string(probes.size()) + " probes"};
}

SpecializationResult specialization_oracle(const FPModule& m, const FPModule& n)
{
    return specialization_oracle(m, n, default_probes(m.ring()));
}

SoundnessAudit& SoundnessAudit::instance()
{
    static SoundnessAudit audit;
    return audit;
}

void SoundnessAudit::record_yes(const std::string& context, bool verified)
{
    std::lock_guard<std::mutex> lock(mu_);
    ++yes_;
    if (verified)
        ++yes_ok_;
    else
        failures_.push_back("unverified Yes from " + context);
}

void SoundnessAudit::record_no(const std::string& context, bool reverified)
{
    std::lock_guard<std::mutex> lock(mu_);
    ++no_;
    if (reverified)
        ++no_ok_;
    else
        failures_.push_back("unverified No from " + context);
}

void SoundnessAudit::record_iso_probe_conflict(const std::string& context)
{
    std::lock_guard<std::mutex> lock(mu_);
    ++conflicts_;
    failures_.push_back("isomorphism Yes with a distinguishing probe in " + context);
}

std::size_t SoundnessAudit::yes_total() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return yes_;
}

std::size_t SoundnessAudit::yes_verified() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return yes_ok_;
}

std::size_t SoundnessAudit::no_total() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return no_;
}

std::size_t SoundnessAudit::no_reverified() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return no_ok_;
}

std::size_t SoundnessAudit::conflicts() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return conflicts_;
}

std::vector<std::string> SoundnessAudit::failures() const
{
    std::lock_guard<std::mutex> lock(mu_);
    return failures_;
}

} // namespace diagcert::testkit
