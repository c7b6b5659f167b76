#include "diagcert/groebner.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <set>

namespace diagcert {

namespace {

std::atomic<std::uint64_t>& budget_slot()
{
    static std::atomic<std::uint64_t> slot{[] {
        if (const char* env = std::getenv("DIAGCERT_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(env, &end, 10);
            if (end && *end == '\0' && v > 0)
                return static_cast<std::uint64_t>(v);
        }
        return std::uint64_t{1000000};
    }()};
    return slot;
}

} // namespace

std::uint64_t default_step_budget()
{
    return budget_slot().load();
}

void set_default_step_budget(std::uint64_t steps)
{
    if (steps == 0)
        throw UsageError("step budget must be positive");
    budget_slot().store(steps);
}

FreeVector zero_vector(const Ring& ring, std::size_t rank)
{
    return FreeVector(rank, Poly(ring));
}

FreeVector unit_vector(const Ring& ring, std::size_t rank, std::size_t index)
{
    FreeVector v = zero_vector(ring, rank);
    v.at(index) = Poly::constant(ring, 1);
    return v;
}

bool is_zero(const FreeVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Poly& p) { return p.is_zero(); });
}

FreeVector add(const FreeVector& a, const FreeVector& b)
{
    if (a.size() != b.size())
        throw UsageError("rank mismatch in vector addition");
    FreeVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] += b[i];
    return r;
}

FreeVector sub(const FreeVector& a, const FreeVector& b)
{
    if (a.size() != b.size())
        throw UsageError("rank mismatch in vector subtraction");
    FreeVector r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        r[i] -= b[i];
    return r;
}

FreeVector scale(const FreeVector& v, const Poly& c)
{
    FreeVector r = v;
    for (auto& p : r)
        p = p * c;
    return r;
}

FreeVector combine(const Ring& ring, std::size_t rank, const std::vector<FreeVector>& vs,
                   const std::vector<Poly>& coeffs)
{
    if (vs.size() != coeffs.size())
        throw UsageError("combination length mismatch");
    FreeVector r = zero_vector(ring, rank);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (coeffs[i].is_zero())
            continue;
        for (std::size_t k = 0; k < rank; ++k)
            if (!vs[i][k].is_zero())
                r[k] += coeffs[i] * vs[i][k];
    }
    return r;
}

std::string to_string(const FreeVector& v)
{
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ", ";
        s += v[i].to_string();
    }
    return s + "]";
}

namespace {

struct Elem {
    FreeVector v;
    std::size_t pos = 0;
    Exponents lm;
    Coeff lc;
};

std::optional<std::size_t> lead_position(const FreeVector& v)
{
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].is_zero())
            return i;
    return std::nullopt;
}

FreeVector shift_vec(const FreeVector& v, const Exponents& e, const Coeff& c)
{
    FreeVector r = v;
    for (auto& p : r)
        p = p.shifted(e, c);
    return r;
}

FreeVector add_shifted(const FreeVector& h, const FreeVector& g, const Exponents& e, const Coeff& c)
{
    FreeVector r = h;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (!g[i].is_zero())
            r[i].add_multiple(g[i], e, c);
    return r;
}

// Buchberger's algorithm over field coefficients, Möller-style strong bases over Z coefficients.
class Engine {
public:
    Engine(Ring ring, std::size_t rank, std::size_t keep_below = SIZE_MAX)
        : R_(std::move(ring)), rank_(rank), keep_below_(keep_below), field_(R_.field_coefficients())
    {
    }

    void load_basis(const std::vector<FreeVector>& elems)
    {
        for (const auto& v : elems)
            G_.push_back(make(v));
    }

    Elem make(FreeVector v) const
    {
        auto p = lead_position(v);
        if (!p)
            throw InternalError("zero vector in Gröbner basis");
        Coeff lc = v[*p].leading_coeff();
        Coeff u = R_.ccanonical_unit(lc);
        if (u != 1) {
            Coeff inv = R_.cinv(u);
            for (auto& q : v)
                q = q.scaled(inv);
        }
        Elem e;
        e.pos = *p;
        e.lm = v[*p].leading().exp;
        e.lc = v[*p].leading_coeff();
        e.v = std::move(v);
        return e;
    }

    // Reduces h by the current basis. Stops at the first leading position >= stop.
    FreeVector reduce(FreeVector h, bool full, std::size_t stop)
    {
        FreeVector r = zero_vector(R_, rank_);
        for (;;) {
            auto p = lead_position(h);
            if (!p)
                break;
            if (*p >= stop) {
                for (std::size_t i = 0; i < rank_; ++i)
                    r[i] += h[i];
                break;
            }
            const auto& lt = h[*p].leading();
            Exponents m = lt.exp;
            Coeff c = lt.coeff;
            const Elem* exact = nullptr;
            const Elem* smallest = nullptr;
            for (const auto& g : G_) {
                if (g.pos != *p || !divides(g.lm, m))
                    continue;
                if (R_.cdivides(g.lc, c)) {
                    exact = &g;
                    break;
                }
                if (!smallest || abs(g.lc) < abs(smallest->lc))
                    smallest = &g;
            }
            if (exact) {
                budget_.spend();
                h = add_shifted(h, exact->v, exp_sub(m, exact->lm), R_.cneg(R_.cdiv_exact(c, exact->lc)));
                continue;
            }
            if (smallest) {
                Coeff q = R_.cquotient(c, smallest->lc);
                if (q != 0) {
                    budget_.spend();
                    h = add_shifted(h, smallest->v, exp_sub(m, smallest->lm), R_.cneg(q));
                    continue;
                }
            }
            Poly term = Poly::monomial(R_, m, c);
            r[*p] += term;
            h[*p] -= term;
            if (!full) {
                for (std::size_t i = 0; i < rank_; ++i)
                    r[i] += h[i];
                break;
            }
        }
        return r;
    }

    void run(const std::vector<FreeVector>& gens)
    {
        for (const auto& g : gens) {
            if (is_zero(g))
                continue;
            FreeVector h = reduce(g, true, rank_);
            if (keep(h))
                insert(std::move(h));
        }
        while (!pending_.empty()) {
            auto it = std::min_element(pending_.begin(), pending_.end(), [&](const auto& a, const auto& b) {
                return pair_key(a) < pair_key(b);
            });
            auto [i, j] = *it;
            pending_.erase(it);
            if (field_ && skip_pair(i, j))
                continue;
            process(spoly(i, j));
            if (!field_ && !R_.cdivides(G_[i].lc, G_[j].lc) && !R_.cdivides(G_[j].lc, G_[i].lc))
                process(gpoly(i, j));
        }
    }

    std::vector<FreeVector> reduced_basis()
    {
        std::vector<Elem> minimal;
        for (std::size_t i = 0; i < G_.size(); ++i) {
            bool redundant = false;
            for (std::size_t j = 0; j < G_.size() && !redundant; ++j) {
                if (i == j || G_[j].pos != G_[i].pos || !divides(G_[j].lm, G_[i].lm)
                    || !R_.cdivides(G_[j].lc, G_[i].lc))
                    continue;
                bool same = G_[j].lm == G_[i].lm && abs(G_[j].lc) == abs(G_[i].lc);
                if (!same || j < i)
                    redundant = true;
            }
            if (!redundant)
                minimal.push_back(G_[i]);
        }
        G_ = minimal;
        for (std::size_t i = 0; i < G_.size(); ++i) {
            FreeVector tail = G_[i].v;
            Poly lead = Poly::monomial(R_, G_[i].lm, G_[i].lc);
            tail[G_[i].pos] -= lead;
            FreeVector red = reduce(std::move(tail), true, rank_);
            red[G_[i].pos] += lead;
            G_[i] = make(std::move(red));
        }
        std::sort(G_.begin(), G_.end(), [&](const Elem& a, const Elem& b) {
            if (a.pos != b.pos)
                return a.pos < b.pos;
            int c = R_.compare(a.lm, b.lm);
            if (c != 0)
                return c > 0;
            return a.lc < b.lc;
        });
        std::vector<FreeVector> out;
        for (auto& e : G_)
            out.push_back(e.v);
        return out;
    }

    StepBudget& budget() { return budget_; }

private:
    struct Key {
        std::size_t pos;
        std::uint32_t deg;
        std::size_t i, j;
        bool operator<(const Key& o) const
        {
            if (deg != o.deg)
                return deg < o.deg;
            if (pos != o.pos)
                return pos < o.pos;
            if (j != o.j)
                return j < o.j;
            return i < o.i;
        }
    };

    Key pair_key(const std::pair<std::size_t, std::size_t>& p) const
    {
        return {G_[p.first].pos, total_degree(lcm(G_[p.first].lm, G_[p.second].lm)), p.first, p.second};
    }

    bool skip_pair(std::size_t i, std::size_t j) const
    {
        const auto& a = G_[i];
        const auto& b = G_[j];
        if (rank_ == 1) {
            bool coprime = true;
            for (std::size_t k = 0; k < a.lm.size(); ++k)
                if (a.lm[k] && b.lm[k])
                    coprime = false;
            if (coprime)
                return true;
        }
        Exponents L = lcm(a.lm, b.lm);
        for (std::size_t k = 0; k < G_.size(); ++k) {
            if (k == i || k == j || G_[k].pos != a.pos || !divides(G_[k].lm, L))
                continue;
            auto ik = std::make_pair(std::min(i, k), std::max(i, k));
            auto jk = std::make_pair(std::min(j, k), std::max(j, k));
            if (!pending_.count(ik) && !pending_.count(jk))
                return true;
        }
        return false;
    }

    FreeVector spoly(std::size_t i, std::size_t j) const
    {
        const auto& a = G_[i];
        const auto& b = G_[j];
        Exponents L = lcm(a.lm, b.lm);
        if (field_) {
            FreeVector s = shift_vec(a.v, exp_sub(L, a.lm), R_.cinv(a.lc));
            return add_shifted(s, b.v, exp_sub(L, b.lm), R_.cneg(R_.cinv(b.lc)));
        }
        mpz_class l;
        mpz_lcm(l.get_mpz_t(), a.lc.get_num_mpz_t(), b.lc.get_num_mpz_t());
        FreeVector s = shift_vec(a.v, exp_sub(L, a.lm), R_.cdiv_exact(Coeff(l), a.lc));
        return add_shifted(s, b.v, exp_sub(L, b.lm), R_.cneg(R_.cdiv_exact(Coeff(l), b.lc)));
    }

    FreeVector gpoly(std::size_t i, std::size_t j) const
    {
        const auto& a = G_[i];
        const auto& b = G_[j];
        Exponents L = lcm(a.lm, b.lm);
        mpz_class g, s, t;
        mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.lc.get_num_mpz_t(), b.lc.get_num_mpz_t());
        FreeVector r = shift_vec(a.v, exp_sub(L, a.lm), Coeff(s));
        return add_shifted(r, b.v, exp_sub(L, b.lm), Coeff(t));
    }

    void process(const FreeVector& s)
    {
        if (is_zero(s))
            return;
        FreeVector h = reduce(s, true, rank_);
        if (keep(h))
            insert(std::move(h));
    }

    bool keep(const FreeVector& h) const
    {
        auto p = lead_position(h);
        return p && *p < keep_below_;
    }

    void insert(FreeVector v)
    {
        Elem e = make(std::move(v));
        std::size_t n = G_.size();
        for (std::size_t i = 0; i < n; ++i)
            if (G_[i].pos == e.pos)
                pending_.insert({i, n});
        G_.push_back(std::move(e));
    }

    Ring R_;
    std::size_t rank_;
    std::size_t keep_below_; // elements leading past this position are dropped
    bool field_;
    std::vector<Elem> G_;
    std::set<std::pair<std::size_t, std::size_t>> pending_;
    StepBudget budget_;
};

void check_rank(const std::vector<FreeVector>& gens, std::size_t rank)
{
    for (const auto& g : gens)
        if (g.size() != rank)
            throw UsageError("generator rank " + std::to_string(g.size()) + " does not match ambient rank "
                             + std::to_string(rank));
}

} // namespace

GroebnerBasis compute_groebner_basis(const Ring& ring, std::size_t rank, const std::vector<FreeVector>& gens)
{
    check_rank(gens, rank);
    Engine eng(ring, rank);
    eng.run(gens);
    return {ring, rank, eng.reduced_basis()};
}

FreeVector normal_form(const FreeVector& v, const GroebnerBasis& gb)
{
    if (v.size() != gb.rank)
        throw UsageError("rank mismatch in normal form");
    Engine eng(gb.ring, gb.rank);
    eng.load_basis(gb.elements);
    return eng.reduce(v, true, gb.rank);
}

LiftedBasis compute_lifted_basis(const Ring& ring, std::size_t rank, const std::vector<FreeVector>& gens,
                                 bool with_syzygies)
{
    check_rank(gens, rank);
    std::size_t k = gens.size();
    std::vector<FreeVector> aug;
    for (std::size_t i = 0; i < k; ++i) {
        FreeVector v = gens[i];
        v.resize(rank + k, Poly(ring));
        v[rank + i] = Poly::constant(ring, 1);
        aug.push_back(std::move(v));
    }
    Engine eng(ring, rank + k, with_syzygies ? SIZE_MAX : rank);
    eng.run(aug);
    LiftedBasis out{ring, rank, k, gens, {}, {}};
    for (auto& v : eng.reduced_basis()) {
        auto p = lead_position(v);
        if (*p < rank)
            out.augmented.push_back(std::move(v));
        else
            out.syzygies.emplace_back(v.begin() + static_cast<long>(rank), v.end());
    }
    return out;
}

std::optional<std::vector<Poly>> lift(const FreeVector& v, const LiftedBasis& lb)
{
    if (v.size() != lb.rank)
        throw UsageError("rank mismatch in lift");
    FreeVector h = v;
    h.resize(lb.rank + lb.ngens, Poly(lb.ring));
    Engine eng(lb.ring, lb.rank + lb.ngens);
    eng.load_basis(lb.augmented);
    FreeVector r = eng.reduce(std::move(h), false, lb.rank);
    // top-reduction stops either at an irreducible head (non-member) or past the basis part
    for (std::size_t i = 0; i < lb.rank; ++i)
        if (!r[i].is_zero())
            return std::nullopt;
    std::vector<Poly> coeffs;
    for (std::size_t i = 0; i < lb.ngens; ++i)
        coeffs.push_back(-r[lb.rank + i]);
    if (combine(lb.ring, lb.rank, lb.gens, coeffs) != v)
        throw InternalError("membership witness does not recombine");
    return coeffs;
}

SubmoduleHandle::SubmoduleHandle(Ring ring, std::size_t rank, std::vector<FreeVector> gens)
    : ring_(std::move(ring)), rank_(rank), gens_(std::move(gens)), cache_(std::make_shared<Cache>())
{
    check_rank(gens_, rank_);
    for (const auto& g : gens_)
        for (const auto& p : g)
            if (p.ring() != ring_)
                throw UsageError("generator over the wrong ring");
}

const LiftedBasis& SubmoduleHandle::witnesses() const
{
    std::call_once(cache_->witness_once,
                   [&] { cache_->witnesses = compute_lifted_basis(ring_, rank_, gens_, false); });
    return *cache_->witnesses;
}

const GroebnerBasis& SubmoduleHandle::basis() const
{
    std::call_once(cache_->gb_once, [&] { cache_->gb = compute_groebner_basis(ring_, rank_, gens_); });
    return *cache_->gb;
}

const LiftedBasis& SubmoduleHandle::lifted() const
{
    std::call_once(cache_->lift_once, [&] { cache_->lifted = compute_lifted_basis(ring_, rank_, gens_); });
    return *cache_->lifted;
}

bool SubmoduleHandle::contains(const FreeVector& v) const
{
    return is_zero(normal_form(v, basis()));
}

bool SubmoduleHandle::contains(const SubmoduleHandle& other) const
{
    for (const auto& g : other.generators())
        if (!contains(g))
            return false;
    return true;
}

bool SubmoduleHandle::operator==(const SubmoduleHandle& other) const
{
    return ring_ == other.ring_ && rank_ == other.rank_ && contains(other) && other.contains(*this);
}

std::string SubmoduleHandle::key() const
{
    std::string s;
    for (const auto& e : basis().elements)
        s += to_string(e) + ";";
    return s;
}

SubmoduleHandle groebner_basis(const SubmoduleHandle& s)
{
    return SubmoduleHandle(s.ring(), s.rank(), s.basis().elements);
}

Membership membership(const FreeVector& v, const SubmoduleHandle& s)
{
    auto w = lift(v, s.witnesses());
    if (!w)
        return {};
    return {true, std::move(*w)};
}

SubmoduleHandle syzygies(const SubmoduleHandle& s)
{
    return SubmoduleHandle(s.ring(), s.generators().size(), s.lifted().syzygies);
}

namespace {

std::vector<FreeVector> as_vectors(const std::vector<Poly>& gens)
{
    std::vector<FreeVector> out;
    for (const auto& g : gens)
        if (!g.is_zero())
            out.push_back(FreeVector{g});
    return out;
}

} // namespace

IdealHandle::IdealHandle(Ring ring, std::vector<Poly> gens)
    : gens_(std::move(gens)), module_(ring, 1, as_vectors(gens_))
{
    if (gens_.empty())
        gens_.push_back(Poly(ring));
}

IdealHandle IdealHandle::unit(const Ring& ring)
{
    return IdealHandle(ring, {Poly::constant(ring, 1)});
}

IdealHandle IdealHandle::zero(const Ring& ring)
{
    return IdealHandle(ring, {Poly(ring)});
}

std::vector<Poly> IdealHandle::basis() const
{
    std::vector<Poly> out;
    for (const auto& e : module_.basis().elements)
        out.push_back(e[0]);
    return out;
}

bool IdealHandle::contains(const Poly& p) const
{
    return module_.contains(FreeVector{p});
}

bool IdealHandle::contains(const IdealHandle& other) const
{
    return module_.contains(other.module_);
}

bool IdealHandle::is_unit() const
{
    return contains(Poly::constant(ring(), 1));
}

bool IdealHandle::is_zero() const
{
    return module_.basis().elements.empty();
}

std::optional<Poly> IdealHandle::principal_generator() const
{
    auto b = basis();
    if (b.empty())
        return Poly(ring());
    if (b.size() == 1)
        return canonical(b[0]);
    return std::nullopt;
}

bool IdealHandle::operator==(const IdealHandle& other) const
{
    return module_ == other.module_;
}

std::string IdealHandle::to_string() const
{
    auto b = basis();
    if (b.empty())
        return "(0)";
    std::string s = "(";
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (i)
            s += ", ";
        s += b[i].to_string();
    }
    return s + ")";
}

IdealHandle colon(const SubmoduleHandle& s, const FreeVector& v)
{
    if (v.size() != s.rank())
        throw UsageError("rank mismatch in colon");
    const Ring& R = s.ring();
    std::vector<FreeVector> gens;
    gens.push_back(v);
    for (const auto& g : s.generators())
        gens.push_back(g);
    LiftedBasis lb = compute_lifted_basis(R, s.rank(), gens);
    std::vector<Poly> ideal;
    for (const auto& syz : lb.syzygies)
        if (!syz[0].is_zero())
            ideal.push_back(syz[0]);
    if (ideal.empty())
        return IdealHandle::zero(R);
    IdealHandle out(R, ideal);
    for (const auto& r : out.basis())
        if (!s.contains(scale(v, r)))
            throw InternalError("colon generator " + r.to_string() + " does not multiply v into S");
    return out;
}

IdealHandle intersect(const std::vector<IdealHandle>& ideals)
{
    if (ideals.empty())
        throw UsageError("intersection of no ideals");
    if (ideals.size() == 1)
        return ideals.front();
    const Ring& R = ideals.front().ring();
    std::size_t t = ideals.size();
    std::vector<FreeVector> gens;
    for (std::size_t j = 0; j < t; ++j)
        for (const auto& g : ideals[j].basis()) {
            FreeVector v = zero_vector(R, t);
            v[j] = g;
            gens.push_back(std::move(v));
        }
    FreeVector ones(t, Poly::constant(R, 1));
    return colon(SubmoduleHandle(R, t, gens), ones);
}

IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b)
{
    std::vector<Poly> gens = a.generators();
    gens.insert(gens.end(), b.generators().begin(), b.generators().end());
    return IdealHandle(a.ring(), gens);
}

} // namespace diagcert
