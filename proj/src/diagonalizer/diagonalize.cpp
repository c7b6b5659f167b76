#include "diagcert/diagonalizer.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>

#include "diagcert/testkit.hpp"

namespace diagcert {

namespace {

// Quotient of b by a under repeated leading-term division; terms that do not divide are skipped.
Poly division_quotient(const Poly& b, const Poly& a)
{
    const Ring& R = a.ring();
    Poly q(R), r = b;
    const auto la = a.leading();
    for (int guard = 0; !r.is_zero() && guard < 64; ++guard) {
        const auto lt = r.leading();
        Coeff c = 0;
        if (divides(la.exp, lt.exp))
            c = R.cdivides(la.coeff, lt.coeff) ? R.cdiv_exact(lt.coeff, la.coeff) : R.cquotient(lt.coeff, la.coeff);
        if (c == 0) {
            r -= Poly::monomial(R, lt.exp, lt.coeff);
            continue;
        }
        Exponents e = exp_sub(lt.exp, la.exp);
        q.add_multiple(Poly::constant(R, 1), e, c);
        r.add_multiple(a, e, R.cneg(c));
    }
    return q;
}

constexpr std::size_t kMembershipTerms = 16;

// Matrix plus the operations applied since the parent search node.
struct Tracker {
    Matrix a;
    std::vector<ElementaryOp> ops;

    void apply(const ElementaryOp& op)
    {
        a = apply_elementary(a, op);
        ops.push_back(op);
    }
};

struct Node {
    Tracker tr;
    std::size_t t = 0;
    std::uint64_t potential = 0;
    std::size_t parent = SIZE_MAX;
};

bool block_diagonal(const Matrix& a, std::size_t t)
{
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j)
            if (i != j && !a.at(i, j).is_zero())
                return false;
    return true;
}

std::uint64_t potential(const Matrix& a, std::size_t t)
{
    std::uint64_t p = 0;
    for (std::size_t i = t; i < a.rows(); ++i)
        for (std::size_t j = t; j < a.cols(); ++j)
            p += a.at(i, j).weight() * (i == j ? 1 : 2);
    return p;
}

// Moves the entry (i, j) of the active block to (t, t).
void bring_to_corner(Tracker& b, std::size_t t, std::size_t i, std::size_t j)
{
    if (i != t)
        b.apply(ElementaryOp::swap(Side::Row, t, i));
    if (j != t)
        b.apply(ElementaryOp::swap(Side::Column, t, j));
}

// Clears row and column t using the corner entry, which must divide them.
void clear_corner(Tracker& b, std::size_t t)
{
    std::size_t n = b.a.rows();
    Poly c = b.a.at(t, t);
    for (std::size_t k = t + 1; k < n; ++k) {
        Poly v = b.a.at(k, t);
        if (v.is_zero())
            continue;
        auto q = exact_divide(v, c);
        if (!q)
            throw InternalError("corner does not divide its column");
        b.apply(ElementaryOp::add(Side::Row, k, t, -*q));
    }
    for (std::size_t l = t + 1; l < n; ++l) {
        Poly v = b.a.at(t, l);
        if (v.is_zero())
            continue;
        auto q = exact_divide(v, c);
        if (!q)
            throw InternalError("corner does not divide its row");
        b.apply(ElementaryOp::add(Side::Column, l, t, -*q));
    }
}

// Greedily pivots on unit entries.
void unit_closure(Node& s)
{
    std::size_t n = s.tr.a.rows();
    const Ring R = s.tr.a.ring();
    while (s.t + 1 < n && !block_diagonal(s.tr.a, s.t)) {
        std::optional<std::pair<std::size_t, std::size_t>> hit;
        for (std::size_t i = s.t; i < n && !hit; ++i)
            for (std::size_t j = s.t; j < n && !hit; ++j)
                if (!s.tr.a.at(i, j).is_zero() && is_unit(s.tr.a.at(i, j)))
                    hit = std::make_pair(i, j);
        if (!hit)
            break;
        bring_to_corner(s.tr, s.t, hit->first, hit->second);
        Coeff u = s.tr.a.at(s.t, s.t).leading_coeff();
        if (u != 1)
            s.tr.apply(ElementaryOp::scale(Side::Row, s.t, Poly::constant(R, R.cinv(u))));
        clear_corner(s.tr, s.t);
        ++s.t;
    }
}

bool finished(const Node& s)
{
    return s.t + 1 >= s.tr.a.rows() || block_diagonal(s.tr.a, s.t);
}

struct Child {
    Tracker tr;
    bool must_descend; // dropped unless it lowers the potential or finishes a pivot
};

// Moves entry (i, j) to each target u: column ops C_j += c_l C_l, then row ops R_i += r_k R_k,
// with the c_l, r_k read off a membership witness of u - a_ij in the ideal of the other entries.
void membership_moves(const Matrix& a, std::size_t t, std::size_t i, std::size_t j, std::vector<Child>& out)
{
    const Ring& R = a.ring();
    std::size_t n = a.rows();
    std::vector<Poly> gens;
    std::vector<std::pair<Side, std::size_t>> where;
    for (std::size_t l = t; l < n; ++l)
        if (l != j && !a.at(i, l).is_zero()) {
            gens.push_back(a.at(i, l));
            where.push_back({Side::Column, l});
        }
    for (std::size_t k = t; k < n; ++k)
        if (k != i && !a.at(k, j).is_zero()) {
            gens.push_back(a.at(k, j));
            where.push_back({Side::Row, k});
        }
    if (gens.empty())
        return;
    // Lifting with cofactors blows up on large entries; leave those to the cheaper moves.
    std::size_t terms = a.at(i, j).size();
    for (const auto& g : gens)
        terms += g.size();
    if (terms > kMembershipTerms)
        return;
    std::vector<FreeVector> cols;
    for (const auto& g : gens)
        cols.push_back({g});
    SubmoduleHandle I(R, 1, cols);
    for (long u : {1L, -1L, 0L}) {
        if (u == 0 && (i == j || a.at(i, j).is_zero()))
            continue;
        Membership mem = membership({Poly::constant(R, u) - a.at(i, j)}, I);
        if (!mem.member)
            continue;
        Tracker b{a, {}};
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (where[k].first == Side::Column && !mem.witness[k].is_zero())
                b.apply(ElementaryOp::add(Side::Column, j, where[k].second, mem.witness[k]));
        for (std::size_t k = 0; k < gens.size(); ++k)
            if (where[k].first == Side::Row && !mem.witness[k].is_zero())
                b.apply(ElementaryOp::add(Side::Row, i, where[k].second, mem.witness[k]));
        out.push_back({std::move(b), false});
    }
}

std::vector<Child> children(const Node& s, const std::vector<Poly>& pool)
{
    const Matrix& a = s.tr.a;
    std::size_t n = a.rows(), t = s.t;
    std::vector<Child> out;

    for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j)
            membership_moves(a, t, i, j, out);

    for (Side side : {Side::Row, Side::Column})
        for (std::size_t line = t; line < n; ++line)
            for (std::size_t src = t; src < n; ++src)
                for (std::size_t tgt = t; tgt < n; ++tgt) {
                    if (src == tgt)
                        continue;
                    const Poly& p = side == Side::Row ? a.at(src, line) : a.at(line, src);
                    const Poly& v = side == Side::Row ? a.at(tgt, line) : a.at(line, tgt);
                    if (p.is_zero() || v.is_zero())
                        continue;
                    Poly q = division_quotient(v, p);
                    if (q.is_zero())
                        continue;
                    Tracker b{a, {}};
                    b.apply(ElementaryOp::add(side, tgt, src, -q));
                    out.push_back({std::move(b), true});
                }

    for (Side side : {Side::Row, Side::Column})
        for (std::size_t src = t; src < n; ++src)
            for (std::size_t tgt = t; tgt < n; ++tgt) {
                if (src == tgt)
                    continue;
                for (const auto& c : pool) {
                    Tracker b{a, {}};
                    b.apply(ElementaryOp::add(side, tgt, src, c));
                    out.push_back({std::move(b), true});
                }
            }
    return out;
}

// Divisor pivots: an entry dividing its whole row and column of the block.
std::vector<Node> divisor_pivots(const Node& s)
{
    const Matrix& a = s.tr.a;
    std::size_t n = a.rows(), t = s.t;
    std::vector<Node> out;
    for (std::size_t i = t; i < n; ++i)
        for (std::size_t j = t; j < n; ++j) {
            const Poly& p = a.at(i, j);
            if (p.is_zero())
                continue;
            bool ok = true;
            for (std::size_t l = t; l < n && ok; ++l)
                ok = divides(p, a.at(i, l)) && divides(p, a.at(l, j));
            if (!ok)
                continue;
            Node c{Tracker{a, {}}, t, 0, SIZE_MAX};
            bring_to_corner(c.tr, t, i, j);
            clear_corner(c.tr, t);
            ++c.t;
            out.push_back(std::move(c));
        }
    return out;
}

std::optional<EquivalenceCertificate> search_diagonal(const Matrix& m, const Bounds& bounds, std::size_t budget,
                                                      std::size_t& nodes)
{
    std::vector<Poly> pool =
        coefficient_pool(m.ring(), Bounds{std::min(bounds.degree, 1U), std::min(bounds.height, 2U), 0});
    std::vector<Node> arena;
    // Smaller potential first, then larger t, then creation order.
    auto worse = [&](std::size_t x, std::size_t y) {
        const Node& a = arena[x];
        const Node& b = arena[y];
        if (a.potential != b.potential)
            return a.potential > b.potential;
        if (a.t != b.t)
            return a.t < b.t;
        return x > y;
    };
    std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(worse)> open(worse);
    std::set<std::string> seen;

    auto replay = [&](std::size_t idx) {
        std::vector<std::size_t> chain;
        for (std::size_t k = idx; k != SIZE_MAX; k = arena[k].parent)
            chain.push_back(k);
        CertificateBuilder b(m);
        for (auto it = chain.rbegin(); it != chain.rend(); ++it)
            for (const auto& op : arena[*it].tr.ops)
                b.apply(op);
        if (b.current() != arena[idx].tr.a)
            throw InternalError("replayed transcript does not reach the search state");
        return b.certificate();
    };

    // Returns the index of a finished node.
    auto push = [&](Node s, std::size_t parent, bool must_descend) -> std::optional<std::size_t> {
        unit_closure(s);
        s.potential = potential(s.tr.a, s.t);
        if (must_descend && s.t == arena[parent].t && s.potential >= arena[parent].potential)
            return std::nullopt;
        std::string key = std::to_string(s.t) + "|" + s.tr.a.to_string();
        if (!seen.insert(key).second)
            return std::nullopt;
        s.parent = parent;
        arena.push_back(std::move(s));
        std::size_t idx = arena.size() - 1;
        if (finished(arena[idx]))
            return idx;
        open.push(idx);
        return std::nullopt;
    };

    if (auto done = push(Node{Tracker{m, {}}, 0, 0, SIZE_MAX}, SIZE_MAX, false))
        return replay(*done);
    while (!open.empty() && nodes < budget) {
        std::size_t cur = open.top();
        open.pop();
        ++nodes;
        for (auto& c : divisor_pivots(arena[cur]))
            if (auto done = push(std::move(c), cur, false))
                return replay(*done);
        for (auto& c : children(arena[cur], pool))
            if (auto done = push(Node{std::move(c.tr), arena[cur].t, 0, SIZE_MAX}, cur, c.must_descend))
                return replay(*done);
    }
    return std::nullopt;
}

std::vector<Poly> sorted_entries(std::vector<Poly> d)
{
    for (auto& p : d)
        p = canonical(p);
    std::sort(d.begin(), d.end(), [](const Poly& a, const Poly& b) { return canonical_compare(a, b) < 0; });
    return d;
}

// Multisets of n divisors of det whose product is det up to a unit.
std::optional<std::vector<std::vector<Poly>>> candidate_diagonals(const Factorization& f, std::size_t n,
                                                                  std::size_t cap)
{
    const Ring& R = f.factors.front().first.ring();
    std::vector<std::vector<Poly>> tuples{std::vector<Poly>(n, Poly::constant(R, 1))};
    for (const auto& [p, e] : f.factors) {
        // Exponent vectors of length n summing to e.
        std::vector<std::vector<unsigned>> comps;
        std::vector<unsigned> cur(n, 0);
        auto rec = [&](auto&& self, std::size_t slot, unsigned left) -> void {
            if (slot + 1 == n) {
                cur[slot] = left;
                comps.push_back(cur);
                return;
            }
            for (unsigned k = 0; k <= left; ++k) {
                cur[slot] = k;
                self(self, slot + 1, left - k);
            }
        };
        rec(rec, 0, e);
        std::map<std::string, std::vector<Poly>> next;
        for (const auto& tpl : tuples)
            for (const auto& c : comps) {
                std::vector<Poly> d = tpl;
                for (std::size_t i = 0; i < n; ++i)
                    if (c[i])
                        d[i] *= p.pow(c[i]);
                d = sorted_entries(std::move(d));
                std::string key;
                for (const auto& x : d)
                    key += x.to_string() + ";";
                next.emplace(key, std::move(d));
                if (next.size() > cap)
                    return std::nullopt;
            }
        tuples.clear();
        for (auto& [k, v] : next)
            tuples.push_back(std::move(v));
    }
    std::sort(tuples.begin(), tuples.end(), [](const std::vector<Poly>& a, const std::vector<Poly>& b) {
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = canonical_compare(a[i], b[i]);
            if (c != 0)
                return c < 0;
        }
        return false;
    });
    return tuples;
}

IdealHandle diagonal_fitting(const Ring& R, const std::vector<Poly>& d, std::size_t k)
{
    if (k == 0)
        return IdealHandle::unit(R);
    std::vector<Poly> gens;
    for (const auto& s : combinations(d.size(), k)) {
        Poly p = Poly::constant(R, 1);
        for (auto i : s)
            p *= d[i];
        gens.push_back(p);
    }
    return IdealHandle(R, gens);
}

std::optional<CandidateMismatch> mismatch(const std::vector<IdealHandle>& fm, const std::vector<Poly>& d)
{
    const Ring& R = fm.front().ring();
    for (std::size_t k = 1; k < d.size(); ++k) {
        IdealHandle fd = diagonal_fitting(R, d, k);
        if (fd == fm[k])
            continue;
        CandidateMismatch c{d, k, fm[k].basis(), fd.basis(), std::nullopt, true};
        for (const auto& g : c.ideal_m)
            if (!fd.contains(g)) {
                c.witness = g;
                c.witness_in_m = true;
                break;
            }
        if (!c.witness)
            for (const auto& g : c.ideal_candidate)
                if (!fm[k].contains(g)) {
                    c.witness = g;
                    c.witness_in_m = false;
                    break;
                }
        if (!c.witness)
            throw InternalError("unequal ideals without a separating basis element");
        return c;
    }
    return std::nullopt;
}

std::vector<IdealHandle> matrix_fitting(const Matrix& m)
{
    std::vector<IdealHandle> out;
    for (std::size_t k = 0; k <= m.rows(); ++k)
        out.push_back(fitting_ideal(m, k));
    return out;
}

std::string diag_text(const std::vector<Poly>& d)
{
    std::string s = "diag(";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? ", " : "") + d[i].to_string();
    return s + ")";
}

} // namespace

bool reverify(const ObstructionRecord& o, const Matrix& m)
{
    if (!m.is_square() || o.candidates.empty())
        return false;
    Poly det = determinant(m);
    if (det != o.det || !o.factorization.complete || o.factorization.factors.empty())
        return false;
    if (o.factorization.product() != det)
        return false;
    for (const auto& [p, e] : o.factorization.factors) {
        if (e == 0 || is_unit(p))
            return false;
        Factorization fp = factor(p);
        if (!fp.complete || fp.factors.size() != 1 || fp.factors.front().second != 1)
            return false;
    }
    auto cands = candidate_diagonals(o.factorization, m.rows(), 1000000);
    if (!cands || cands->size() != o.candidates.size())
        return false;
    for (std::size_t i = 0; i < cands->size(); ++i) {
        const CandidateMismatch& c = o.candidates[i];
        if ((*cands)[i] != c.diagonal || c.k == 0 || c.k >= m.rows() || !c.witness)
            return false;
        IdealHandle im = fitting_ideal(m, c.k);
        IdealHandle id = diagonal_fitting(m.ring(), c.diagonal, c.k);
        if (im != IdealHandle(m.ring(), c.ideal_m) || id != IdealHandle(m.ring(), c.ideal_candidate))
            return false;
        bool in_m = im.contains(*c.witness), in_d = id.contains(*c.witness);
        if (c.witness_in_m ? !(in_m && !in_d) : !(in_d && !in_m))
            return false;
    }
    return true;
}

EquivalenceCertificate transpose_certificate_from_diagonal(const EquivalenceCertificate& cert)
{
    Verification v = verify_certificate(cert);
    if (!v.valid)
        throw UsageError("certificate does not verify: " + v.reason);
    if (!cert.target.is_square() || !cert.target.is_diagonal())
        throw UsageError("certificate target is not a square diagonal matrix");
    auto qt_inv = inverse(cert.right.transpose());
    auto pt_inv = inverse(cert.left.transpose());
    if (!qt_inv || !pt_inv)
        throw InternalError("transforms of a verified certificate are not invertible");
    EquivalenceCertificate out{cert.source, *qt_inv * cert.left, cert.right * *pt_inv, cert.source.transpose(), {}};
    if (!verify_certificate(out).valid)
        throw InternalError("derived transpose certificate failed verification");
    return out;
}

DiagonalizeResult diagonalize(const Matrix& m, const Bounds& bounds)
{
    if (!m.is_square())
        throw FullRankRequired();
    Poly det = determinant(m);
    if (det.is_zero())
        throw FullRankRequired();
    const Ring& R = m.ring();
    std::size_t n = m.rows();
    auto& audit = testkit::SoundnessAudit::instance();
    DiagonalizeResult res;

    auto accept = [&](EquivalenceCertificate cert, std::string method) {
        bool ok = verify_certificate(cert).valid && cert.target.is_diagonal();
        audit.record_yes("diagonalize", ok);
        if (!ok)
            throw InternalError("diagonal certificate failed verification");
        res.verdict = Verdict::Yes;
        res.certificate = std::move(cert);
        res.method = std::move(method);
        for (const auto& d : res.certificate->target.diagonal_entries())
            if (is_unit(d) && n > 1) {
                res.note = "diagonal contains unit entries (zero summands)";
                break;
            }
        return res;
    };

    if (m.is_diagonal())
        return accept({m, Matrix::identity(R, n), Matrix::identity(R, n), m, {}}, "already diagonal");
    if (R.is_euclidean())
        return accept(smith_normal_form(m).certificate, "smith");
    if (is_unit(det)) {
        auto inv = inverse(m);
        if (!inv)
            throw InternalError("unit determinant without an inverse");
        return accept({m, *inv, Matrix::identity(R, n), Matrix::identity(R, n), {}}, "unit determinant");
    }

    // No-path: every diagonal with the right determinant is separated by a Fitting ideal.
    std::size_t no_budget = std::max<std::size_t>(bounds.candidates * 3 / 10, 1);
    std::size_t yes_budget = std::max<std::size_t>(bounds.candidates - bounds.candidates * 3 / 10, 1);
    Factorization f = factor(det);
    std::string no_note;
    if (!f.complete) {
        no_note = "factorization of the determinant is incomplete, so no obstruction can be certified";
    } else if (auto cands = candidate_diagonals(f, n, no_budget)) {
        std::vector<IdealHandle> fm = matrix_fitting(m);
        ObstructionRecord rec{det, f, {}};
        for (const auto& d : *cands) {
            auto c = mismatch(fm, d);
            if (!c) {
                no_note = "candidate " + diag_text(d) + " matches every Fitting ideal of m";
                break;
            }
            rec.candidates.push_back(std::move(*c));
        }
        if (no_note.empty()) {
            bool ok = reverify(rec, m);
            audit.record_no("diagonalize", ok);
            if (!ok)
                throw InternalError("diagonal obstruction failed re-verification");
            res.verdict = Verdict::No;
            res.obstruction = std::move(rec);
            res.method = "fitting obstruction";
            return res;
        }
    } else {
        no_note = "more than " + std::to_string(no_budget) + " candidate diagonals";
    }

    if (auto cert = search_diagonal(m, bounds, yes_budget, res.nodes))
        return accept(std::move(*cert), "search");
    res.note = no_note + "; search exhausted " + std::to_string(res.nodes) + " of " + std::to_string(yes_budget) +
               " nodes";
    return res;
}

} // namespace diagcert
