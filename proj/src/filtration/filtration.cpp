#include "diagcert/filtration.hpp"

#include <algorithm>

namespace diagcert {

namespace {

const char* kReading =
    "minimal = inclusion-minimal among sampled quotient annihilators lying in L(M); "
    "L(M) = the exact element annihilators Ann(x) of sampled x";

bool ideal_less(const IdealHandle& a, const IdealHandle& b)
{
    auto ba = a.basis(), bb = b.basis();
    for (std::size_t i = 0; i < std::min(ba.size(), bb.size()); ++i) {
        int c = canonical_compare(ba[i], bb[i]);
        if (c != 0)
            return c < 0;
    }
    return ba.size() < bb.size();
}

bool strictly_inside(const IdealHandle& a, const IdealHandle& b)
{
    return b.contains(a) && !a.contains(b);
}

std::vector<FreeVector> with(std::vector<FreeVector> gens, const FreeVector& x)
{
    gens.push_back(x);
    return gens;
}

} // namespace

bool AnnihilatorSample::contains(const IdealHandle& ideal) const
{
    for (const auto& e : entries)
        if (e.annihilator == ideal)
            return true;
    return false;
}

std::vector<FreeVector> sample_elements(const FPModule& m, const Bounds& bounds)
{
    const Ring& R = m.ring();
    unsigned height = R.field_coefficients() ? 1U : bounds.height;
    std::vector<Poly> pool = coefficient_pool(R, Bounds{std::min(bounds.degree, 1U), height, 0});
    std::size_t g = m.generators();
    std::vector<FreeVector> out{zero_vector(R, g)};
    // Odometer over (0 | pool)^g, first coordinate fastest; keep vectors whose first nonzero entry has a canonical leading coefficient.
    std::vector<std::size_t> idx(g, 0);
    while (g > 0) {
        std::size_t k = 0;
        while (k < g && ++idx[k] > pool.size())
            idx[k++] = 0;
        if (k == g)
            break;
        FreeVector v = zero_vector(R, g);
        bool lead = true, keep = true;
        for (std::size_t i = 0; i < g; ++i) {
            if (idx[i] == 0)
                continue;
            v[i] = pool[idx[i] - 1];
            if (lead) {
                keep = R.ccanonical_unit(v[i].leading_coeff()) == 1;
                lead = false;
            }
        }
        if (keep)
            out.push_back(std::move(v));
    }
    return out;
}

AnnihilatorSample sample_lattice(const FPModule& m, const Bounds& bounds)
{
    AnnihilatorSample s{m, bounds, {}, 0};
    for (const auto& x : sample_elements(m, bounds)) {
        ++s.elements_tried;
        IdealHandle I = element_annihilator(m, x);
        if (s.contains(I))
            continue;
        s.entries.push_back({x, I, I.principal_generator()});
    }
    return s;
}

FPModule quotient_presentation(const FPModule& m, const std::vector<FreeVector>& sub_generators)
{
    std::vector<FreeVector> rels = m.relations();
    for (const auto& v : sub_generators) {
        if (v.size() != m.generators())
            throw UsageError("submodule generator has the wrong length");
        rels.push_back(v);
    }
    return FPModule(m.ring(), m.generators(), std::move(rels));
}

std::vector<FreeVector> CyclicFiltration::generators(std::size_t i) const
{
    if (i > steps.size())
        throw UsageError("filtration index out of range");
    std::vector<FreeVector> out;
    for (std::size_t k = 0; k < i; ++k)
        out.push_back(steps[k].generator);
    return out;
}

FiltrationCheck verify_filtration(const CyclicFiltration& f, const AnnihilatorSample* lattice)
{
    const FPModule& M = f.module;
    for (std::size_t i = 0; i < f.steps.size(); ++i) {
        const auto& st = f.steps[i];
        FPModule Q = quotient_presentation(M, f.generators(i));
        if (Q.is_zero_element(st.generator))
            return {false, "step " + std::to_string(i + 1) + " is not a strict inclusion"};
        IdealHandle I = element_annihilator(Q, st.generator);
        if (I != st.ideal)
            return {false, "step " + std::to_string(i + 1) + " quotient has annihilator " + I.to_string() +
                               ", not " + st.ideal.to_string()};
        if (lattice && !lattice->contains(st.ideal))
            return {false, "step " + std::to_string(i + 1) + " ideal " + st.ideal.to_string() + " is not in L(M)"};
    }
    if (!quotient_presentation(M, f.generators(f.steps.size())).is_zero())
        return {false, "the last submodule is not all of M"};
    return {true, ""};
}

namespace {

class Searcher {
public:
    Searcher(const FPModule& m, const Bounds& bounds)
        : m_(m), bounds_(bounds), elements_(sample_elements(m, bounds)),
          out_{std::nullopt, {}, sample_lattice(m, bounds), 0, false, kReading}
    {
    }

    FiltrationSearch run()
    {
        std::vector<FiltrationStep> steps;
        if (dfs({}, steps))
            out_.filtration = CyclicFiltration{m_, steps, kReading};
        return std::move(out_);
    }

private:
    struct Candidate {
        FreeVector element;
        IdealHandle ideal;
        bool viable;
    };

    bool spend()
    {
        if (out_.nodes >= bounds_.candidates) {
            out_.budget_exhausted = true;
            return false;
        }
        ++out_.nodes;
        return true;
    }

    bool cyclic(const std::vector<FreeVector>& gens)
    {
        FPModule Q = quotient_presentation(m_, gens);
        if (Q.is_zero())
            return true;
        for (const auto& y : elements_)
            if (!Q.is_zero_element(y) && quotient_presentation(m_, with(gens, y)).is_zero())
                return true;
        return false;
    }

    void reject(const std::vector<FreeVector>& prefix, const Candidate& c, std::string reason)
    {
        auto gens = with(prefix, c.element);
        FPModule rest = quotient_presentation(m_, gens);
        out_.rejected.push_back({prefix, c.element, c.ideal, std::move(reason), annihilator(rest), cyclic(gens)});
    }

    bool dfs(const std::vector<FreeVector>& prefix, std::vector<FiltrationStep>& steps)
    {
        FPModule Q = quotient_presentation(m_, prefix);
        if (Q.is_zero())
            return true;
        std::vector<Candidate> cands;
        std::vector<SubmoduleHandle> seen;
        for (const auto& x : elements_) {
            if (Q.is_zero_element(x))
                continue;
            SubmoduleHandle next(m_.ring(), m_.generators(), with(Q.relations(), x));
            bool dup = false;
            for (const auto& s : seen)
                if (s == next) {
                    dup = true;
                    break;
                }
            if (dup)
                continue;
            if (!spend())
                return false;
            seen.push_back(next);
            IdealHandle I = element_annihilator(Q, x);
            bool viable = out_.lattice.contains(I);
            cands.push_back({x, I, viable});
        }

        // Distinct ideals in tie-break order, with their first element.
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < cands.size(); ++i) {
            bool fresh = true;
            for (auto r : reps)
                if (cands[r].ideal == cands[i].ideal)
                    fresh = false;
            if (fresh)
                reps.push_back(i);
        }
        std::stable_sort(reps.begin(), reps.end(),
                         [&](std::size_t a, std::size_t b) { return ideal_less(cands[a].ideal, cands[b].ideal); });

        std::vector<std::size_t> minimal;
        for (auto r : reps) {
            const auto& c = cands[r];
            if (!c.viable) {
                reject(prefix, c, c.ideal.to_string() + " is not an element annihilator of M");
                continue;
            }
            std::optional<std::size_t> smaller;
            for (auto o : reps)
                if (cands[o].viable && strictly_inside(cands[o].ideal, c.ideal)) {
                    smaller = o;
                    break;
                }
            if (smaller)
                reject(prefix, c,
                       "not minimal: " + cands[*smaller].ideal.to_string() + " is viable and strictly smaller");
            else
                minimal.push_back(r);
        }

        for (auto r : minimal) {
            std::vector<std::string> evidence{"no sampled viable annihilator is strictly inside " +
                                              cands[r].ideal.to_string()};
            for (auto o : reps)
                if (o != r && cands[o].viable)
                    evidence.push_back("compared with " + cands[o].ideal.to_string());
            for (const auto& c : cands) {
                if (!c.viable || c.ideal != cands[r].ideal)
                    continue;
                steps.push_back({c.element, c.ideal, evidence});
                if (dfs(with(prefix, c.element), steps))
                    return true;
                steps.pop_back();
                if (out_.budget_exhausted)
                    return false;
                reject(prefix, c, "minimal, but no admissible continuation within bounds");
            }
        }
        return false;
    }

    const FPModule& m_;
    Bounds bounds_;
    std::vector<FreeVector> elements_;
    FiltrationSearch out_;
};

} // namespace

FiltrationSearch search_minimal_cyclic_filtration(const FPModule& m, const Bounds& bounds)
{
    return Searcher(m, bounds).run();
}

CyclicFiltration filtration_from_decomposition(const Ring& ring, const std::vector<Poly>& lambdas)
{
    std::size_t n = lambdas.size();
    std::vector<FreeVector> rels;
    for (std::size_t i = 0; i < n; ++i) {
        if (lambdas[i].is_zero())
            throw UsageError("decomposition entries must be nonzero");
        rels.push_back(scale(unit_vector(ring, n, i), lambdas[i]));
    }
    FPModule M(ring, n, rels);
    std::vector<std::size_t> left;
    for (std::size_t i = 0; i < n; ++i)
        if (!is_unit(lambdas[i]))
            left.push_back(i);

    // Peel from the top: a summand whose ideal is minimal among the remaining ones.
    std::vector<FiltrationStep> top_down;
    while (!left.empty()) {
        std::size_t best = left.size();
        for (std::size_t a = 0; a < left.size(); ++a) {
            const Poly& la = lambdas[left[a]];
            bool minimal = true;
            for (std::size_t b = 0; b < left.size() && minimal; ++b)
                if (b != a && divides(la, lambdas[left[b]]) && !divides(lambdas[left[b]], la))
                    minimal = false;
            if (!minimal)
                continue;
            if (best == left.size() || canonical_compare(canonical(la), canonical(lambdas[left[best]])) < 0)
                best = a;
        }
        std::size_t j = left[best];
        std::vector<std::string> evidence;
        for (auto i : left)
            if (i != j)
                evidence.push_back("(" + lambdas[i].to_string() + ") is not strictly inside (" +
                                   lambdas[j].to_string() + ")");
        top_down.push_back({unit_vector(ring, n, j), IdealHandle(ring, {canonical(lambdas[j])}), evidence});
        left.erase(left.begin() + static_cast<std::ptrdiff_t>(best));
    }
    std::reverse(top_down.begin(), top_down.end());
    return CyclicFiltration{M, top_down, "decomposition: peel a summand with minimal (lambda_j) at each step"};
}

} // namespace diagcert
