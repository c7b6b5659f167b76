#include "diagcert/homalg.hpp"

#include <algorithm>
#include <set>

namespace diagcert {

namespace {

std::vector<FreeVector> nonzero(std::vector<FreeVector> vs)
{
    vs.erase(std::remove_if(vs.begin(), vs.end(), [](const FreeVector& v) { return is_zero(v); }), vs.end());
    return vs;
}

std::vector<FreeVector> syz(const Ring& R, std::size_t rank, const std::vector<FreeVector>& gens)
{
    if (gens.empty())
        return {};
    return compute_lifted_basis(R, rank, gens).syzygies;
}

std::vector<FreeVector> project(const std::vector<FreeVector>& vs, std::size_t k)
{
    std::vector<FreeVector> out;
    for (const auto& v : vs) {
        FreeVector p(v.begin(), v.begin() + static_cast<long>(k));
        if (!is_zero(p))
            out.push_back(std::move(p));
    }
    return out;
}

} // namespace

FPModule::FPModule(Ring ring, std::size_t generators, std::vector<FreeVector> relations)
    : ring_(ring), gens_(generators), rels_(ring, generators, nonzero(std::move(relations)))
{
}

FPModule FPModule::from_matrix(const Matrix& m)
{
    return FPModule(m.ring(), m.rows(), m.columns());
}

FPModule FPModule::cyclic(const Ring& ring, const std::vector<Poly>& ideal)
{
    std::vector<FreeVector> rels;
    for (const auto& g : ideal)
        rels.push_back(FreeVector{g});
    return FPModule(ring, 1, rels);
}

Matrix FPModule::presentation() const
{
    return Matrix::from_columns(ring_, gens_, relations());
}

bool FPModule::is_zero() const
{
    for (std::size_t i = 0; i < gens_; ++i)
        if (!is_zero_element(unit_vector(ring_, gens_, i)))
            return false;
    return true;
}

FPModule direct_sum(const FPModule& a, const FPModule& b)
{
    if (a.ring() != b.ring())
        throw UsageError("direct sum of modules over different rings");
    std::size_t g = a.generators() + b.generators();
    std::vector<FreeVector> rels;
    for (const auto& r : a.relations()) {
        FreeVector v = r;
        v.resize(g, Poly(a.ring()));
        rels.push_back(std::move(v));
    }
    for (const auto& r : b.relations()) {
        FreeVector v = zero_vector(a.ring(), a.generators());
        v.insert(v.end(), r.begin(), r.end());
        rels.push_back(std::move(v));
    }
    return FPModule(a.ring(), g, rels);
}

FPModule submodule_presentation(const FPModule& m, const std::vector<FreeVector>& gens)
{
    for (const auto& v : gens)
        if (v.size() != m.generators())
            throw UsageError("submodule generator has the wrong rank");
    std::vector<FreeVector> all = gens;
    all.insert(all.end(), m.relations().begin(), m.relations().end());
    return FPModule(m.ring(), gens.size(), project(syz(m.ring(), m.generators(), all), gens.size()));
}

bool is_well_defined(const ModuleHom& f)
{
    if (f.phi.rows() != f.target.generators() || f.phi.cols() != f.source.generators())
        return false;
    for (const auto& r : f.source.relations())
        if (!f.target.is_zero_element(apply(f, r)))
            return false;
    return true;
}

FreeVector apply(const ModuleHom& f, const FreeVector& x)
{
    if (x.size() != f.phi.cols())
        throw UsageError("element rank does not match homomorphism source");
    FreeVector out = zero_vector(f.phi.ring(), f.phi.rows());
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (x[j].is_zero())
            continue;
        for (std::size_t i = 0; i < out.size(); ++i)
            if (!f.phi.at(i, j).is_zero())
                out[i] += f.phi.at(i, j) * x[j];
    }
    return out;
}

ModuleHom compose(const ModuleHom& g, const ModuleHom& f)
{
    return {f.source, g.target, g.phi * f.phi};
}

std::vector<FreeVector> kernel_generators(const ModuleHom& f)
{
    std::vector<FreeVector> all = f.phi.columns();
    all.insert(all.end(), f.target.relations().begin(), f.target.relations().end());
    return project(syz(f.phi.ring(), f.target.generators(), all), f.source.generators());
}

bool is_injective(const ModuleHom& f)
{
    for (const auto& k : kernel_generators(f))
        if (!f.source.is_zero_element(k))
            return false;
    return true;
}

std::optional<Matrix> surjectivity_witness(const ModuleHom& f)
{
    const Ring& R = f.phi.ring();
    std::size_t g = f.source.generators(), h = f.target.generators();
    std::vector<FreeVector> all = f.phi.columns();
    all.insert(all.end(), f.target.relations().begin(), f.target.relations().end());
    SubmoduleHandle span(R, h, all);
    Matrix psi(R, g, h);
    for (std::size_t i = 0; i < h; ++i) {
        auto mem = membership(unit_vector(R, h, i), span);
        if (!mem.member)
            return std::nullopt;
        for (std::size_t j = 0; j < g; ++j)
            psi.at(j, i) = mem.witness[j];
    }
    return psi;
}

bool equal_as_maps(const ModuleHom& f, const ModuleHom& g)
{
    if (f.phi.rows() != g.phi.rows() || f.phi.cols() != g.phi.cols())
        return false;
    for (std::size_t j = 0; j < f.phi.cols(); ++j)
        if (!f.target.is_zero_element(sub(f.phi.column(j), g.phi.column(j))))
            return false;
    return true;
}

IdealHandle annihilator(const FPModule& m)
{
    const Ring& R = m.ring();
    if (m.generators() == 0)
        return IdealHandle::unit(R);
    std::vector<IdealHandle> colons;
    for (std::size_t i = 0; i < m.generators(); ++i)
        colons.push_back(colon(m.relation_module(), unit_vector(R, m.generators(), i)));
    IdealHandle ann = intersect(colons);
    for (const auto& r : ann.basis())
        for (std::size_t i = 0; i < m.generators(); ++i)
            if (!m.is_zero_element(scale(unit_vector(R, m.generators(), i), r)))
                throw InternalError("annihilator generator " + r.to_string() + " does not kill e" + std::to_string(i + 1));
    return ann;
}

IdealHandle element_annihilator(const FPModule& m, const FreeVector& x)
{
    if (x.size() != m.generators())
        throw UsageError("element rank does not match module");
    return colon(m.relation_module(), x);
}

DualSequence hom_dual_sequence(const Matrix& m)
{
    if (!m.is_square())
        throw UsageError("dual sequence needs a square matrix");
    if (determinant(m).is_zero())
        throw FullRankRequired();
    Matrix t = m.transpose();
    bool hom_zero = syz(m.ring(), m.rows(), t.columns()).empty();
    return {hom_zero, FPModule::from_matrix(t)};
}

FreeResolution free_resolution(const FPModule& m, std::size_t length)
{
    if (length == 0)
        throw UsageError("resolution length must be at least 1");
    const Ring& R = m.ring();
    FreeResolution res{m, {}, false};
    if (m.relations().empty()) {
        res.terminated = true;
        return res;
    }
    res.maps.push_back(m.presentation());
    for (;;) {
        const Matrix& last = res.maps.back();
        auto s = syz(R, last.rows(), last.columns());
        if (s.empty()) {
            res.terminated = true;
            break;
        }
        if (res.maps.size() == length)
            break;
        Matrix d = Matrix::from_columns(R, last.cols(), s);
        if (!(last * d).is_zero())
            throw InternalError("resolution maps do not compose to zero");
        res.maps.push_back(std::move(d));
    }
    return res;
}

FPModule ext(const FPModule& m, std::size_t i)
{
    const Ring& R = m.ring();
    FreeResolution res = free_resolution(m, i + 1);
    if (i > res.maps.size())
        return FPModule::zero(R);
    std::size_t a = i == 0 ? m.generators() : res.maps[i - 1].cols();
    if (a == 0)
        return FPModule::zero(R);
    std::vector<FreeVector> kernel;
    if (res.maps.size() > i) {
        Matrix dt = res.maps[i].transpose();
        kernel = syz(R, dt.rows(), dt.columns());
    } else {
        for (std::size_t k = 0; k < a; ++k)
            kernel.push_back(unit_vector(R, a, k));
    }
    if (kernel.empty())
        return FPModule::zero(R);
    std::vector<FreeVector> all = kernel;
    if (i > 0) {
        auto image = res.maps[i - 1].transpose().columns();
        all.insert(all.end(), image.begin(), image.end());
    }
    return FPModule(R, kernel.size(), project(syz(R, a, all), kernel.size()));
}

std::string Grade::to_string() const
{
    return (at_least ? ">= " : "") + std::to_string(value);
}

Grade grade(const FPModule& m, std::size_t search_limit)
{
    if (search_limit == 0)
        throw UsageError("grade search limit must be at least 1");
    if (m.is_zero())
        return {search_limit + 1, true, true};
    if (m.generators() == m.relations().size()) {
        Matrix p = m.presentation();
        Poly d = determinant(p);
        if (!d.is_zero() && !is_unit(d))
            return {1, false, false};
    }
    for (std::size_t i = 0; i <= search_limit; ++i)
        if (!ext(m, i).is_zero())
            return {i, false, false};
    return {search_limit + 1, true, false};
}

std::vector<ModuleHom> hom_module(const FPModule& m, const FPModule& n)
{
    if (m.ring() != n.ring())
        throw UsageError("Hom between modules over different rings");
    const Ring& R = m.ring();
    std::size_t g = m.generators(), h = n.generators();
    if (g == 0 || h == 0)
        return {};
    const auto& A = m.relations();
    const auto& B = n.relations();
    std::size_t r = A.size(), b = B.size();
    std::vector<Matrix> phis;
    if (r == 0) {
        for (std::size_t p = 0; p < h; ++p)
            for (std::size_t q = 0; q < g; ++q) {
                Matrix e(R, h, g);
                e.at(p, q) = Poly::constant(R, 1);
                phis.push_back(std::move(e));
            }
    } else {
        // unknowns Phi (h x g) and Y (b x r) with Phi * A - B * Y = 0, flattened at (p, j) -> p * r + j
        std::vector<FreeVector> cols;
        for (std::size_t p = 0; p < h; ++p)
            for (std::size_t q = 0; q < g; ++q) {
                FreeVector v = zero_vector(R, h * r);
                for (std::size_t j = 0; j < r; ++j)
                    v[p * r + j] = A[j][q];
                cols.push_back(std::move(v));
            }
        for (std::size_t k = 0; k < b; ++k)
            for (std::size_t j = 0; j < r; ++j) {
                FreeVector v = zero_vector(R, h * r);
                for (std::size_t p = 0; p < h; ++p)
                    v[p * r + j] = -B[k][p];
                cols.push_back(std::move(v));
            }
        for (const auto& s : syz(R, h * r, cols)) {
            Matrix phi(R, h, g);
            for (std::size_t p = 0; p < h; ++p)
                for (std::size_t q = 0; q < g; ++q)
                    phi.at(p, q) = s[p * g + q];
            phis.push_back(std::move(phi));
        }
    }
    const GroebnerBasis& gb = n.relation_module().basis();
    std::vector<ModuleHom> out;
    std::set<std::string> seen;
    for (auto& phi : phis) {
        Matrix red(R, h, g);
        for (std::size_t q = 0; q < g; ++q) {
            FreeVector c = normal_form(phi.column(q), gb);
            for (std::size_t p = 0; p < h; ++p)
                red.at(p, q) = c[p];
        }
        if (red.is_zero() || !seen.insert(red.to_string()).second)
            continue;
        ModuleHom f{m, n, red};
        if (!is_well_defined(f))
            throw InternalError("Hom generator is not well defined");
        out.push_back(std::move(f));
    }
    return out;
}

std::vector<Poly> coefficient_pool(const Ring& ring, const Bounds& bounds)
{
    std::vector<Exponents> monos;
    std::size_t n = ring.nvars();
    Exponents e(n, 0);
    // all exponent vectors of total degree <= bound
    auto rec = [&](auto&& self, std::size_t var, unsigned left) -> void {
        if (var == n) {
            monos.push_back(e);
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[var] = k;
            self(self, var + 1, left - k);
        }
        e[var] = 0;
    };
    rec(rec, 0, n == 0 ? 0 : bounds.degree);
    std::sort(monos.begin(), monos.end(), [&](const Exponents& a, const Exponents& b) {
        if (total_degree(a) != total_degree(b))
            return total_degree(a) < total_degree(b);
        return ring.compare(a, b) > 0;
    });
    std::vector<Poly> out;
    std::set<std::string> seen;
    for (const auto& m : monos)
        for (unsigned c = 1; c <= bounds.height; ++c)
            for (int sgn : {1, -1}) {
                Poly p = Poly::monomial(ring, m, ring.normalize(Coeff(static_cast<long>(c) * sgn)));
                if (p.is_zero() || !seen.insert(p.to_string()).second)
                    continue;
                out.push_back(std::move(p));
            }
    return out;
}

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::Yes:
        return "Yes";
    case Verdict::No:
        return "No";
    case Verdict::Unknown:
        return "Unknown";
    }
    return "";
}

} // namespace diagcert
