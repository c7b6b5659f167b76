#ifndef DIAGCERT_GROEBNER_HPP
#define DIAGCERT_GROEBNER_HPP

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "diagcert/rings.hpp"

namespace diagcert {

/// Element of R^rank, stored densely (ranks are tiny).
using FreeVector = std::vector<Poly>;

FreeVector zero_vector(const Ring& ring, std::size_t rank);
FreeVector unit_vector(const Ring& ring, std::size_t rank, std::size_t index);
bool is_zero(const FreeVector& v);
FreeVector add(const FreeVector& a, const FreeVector& b);
FreeVector sub(const FreeVector& a, const FreeVector& b);
FreeVector scale(const FreeVector& v, const Poly& c);
/// Sum of coeffs[i] * vs[i].
FreeVector combine(const Ring& ring, std::size_t rank, const std::vector<FreeVector>& vs,
                   const std::vector<Poly>& coeffs);
std::string to_string(const FreeVector& v);

/// Global step budget; DIAGCERT_BUDGET overrides the default of 10^6.
std::uint64_t default_step_budget();
void set_default_step_budget(std::uint64_t steps);

/// Counts reduction steps and throws ResourceError when exhausted.
class StepBudget {
public:
    explicit StepBudget(std::uint64_t max = default_step_budget()) : max_(max) {}
    void spend(std::uint64_t n = 1)
    {
        used_ += n;
        if (used_ > max_)
            throw ResourceError("step budget of " + std::to_string(max_) + " reductions exhausted");
    }
    std::uint64_t used() const { return used_; }

private:
    std::uint64_t max_;
    std::uint64_t used_ = 0;
};

/// Reduced Gröbner basis of a submodule of R^rank under position-over-term order.
/// Over Z-type coefficients this is a reduced strong Gröbner basis.
struct GroebnerBasis {
    Ring ring;
    std::size_t rank;
    std::vector<FreeVector> elements;
};

GroebnerBasis compute_groebner_basis(const Ring& ring, std::size_t rank, const std::vector<FreeVector>& gens);
/// Normal form modulo a Gröbner basis; zero iff v lies in the submodule.
FreeVector normal_form(const FreeVector& v, const GroebnerBasis& gb);

/// Gröbner basis tracked against its input generators, plus the syzygy module.
struct LiftedBasis {
    Ring ring;
    std::size_t rank;
    std::size_t ngens;
    std::vector<FreeVector> gens;
    // Each row: basis element (first rank comps) followed by its cofactors (ngens comps).
    std::vector<FreeVector> augmented;
    std::vector<FreeVector> syzygies;
};

/// Without syzygies, only the basis part is completed (enough for membership witnesses).
LiftedBasis compute_lifted_basis(const Ring& ring, std::size_t rank, const std::vector<FreeVector>& gens,
                                 bool with_syzygies = true);
/// Coefficients c with v = sum c_i gens_i, re-verified by multiplication, or nullopt.
std::optional<std::vector<Poly>> lift(const FreeVector& v, const LiftedBasis& lb);

/// A submodule of R^rank given by generators; its reduced basis is cached on first use.
class SubmoduleHandle {
public:
    SubmoduleHandle(Ring ring, std::size_t rank, std::vector<FreeVector> gens);

    const Ring& ring() const { return ring_; }
    std::size_t rank() const { return rank_; }
    const std::vector<FreeVector>& generators() const { return gens_; }
    const GroebnerBasis& basis() const;
    const LiftedBasis& lifted() const;
    const LiftedBasis& witnesses() const; // lifted basis without the syzygy part
    bool contains(const FreeVector& v) const;
    bool contains(const SubmoduleHandle& other) const;
    bool operator==(const SubmoduleHandle& other) const;
    std::string key() const;

private:
    Ring ring_;
    std::size_t rank_;
    std::vector<FreeVector> gens_;
    struct Cache {
        std::once_flag gb_once, lift_once, witness_once;
        std::optional<GroebnerBasis> gb;
        std::optional<LiftedBasis> lifted, witnesses;
    };
    std::shared_ptr<Cache> cache_;
};

SubmoduleHandle groebner_basis(const SubmoduleHandle& s);

struct Membership {
    bool member = false;
    std::vector<Poly> witness; // coefficients over s.generators() when member
};
Membership membership(const FreeVector& v, const SubmoduleHandle& s);

/// Relations among the generators of s, as vectors of length |generators|.
SubmoduleHandle syzygies(const SubmoduleHandle& s);

/// Ideal of a ring, compared by its reduced basis.
class IdealHandle {
public:
    IdealHandle(Ring ring, std::vector<Poly> gens);
    static IdealHandle unit(const Ring& ring);
    static IdealHandle zero(const Ring& ring);

    const Ring& ring() const { return module_.ring(); }
    const std::vector<Poly>& generators() const { return gens_; }
    std::vector<Poly> basis() const;
    bool contains(const Poly& p) const;
    bool contains(const IdealHandle& other) const;
    bool is_unit() const;
    bool is_zero() const;
    /// Single canonical generator when the reduced basis has one element.
    std::optional<Poly> principal_generator() const;
    bool operator==(const IdealHandle& other) const;
    bool operator!=(const IdealHandle& other) const { return !(*this == other); }
    /// Canonical text: the reduced basis, e.g. "(x^2)".
    std::string to_string() const;
    const SubmoduleHandle& as_module() const { return module_; }

private:
    std::vector<Poly> gens_;
    SubmoduleHandle module_;
};

/// {r : r*v in S}, each generator re-certified by membership.
IdealHandle colon(const SubmoduleHandle& s, const FreeVector& v);
IdealHandle intersect(const std::vector<IdealHandle>& ideals);
IdealHandle ideal_sum(const IdealHandle& a, const IdealHandle& b);

} // namespace diagcert

#endif
