#ifndef DIAGCERT_HOMALG_HPP
#define DIAGCERT_HOMALG_HPP

#include <optional>
#include <string>
#include <vector>

#include "diagcert/groebner.hpp"
#include "diagcert/linalg.hpp"

namespace diagcert {

/// Cokernel of a g x r presentation matrix: R^g modulo the span of the relation columns.
class FPModule {
public:
    FPModule(Ring ring, std::size_t generators, std::vector<FreeVector> relations);
    static FPModule from_matrix(const Matrix& m);
    /// R / (gens)
    static FPModule cyclic(const Ring& ring, const std::vector<Poly>& ideal);
    static FPModule zero(const Ring& ring) { return FPModule(ring, 0, {}); }
    static FPModule free(const Ring& ring, std::size_t rank) { return FPModule(ring, rank, {}); }

    const Ring& ring() const { return ring_; }
    std::size_t generators() const { return gens_; }
    const std::vector<FreeVector>& relations() const { return rels_.generators(); }
    const SubmoduleHandle& relation_module() const { return rels_; }
    Matrix presentation() const;
    /// x is zero in M.
    bool is_zero_element(const FreeVector& x) const { return rels_.contains(x); }
    bool is_zero() const;

private:
    Ring ring_;
    std::size_t gens_;
    SubmoduleHandle rels_;
};

FPModule direct_sum(const FPModule& a, const FPModule& b);
/// Presentation of the submodule of M generated by the images of gens.
FPModule submodule_presentation(const FPModule& m, const std::vector<FreeVector>& gens);

/// Homomorphism given on generators: column j is the image of source generator j.
struct ModuleHom {
    FPModule source;
    FPModule target;
    Matrix phi;
};

bool is_well_defined(const ModuleHom& f);
FreeVector apply(const ModuleHom& f, const FreeVector& x);
ModuleHom compose(const ModuleHom& g, const ModuleHom& f); // g after f
/// Generators of the kernel, as elements of the source's ambient free module.
std::vector<FreeVector> kernel_generators(const ModuleHom& f);
bool is_injective(const ModuleHom& f);
/// Preimages of the target generators when f is surjective.
std::optional<Matrix> surjectivity_witness(const ModuleHom& f);
/// f and g agree on every generator modulo the target relations.
bool equal_as_maps(const ModuleHom& f, const ModuleHom& g);

IdealHandle annihilator(const FPModule& m);
IdealHandle element_annihilator(const FPModule& m, const FreeVector& x);

struct DualSequence {
    bool hom_zero;   // Hom(M, R) = 0, i.e. the columns of m^T have no syzygies
    FPModule ext1;   // presented by m^T
};
DualSequence hom_dual_sequence(const Matrix& m);

struct FreeResolution {
    FPModule module;
    std::vector<Matrix> maps; // d_1, d_2, ...
    bool terminated = false;  // last map injective (no further syzygies)
};
FreeResolution free_resolution(const FPModule& m, std::size_t length);

FPModule ext(const FPModule& m, std::size_t i);

struct Grade {
    std::size_t value = 0;
    bool at_least = false;   // value is only a lower bound
    bool degenerate = false; // zero module
    std::string to_string() const;
};
Grade grade(const FPModule& m, std::size_t search_limit);

std::vector<ModuleHom> hom_module(const FPModule& m, const FPModule& n);

/// Search bounds shared by the isomorphism, filtration and diagonalizer searches.
struct Bounds {
    unsigned degree = 2;       // coefficient pool: monomials up to this degree
    unsigned height = 3;       // times integers up to this absolute value
    std::size_t candidates = 4000; // search nodes per decision
};

/// Ring elements c * monomial with deg <= bounds.degree and 1 <= |c| <= bounds.height,
/// in canonical order (degree, then monomial order, then |c|, positive first).
std::vector<Poly> coefficient_pool(const Ring& ring, const Bounds& bounds);

enum class Verdict { Yes, No, Unknown };
std::string to_string(Verdict v);

/// Finite-quotient specialization: substitute values[v] for every variable except `kept`
/// (if any), then optionally reduce modulo prime^exponent.
struct SpecializationProbe {
    std::vector<long> values;
    std::optional<std::size_t> kept;
    unsigned long prime = 0;
    unsigned exponent = 0;
    std::string to_string(const Ring& ring) const;
};

/// Certified invariant mismatch between two modules (or matrices).
struct ModuleObstruction {
    enum class Kind { Fitting, Annihilator, Specialization };
    Kind kind = Kind::Fitting;
    std::size_t index = 0;           // Fitting index
    std::vector<Poly> left, right;   // reduced bases of the two ideals
    std::optional<Poly> witness;     // lies in one ideal and not the other
    bool witness_in_left = true;
    std::optional<SpecializationProbe> probe;
    std::string description;
};
std::string to_string(ModuleObstruction::Kind k);

/// Fitting ideal Fitt_j(M) = I_{g-j} of the presentation.
IdealHandle module_fitting_ideal(const FPModule& m, std::size_t j);
std::optional<ModuleObstruction> fitting_obstruction(const FPModule& m, const FPModule& n);
/// Recomputes the obstruction's ideals and checks the witness.
bool reverify(const ModuleObstruction& o, const FPModule& m, const FPModule& n);

struct IsoResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<ModuleHom> forward, backward;
    std::optional<ModuleObstruction> obstruction;
    std::size_t candidates_tried = 0;
    std::string note;
};
IsoResult is_isomorphic(const FPModule& m, const FPModule& n, const Bounds& bounds = {});
/// Checks both witnesses of a Yes from scratch.
bool verify_isomorphism(const ModuleHom& forward, const ModuleHom& backward);

/// Injective homomorphism source -> target among hom generators and small combinations.
std::optional<ModuleHom> find_embedding(const FPModule& source, const FPModule& target, const Bounds& bounds = {});

struct QGResult {
    Verdict verdict = Verdict::Unknown;
    std::optional<EquivalenceCertificate> certificate; // P * m * Q = m^T
    std::string certificate_kind;                      // symmetric, permutation, smith, decomposition
    std::optional<IsoResult> iso;
    bool grade_one = false;
    bool pd_one = false;
    std::string note;
};
QGResult is_quasi_gorenstein(const Matrix& m, const Bounds& bounds = {});

struct SplitResult {
    Verdict verdict = Verdict::Unknown; // Yes means split
    FPModule sub;
    FPModule sum;
    IsoResult iso;
};
SplitResult split_test(const FPModule& m, const std::vector<FreeVector>& sub_generators, const FPModule& quotient,
                       const Bounds& bounds = {});

} // namespace diagcert

#endif
