#ifndef DIAGCERT_FILTRATION_HPP
#define DIAGCERT_FILTRATION_HPP

#include <optional>
#include <string>
#include <vector>

#include "diagcert/homalg.hpp"

namespace diagcert {

struct LatticeEntry {
    FreeVector element;
    IdealHandle annihilator;
    std::optional<Poly> principal; // generator when the annihilator is principal
};

/// Element annihilators of a bounded sample of elements, one entry per distinct ideal.
struct AnnihilatorSample {
    FPModule module;
    Bounds bounds;
    std::vector<LatticeEntry> entries;
    std::size_t elements_tried = 0;

    bool contains(const IdealHandle& ideal) const;
};

/// Elements sum c_i e_i with c_i from the coefficient pool (or zero), in canonical order.
std::vector<FreeVector> sample_elements(const FPModule& m, const Bounds& bounds);
AnnihilatorSample sample_lattice(const FPModule& m, const Bounds& bounds = {});

/// M / <gens>, presented by appending the generators to the relations.
FPModule quotient_presentation(const FPModule& m, const std::vector<FreeVector>& sub_generators);

struct FiltrationStep {
    FreeVector generator;          // M_i = M_{i-1} + <generator>, in the ambient free module of M
    IdealHandle ideal;             // annihilator of the generator's image in M / M_{i-1}
    std::vector<std::string> evidence;
};

/// 0 = M_0 < M_1 < ... < M_k = M with cyclic quotients M_i / M_{i-1} = R / I_i.
struct CyclicFiltration {
    FPModule module;
    std::vector<FiltrationStep> steps;
    std::string reading;

    std::vector<FreeVector> generators(std::size_t i) const; // generators of M_i
};

struct FiltrationCheck {
    bool valid = false;
    std::string reason;
};
/// Re-derives every quotient annihilator, cyclicity, strictness and M_k = M.
/// With a sample, also requires each I_i to be an element annihilator of M.
FiltrationCheck verify_filtration(const CyclicFiltration& f, const AnnihilatorSample* lattice = nullptr);

struct RejectedCandidate {
    std::vector<FreeVector> prefix;      // generators of the stage's M_i
    FreeVector element;
    IdealHandle ideal;                   // annihilator of the element in M / M_i
    std::string reason;
    std::optional<IdealHandle> remaining; // annihilator of the remaining quotient M / (M_i + <element>)
    bool remaining_cyclic = false;
};

struct FiltrationSearch {
    std::optional<CyclicFiltration> filtration;
    std::vector<RejectedCandidate> rejected;
    AnnihilatorSample lattice;
    std::size_t nodes = 0;
    bool budget_exhausted = false;
    std::string reading;
};
FiltrationSearch search_minimal_cyclic_filtration(const FPModule& m, const Bounds& bounds = {});

/// Chain for M = (+) R/(lambda_i), peeling a summand with minimal (lambda_j) at each step from the top.
CyclicFiltration filtration_from_decomposition(const Ring& ring, const std::vector<Poly>& lambdas);

} // namespace diagcert

#endif
