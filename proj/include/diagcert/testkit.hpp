#ifndef DIAGCERT_TESTKIT_HPP
#define DIAGCERT_TESTKIT_HPP

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "diagcert/homalg.hpp"
#include "diagcert/linalg.hpp"

// Independent oracles and generators for property tests.
namespace diagcert::testkit {

/// d_k = gcd of k x k minors / gcd of (k-1) x (k-1) minors, by brute-force enumeration.
std::vector<Poly> minors_gcd_snf_oracle(const Matrix& m);

struct ScrambleRecipe {
    std::uint64_t seed = 0;
    std::size_t operations = 6;
    std::vector<Poly> pool; // multipliers for elementary additions
};

struct Scrambled {
    Matrix matrix;
    std::vector<ElementaryOp> operations;
    EquivalenceCertificate ground_truth; // source = matrix, target = the seed diagonal
};
Scrambled scramble(const Matrix& d, const ScrambleRecipe& recipe);

/// Primes {2,3,5} with exponents <= 2 and substitutions from {0,1,-1}.
std::vector<SpecializationProbe> default_probes(const Ring& ring);

/// Invariants of a module after specialization to a PID: non-unit invariant factors and free rank.
struct ProbeInvariants {
    std::vector<std::string> torsion;
    std::size_t free_rank = 0;
    bool operator==(const ProbeInvariants& o) const { return torsion == o.torsion && free_rank == o.free_rank; }
    std::string to_string() const;
};
ProbeInvariants specialize(const FPModule& m, const SpecializationProbe& probe);

struct SpecializationResult {
    bool distinguished = false;
    std::optional<SpecializationProbe> probe;
    std::string detail;
};
SpecializationResult specialization_oracle(const FPModule& m, const FPModule& n,
                                           const std::vector<SpecializationProbe>& probes);
SpecializationResult specialization_oracle(const FPModule& m, const FPModule& n);

/// Process-wide tally of emitted verdicts and the outcome of their independent re-checks.
class SoundnessAudit {
public:
    static SoundnessAudit& instance();
    void record_yes(const std::string& context, bool verified);
    void record_no(const std::string& context, bool reverified);
    void record_iso_probe_conflict(const std::string& context);
    std::size_t yes_total() const;
    std::size_t yes_verified() const;
    std::size_t no_total() const;
    std::size_t no_reverified() const;
    std::size_t conflicts() const;
    std::vector<std::string> failures() const;

private:
    mutable std::mutex mu_;
    std::size_t yes_ = 0, yes_ok_ = 0, no_ = 0, no_ok_ = 0, conflicts_ = 0;
    std::vector<std::string> failures_;
};

} // namespace diagcert::testkit

#endif
