#ifndef DIAGCERT_CERTCHECK_HPP
#define DIAGCERT_CERTCHECK_HPP

#include <optional>
#include <string>
#include <vector>

#include "diagcert/rings.hpp"

// Independent certificate checker. It depends on the rings module only and
// shares no code with the matrix routines that construct certificates.
namespace diagcert::certcheck {

using Grid = std::vector<std::vector<Poly>>;

Grid multiply(const Ring& ring, const Grid& a, const Grid& b);
/// Laplace expansion along the first row.
Poly laplace_determinant(const Ring& ring, const Grid& a);
/// nullopt when left * source * right == target and both transforms have unit determinant;
/// otherwise the first failing check.
std::optional<std::string> check_equivalence(const Ring& ring, const Grid& source, const Grid& left,
                                             const Grid& right, const Grid& target);

} // namespace diagcert::certcheck

#endif
