#pragma once

#include <optional>
#include <vector>

#include "bethe/bethe_core.hpp"

namespace bethe {

/// Positions of the exact (2s+1)-string {is, is - i, ..., -is} inside a root
/// set, ordered from is down to -is, when every member is matched within
/// `tolerance` by a distinct root. Such root sets put u at infinity and zero
/// and have no direct plane-wave evaluation.
std::optional<std::vector<std::size_t>> find_singular_string(const Rapidities& roots, Spin spin,
                                                             double tolerance);

/// Shift applied to the -is member of the string.
inline constexpr double kSingularShift = 1e-14;
inline constexpr int kSingularMaxLength = 15;

/// Limit of the Bethe vector along the regularized root set obtained by
/// moving the -is member to -is + epsilon and re-solving every other Bethe
/// equation in 250-digit arithmetic. The vector is returned normalized to
/// unit length, with the limiting energy. Whether the limit is an eigenvector
/// (a physical singular solution) is left to the caller to certify.
///
/// Throws DegenerateRootsError when the reduced system does not converge or
/// the vector vanishes, DomainError for L above kSingularMaxLength.
BetheState regularize_singular(Spin spin, int length, const Rapidities& roots,
                               const std::vector<std::size_t>& string_positions);

}  // namespace bethe
