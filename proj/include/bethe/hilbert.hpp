#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "bethe/spin.hpp"

namespace bethe {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;

/// Per-site lowering counts (m_1, ..., m_L); m_j = 0 means |s>, m_j = 2s means |-s>.
using Occupation = std::vector<int>;

/// Non-decreasing 1-based site coordinates x_1 <= ... <= x_m.
using CoordinateTuple = std::vector<int>;

inline constexpr std::uint64_t kDefaultDimensionCap = std::uint64_t{1} << 20;

/// Largest dimension that is ever materialized as a dense matrix.
inline constexpr std::size_t kDenseLimit = 4096;

/// Default cap, or the value of the BETHE_CAP environment variable when set.
std::uint64_t default_dimension_cap();

/// (2s+1)^L, throwing ResourceError when it exceeds `cap` (overflow-safe).
std::uint64_t full_dimension(Spin spin, int length,
                             std::uint64_t cap = default_dimension_cap());

/// Index of an occupation in the full product basis; site 1 is the most
/// significant digit.
std::uint64_t full_index(Spin spin, std::span<const int> occupation);
Occupation decode_full_index(Spin spin, int length, std::uint64_t index);

/// Number of states with total lowering number m: the coefficient of t^m in
/// (1 + t + ... + t^{2s})^L.
std::uint64_t sector_dimension(Spin spin, int length, int m);

/// Fixed-S^z sector, S^z = L s - m. States are kept in lexicographic order of
/// (m_1, ..., m_L).
class SectorBasis {
 public:
  SectorBasis(Spin spin, int length, int m);

  [[nodiscard]] Spin spin() const noexcept { return spin_; }
  [[nodiscard]] int length() const noexcept { return length_; }
  [[nodiscard]] int m() const noexcept { return m_; }
  [[nodiscard]] std::size_t dim() const noexcept { return states_.size(); }
  [[nodiscard]] const std::vector<Occupation>& states() const noexcept { return states_; }
  [[nodiscard]] const Occupation& state(std::size_t i) const { return states_.at(i); }

  /// Position of `occupation`, or nullopt when it is not in this sector.
  [[nodiscard]] std::optional<std::size_t> find(std::span<const int> occupation) const;
  /// Throws DomainError when absent.
  [[nodiscard]] std::size_t index_of(std::span<const int> occupation) const;

  /// Little-endian base-(2s+1) hash key.
  [[nodiscard]] std::uint64_t key(std::span<const int> occupation) const;

 private:
  Spin spin_;
  int length_;
  int m_;
  std::vector<Occupation> states_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

SectorBasis sector_basis(Spin spin, int length, int m);

/// Occupation of a coordinate tuple; multiplicities may exceed 2s.
Occupation occupation_of(int length, const CoordinateTuple& x);
CoordinateTuple coordinates_of(std::span<const int> occupation);

/// Throws DomainError unless x is non-decreasing inside [1, L].
void validate_coordinates(int length, const CoordinateTuple& x);

/// alpha_m = sqrt(C(2s, m)); zero for m > 2s.
double alpha(Spin spin, int m);

/// Product of alpha_{m_j} over sites.
double alpha_product(Spin spin, std::span<const int> occupation);

/// |x_1, ..., x_m> = e^-_{x_1} ... e^-_{x_m} |vacuum> in the orthonormal
/// basis of `basis`; the zero vector when a site is hit more than 2s times.
StateVector coords_to_vector(const SectorBasis& basis, const CoordinateTuple& x);

/// Embeds a sector vector into the full product space.
StateVector embed_in_full(const SectorBasis& basis, const StateVector& v);
/// Restricts a full-space vector to the components of `basis`.
StateVector project_to_sector(const SectorBasis& basis, const StateVector& full);

}  // namespace bethe
