#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "bethe/hilbert.hpp"
#include "bethe/spin.hpp"

namespace bethe {

/// Lower and upper end of the admissible n for beta^n_{m1,m2}.
int beta_n_min(Spin spin, int m1, int m2);
int beta_n_max(Spin spin, int m1, int m2);

/// M_1 = min(m1, 2s - m2), M_2 = min(m2, 2s - m1).
int beta_M1(Spin spin, int m1, int m2);
int beta_M2(Spin spin, int m1, int m2);

/// Coefficient beta^n_{m1,m2} of the local Hamiltonian. Throws DomainError
/// when (m1, m2, n) is outside the admissible window.
double beta(Spin spin, int m1, int m2, int n);

struct BetaEntry {
  int m1;
  int m2;
  int n;
  double value;
};

/// Every admissible beta for one spin, evaluated once.
class BetaTable {
 public:
  explicit BetaTable(Spin spin);

  [[nodiscard]] Spin spin() const noexcept { return spin_; }
  /// Sorted by (m1, m2, n).
  [[nodiscard]] const std::vector<BetaEntry>& entries() const noexcept { return entries_; }

  /// Throws DomainError outside the window.
  [[nodiscard]] double at(int m1, int m2, int n) const;
  /// Zero outside the window (absent matrix entries).
  [[nodiscard]] double get_or_zero(int m1, int m2, int n) const noexcept;

 private:
  [[nodiscard]] std::size_t slot(int m1, int m2, int n) const noexcept;

  Spin spin_;
  std::vector<BetaEntry> entries_;
  std::vector<double> dense_;  // (m1, m2, n + 2s) -> value, NaN outside window
};

/// Two-site Hamiltonian h on C^{2s+1} (x) C^{2s+1}, first-site-major index
/// (a, b) -> a (2s+1) + b, where a, b are lowering counts.
class LocalHamiltonian {
 public:
  explicit LocalHamiltonian(const BetaTable& table);

  [[nodiscard]] Spin spin() const noexcept { return spin_; }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return matrix_; }

  struct Element {
    int row;
    double value;
  };
  /// Nonzero entries of column `col`.
  [[nodiscard]] const std::vector<Element>& column(int col) const { return columns_.at(static_cast<std::size_t>(col)); }

 private:
  Spin spin_;
  Eigen::MatrixXd matrix_;
  std::vector<std::vector<Element>> columns_;
};

LocalHamiltonian local_h(Spin spin);

/// H = sum_{j=1}^L h_{j,j+1}, periodic. Applied matrix-free; reentrant.
class ChainHamiltonian {
 public:
  /// Throws ResourceError when (2s+1)^L exceeds `cap`.
  ChainHamiltonian(Spin spin, int length, std::uint64_t cap = default_dimension_cap());

  [[nodiscard]] Spin spin() const noexcept { return spin_; }
  [[nodiscard]] int length() const noexcept { return length_; }
  [[nodiscard]] std::uint64_t full_dim() const noexcept { return dim_; }
  [[nodiscard]] const LocalHamiltonian& local() const noexcept { return *local_; }

  [[nodiscard]] StateVector apply(const StateVector& v) const;
  /// H v for v in one S^z sector; the result lives in the same sector.
  [[nodiscard]] StateVector apply_in_sector(const SectorBasis& basis, const StateVector& v) const;

  /// Dense full matrix; DomainError-free but ResourceError beyond kDenseLimit.
  [[nodiscard]] Eigen::MatrixXd dense() const;
  [[nodiscard]] Eigen::MatrixXd dense_in_sector(const SectorBasis& basis) const;

 private:
  Spin spin_;
  int length_;
  std::uint64_t dim_;
  std::shared_ptr<const LocalHamiltonian> local_;
};

ChainHamiltonian chain_h(Spin spin, int length, std::uint64_t cap = default_dimension_cap());

/// Same as ChainHamiltonian::apply_in_sector.
StateVector apply_chain_h_in_sector(const ChainHamiltonian& h, const SectorBasis& basis,
                                    const StateVector& v);

struct RecursionReport {
  double raising_violation = 0.0;   // first recursion (m1 + 1 on the left)
  double lowering_violation = 0.0;  // second recursion (m1 - 1 on the left)
  int relations_checked = 0;
  [[nodiscard]] double max_violation() const noexcept {
    return raising_violation > lowering_violation ? raising_violation : lowering_violation;
  }
};

/// Evaluates both su(2) recursion relations on the beta coefficients for
/// every m1, m2 in [0, 2s] and n in [-2s-1, 2s+1]; betas outside their
/// window count as zero.
RecursionReport check_beta_recursions(Spin spin);

}  // namespace bethe
