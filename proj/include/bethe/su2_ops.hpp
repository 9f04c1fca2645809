#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "bethe/hilbert.hpp"
#include "bethe/spin.hpp"

namespace bethe {

/// Dense single-site operator; row/column i is the weight |s - i>.
using LocalOperator = Eigen::MatrixXd;

LocalOperator s_minus(Spin spin);
LocalOperator s_plus(Spin spin);
LocalOperator s_z(Spin spin);

/// g = sum_n (2s)!/(s-n)! |n><n|.
LocalOperator g_matrix(Spin spin);

/// Pseudo-excitation creator e^- = g s^- g^{-1}, entries sqrt((s+n)/(s-n+1)).
LocalOperator e_minus(Spin spin);

enum class Generator { z, plus, minus };

/// Change of the total lowering number under a generator (S^+ lowers m).
constexpr int sector_shift(Generator alpha) noexcept {
  switch (alpha) {
    case Generator::plus: return -1;
    case Generator::minus: return 1;
    case Generator::z: return 0;
  }
  return 0;
}

/// Global generator S^alpha = sum_j s^alpha_j, applied matrix-free.
class GlobalGenerator {
 public:
  /// Throws ResourceError when (2s+1)^L exceeds `cap`.
  GlobalGenerator(Spin spin, int length, Generator alpha,
                  std::uint64_t cap = default_dimension_cap());

  [[nodiscard]] Spin spin() const noexcept { return spin_; }
  [[nodiscard]] int length() const noexcept { return length_; }
  [[nodiscard]] Generator alpha() const noexcept { return alpha_; }
  [[nodiscard]] std::uint64_t full_dim() const noexcept { return dim_; }

  [[nodiscard]] StateVector apply(const StateVector& v) const;

 private:
  Spin spin_;
  int length_;
  Generator alpha_;
  std::uint64_t dim_;
  LocalOperator local_;
};

GlobalGenerator global_generator(Spin spin, int length, Generator alpha,
                                 std::uint64_t cap = default_dimension_cap());

/// S^alpha acting from sector `from` into sector `to`
/// (to.m() == from.m() + sector_shift(alpha)). Needs no full-space cap.
StateVector apply_generator(Generator alpha, const SectorBasis& from, const SectorBasis& to,
                            const StateVector& v);

}  // namespace bethe
