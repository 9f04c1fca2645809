#pragma once

#include <memory>
#include <vector>

#include "bethe/hilbert.hpp"
#include "bethe/spin.hpp"

namespace bethe {

/// Plane-wave momenta k_j; u_j = e^{i k_j}.
struct Momenta {
  std::vector<Complex> k;

  [[nodiscard]] std::size_t size() const noexcept { return k.size(); }
  [[nodiscard]] std::vector<Complex> u() const;
};

/// Rapidities lambda_j with e^{ik_j} = (lambda_j + is)/(lambda_j - is).
struct Rapidities {
  std::vector<Complex> values;

  [[nodiscard]] std::size_t size() const noexcept { return values.size(); }
};

/// Closest approach to lambda = +-is before the change of variables is refused.
inline constexpr double kPoleTolerance = 1e-10;
/// Pairwise |u_j - u_l| and |u_j - 1| below this are degenerate.
inline constexpr double kDegeneracyTolerance = 1e-9;
inline constexpr double kSigmaDenominatorTolerance = 1e-13;

/// (lambda + is)/(lambda - is). DomainError near lambda = is.
Complex u_of_lambda(Complex lambda, Spin spin);
/// Inverse Moebius map is (u + 1)/(u - 1). DomainError near u = 1.
Complex lambda_of_u(Complex u, Spin spin);

/// Principal branch k = -i log((lambda + is)/(lambda - is)). DomainError near
/// lambda = +-is.
Complex lambda_to_k(Complex lambda, Spin spin);
/// lambda = is (e^{ik} + 1)/(e^{ik} - 1). DomainError near e^{ik} = 1.
Complex k_to_lambda(Complex k, Spin spin);

Rapidities to_rapidities(const Momenta& momenta, Spin spin);
Momenta to_momenta(const Rapidities& rapidities, Spin spin);

/// Two-magnon scattering matrix
/// sigma(u, v) = -(uv + (2s-1)u - (2s+1)v + 1)/(uv + (2s-1)v - (2s+1)u + 1).
/// SingularPairError when the denominator is below 1e-13.
Complex sigma_u(Complex u, Complex v, Spin spin);

/// The same scattering matrix in rapidities: (lambda - mu - i)/(lambda - mu + i).
Complex sigma_lambda(Complex lambda, Complex mu);

using Permutation = std::vector<int>;

std::vector<Permutation> permutations_lex(int m);

/// A_P = prod_{j<k} (1 + (1/2s)(u_{Pj} - 1)(u_{Pk} - 1)/(u_{Pk} - u_{Pj})),
/// normalized so that consecutive amplitudes obey A_{P T_j} = sigma(u_{Pj}, u_{P(j+1)}) A_P.
/// DegenerateRootsError for coinciding momenta.
Complex amplitude_AP(const Permutation& perm, const Momenta& momenta, Spin spin);

/// a(x) = sum_P A_P exp(i sum_j k_{Pj} x_j). Any non-negative x is accepted,
/// ordered or not, so shifted tuples like (x+1, x) can be evaluated.
Complex amplitude_a(const CoordinateTuple& x, const Momenta& momenta, Spin spin);

/// Coordinate Bethe vector Psi_m = sum_x a(x) |x_1, ..., x_m> in its S^z sector.
struct BetheState {
  Spin spin;
  int length = 0;
  Momenta momenta;        // empty for regularized singular states
  Rapidities rapidities;  // empty when built from momenta that map to no finite rapidity
  std::shared_ptr<const SectorBasis> basis;
  StateVector vector;
  Complex energy;
  double norm = 0.0;
  /// Obtained as the limit of a regularized root set (see singular.hpp).
  bool regularized = false;

  [[nodiscard]] int m() const noexcept { return basis ? basis->m() : 0; }
};

/// Energy -(1/2s) sum_j (2 - e^{ik_j} - e^{-ik_j}).
Complex energy_k(const Momenta& momenta, Spin spin);
/// Energy -sum_j 2s/(lambda_j^2 + s^2). DomainError near lambda = +-is.
Complex energy_lambda(const Rapidities& rapidities, Spin spin);

/// Throws DegenerateRootsError on pairwise coinciding or zero momenta and on
/// a vanishing vector; DomainError when m exceeds 2sL.
BetheState build_bethe_state(Spin spin, int length, const Momenta& momenta);
BetheState build_bethe_state(Spin spin, int length, const Rapidities& rapidities);

}  // namespace bethe
