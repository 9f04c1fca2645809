#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "bethe/bethe_core.hpp"
#include "bethe/bethe_solver.hpp"
#include "bethe/hamiltonian.hpp"

namespace bethe {

struct SectorSpectrum {
  int m = 0;
  std::vector<double> eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;     // columns, empty unless requested
  double hermiticity_defect = 0.0;  // max |H - H^T| of the dense block
};

/// Dense diagonalization of H in every S^z sector (or only sector `m`).
/// ResourceError when a sector exceeds kDenseLimit or the chain exceeds `cap`.
std::vector<SectorSpectrum> exact_diagonalize(Spin spin, int length, std::optional<int> m = {},
                                              bool with_vectors = false,
                                              std::uint64_t cap = default_dimension_cap());

/// ||S^+ Psi|| / ||Psi||.
double highest_weight_residual(const BetheState& state);

/// ||H Psi - E Psi|| / ||Psi|| with the state's own energy.
double eigen_residual(const BetheState& state, const ChainHamiltonian& h);

/// ||S^- Phi|| / ||Phi|| for Phi = (S^-)^{2(Ls-m)} Psi, i.e. whether the
/// lowering chain of a highest-weight state closes after 2(Ls-m)+1 members.
double descendant_annihilation_residual(const BetheState& state);

/// Number of nonvanishing members of the chain (S^-)^j Psi, j >= 0. The
/// chain stops when ||S^- Phi|| / ||Phi|| drops below `tolerance`.
int multiplet_dimension(const BetheState& state, double tolerance = 1e-9);

/// |<a, b>| / (||a|| ||b||).
double normalized_overlap(const StateVector& a, const StateVector& b);

/// One-magnon state of the algebraic Bethe ansatz,
///   Phi_1 = sum_x T_11^{(1)} ... T_11^{(x-1)} T_12^{(x)} T_22^{(x+1)} ... T_22^{(L)} |vacuum>,
/// T^{(j)}(lambda) = (1/(lambda - is)) [[lambda + i s^z_j, i s^-_j], [i s^+_j, lambda - i s^z_j]],
/// as a vector over sector_basis(spin, L, 1). DomainError at lambda = is.
StateVector aba_phi1(Spin spin, int length, Complex lambda);

struct BetheMultiplet {
  int m = 0;
  Complex energy;
  int multiplicity = 0;           // 2(Ls - m) + 1
  int verified_multiplicity = 0;  // from repeated S^-
  int matched = 0;                // ED levels claimed
  double eigenspace_overlap = 0.0;
  RootCertificate certificate;
};

struct LevelMatch {
  int hw_m = 0;  // sector of the highest-weight state
  int sector = 0;
  double bethe_energy = 0.0;
  double ed_energy = 0.0;
  double gap = 0.0;
};

struct UnmatchedLevel {
  int m = 0;
  double energy = 0.0;
};

struct SpectrumReport {
  Spin spin{1};
  int length = 0;
  int m_max = 0;
  std::vector<SectorSpectrum> ed;
  std::vector<BetheMultiplet> bethe;
  std::vector<LevelMatch> matches;
  std::vector<UnmatchedLevel> unmatched;
  std::size_t total_levels = 0;

  [[nodiscard]] std::size_t matched_levels() const noexcept { return matches.size(); }
  [[nodiscard]] double matched_fraction() const noexcept {
    return total_levels == 0 ? 1.0 : static_cast<double>(matches.size()) / static_cast<double>(total_levels);
  }
};

struct ReconcileOptions {
  Tolerances tolerances;
  SeedOptions seeds{512, 1.0, 0};
  std::vector<SeedStrategy> strategies{SeedStrategy::free_momenta, SeedStrategy::two_string,
                                       SeedStrategy::singular_string, SeedStrategy::random};
  int threads = 1;
  std::uint64_t cap = 0;  // 0: default_dimension_cap()
};

/// Certifies Bethe states for m = 0..m_max and matches each multiplet,
/// one level per sector m..2Ls-m, against ED within the match tolerance.
/// Greedy over multiplets sorted by energy; within a sector the closest
/// unclaimed level wins. Levels left over are reported as unmatched.
SpectrumReport reconcile_spectrum(Spin spin, int length, int m_max,
                                  const ReconcileOptions& options = {});

}  // namespace bethe
