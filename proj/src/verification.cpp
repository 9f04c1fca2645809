#include "bethe/verification.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bethe/errors.hpp"
#include "bethe/su2_ops.hpp"

namespace bethe {

std::vector<SectorSpectrum> exact_diagonalize(Spin spin, int length, std::optional<int> m, bool with_vectors,
                                              std::uint64_t cap) {
  const ChainHamiltonian h(spin, length, cap);
  const int top = spin.two_s() * length;
  if (m && (*m < 0 || *m > top)) {
    throw DomainError("exact_diagonalize: sector m must lie in [0, 2sL]");
  }
  const int first = m ? *m : 0;
  const int last = m ? *m : top;
  std::vector<SectorSpectrum> out;
  for (int sector = first; sector <= last; ++sector) {
    const SectorBasis basis(spin, length, sector);
    const Eigen::MatrixXd dense = h.dense_in_sector(basis);
    SectorSpectrum block;
    block.m = sector;
    block.hermiticity_defect = (dense - dense.transpose()).cwiseAbs().maxCoeff();
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        dense, with_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw Error("exact_diagonalize: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    block.eigenvalues.assign(ev.data(), ev.data() + ev.size());
    if (with_vectors) block.eigenvectors = solver.eigenvectors();
    out.push_back(std::move(block));
  }
  return out;
}

double highest_weight_residual(const BetheState& state) {
  if (!state.basis) throw DomainError("highest_weight_residual: state has no basis");
  const double norm = state.vector.norm();
  if (norm == 0.0) throw DomainError("highest_weight_residual: zero vector");
  if (state.m() == 0) return 0.0;
  const SectorBasis up(state.spin, state.length, state.m() - 1);
  return apply_generator(Generator::plus, *state.basis, up, state.vector).norm() / norm;
}

double eigen_residual(const BetheState& state, const ChainHamiltonian& h) {
  if (!state.basis) throw DomainError("eigen_residual: state has no basis");
  const double norm = state.vector.norm();
  if (norm == 0.0) throw DomainError("eigen_residual: zero vector");
  const StateVector hv = h.apply_in_sector(*state.basis, state.vector);
  return (hv - state.energy * state.vector).norm() / norm;
}

namespace {

/// Applies S^- `steps` times to the normalized state; returns the last
/// vector and the ratio ||S^- v|| / ||v|| of the final step.
struct ChainWalk {
  int members = 0;
  double last_ratio = 0.0;
};

ChainWalk walk_lowering(const BetheState& state, int max_steps, double stop_below) {
  if (!state.basis) throw DomainError("lowering chain: state has no basis");
  const int top = state.spin.two_s() * state.length;
  StateVector v = state.vector.normalized();
  auto from = std::make_shared<const SectorBasis>(*state.basis);
  ChainWalk walk;
  walk.members = 1;
  for (int step = 0; step < max_steps; ++step) {
    if (from->m() + 1 > top) {
      walk.last_ratio = 0.0;
      return walk;
    }
    auto to = std::make_shared<const SectorBasis>(state.spin, state.length, from->m() + 1);
    StateVector next = apply_generator(Generator::minus, *from, *to, v);
    walk.last_ratio = next.norm();
    if (walk.last_ratio < stop_below) return walk;
    ++walk.members;
    v = next / walk.last_ratio;
    from = std::move(to);
  }
  return walk;
}

}  // namespace

double descendant_annihilation_residual(const BetheState& state) {
  const int steps = state.spin.two_s() * state.length - 2 * state.m() + 1;
  if (steps <= 0) throw DomainError("descendant check: m exceeds Ls");
  const ChainWalk walk = walk_lowering(state, steps, 0.0);
  return walk.members == steps ? walk.last_ratio : 0.0;
}

int multiplet_dimension(const BetheState& state, double tolerance) {
  const int top = state.spin.two_s() * state.length;
  return walk_lowering(state, top + 1, tolerance).members;
}

double normalized_overlap(const StateVector& a, const StateVector& b) {
  if (a.size() != b.size()) throw DimensionMismatch("overlap: vector sizes differ");
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DomainError("overlap: zero vector");
  return std::abs(a.dot(b)) / (na * nb);
}

StateVector aba_phi1(Spin spin, int length, Complex lambda) {
  const Complex is{0.0, spin.value()};
  if (std::abs(lambda - is) < kPoleTolerance) throw DomainError("aba_phi1: lambda at the pole is");
  const Complex i{0.0, 1.0};
  const int d = spin.dim();
  const Eigen::MatrixXcd sz = s_z(spin).cast<Complex>();
  const Eigen::MatrixXcd sm = s_minus(spin).cast<Complex>();
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(d, d);
  const Complex scale = 1.0 / (lambda - is);
  const Eigen::MatrixXcd t11 = scale * (lambda * id + i * sz);
  const Eigen::MatrixXcd t12 = scale * (i * sm);
  const Eigen::MatrixXcd t22 = scale * (lambda * id - i * sz);
  Eigen::VectorXcd vacuum = Eigen::VectorXcd::Zero(d);
  vacuum(0) = 1.0;
  const Eigen::VectorXcd a = t11 * vacuum;
  const Eigen::VectorXcd b = t12 * vacuum;
  const Eigen::VectorXcd c = t22 * vacuum;

  const SectorBasis basis(spin, length, 1);
  StateVector out = StateVector::Zero(static_cast<Eigen::Index>(basis.dim()));
  for (int x = 0; x < length; ++x) {
    for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
      const Occupation& occ = basis.state(idx);
      Complex amp = 1.0;
      for (int j = 0; j < length; ++j) {
        const Eigen::VectorXcd& local = j < x ? a : (j == x ? b : c);
        amp *= local(occ[static_cast<std::size_t>(j)]);
      }
      out(static_cast<Eigen::Index>(idx)) += amp;
    }
  }
  return out;
}

SpectrumReport reconcile_spectrum(Spin spin, int length, int m_max, const ReconcileOptions& options) {
  const int two_sl = spin.two_s() * length;
  if (m_max < 0) throw DomainError("reconcile: m_max must be non-negative");
  m_max = std::min(m_max, two_sl / 2);

  SpectrumReport report;
  report.spin = spin;
  report.length = length;
  report.m_max = m_max;
  const std::uint64_t cap = options.cap == 0 ? default_dimension_cap() : options.cap;
  report.ed = exact_diagonalize(spin, length, std::nullopt, true, cap);
  for (const auto& sector : report.ed) report.total_levels += sector.eigenvalues.size();

  NewtonOptions newton;
  newton.tolerances = options.tolerances;
  newton.cap = cap;
  for (int m = 0; m <= m_max; ++m) {
    const BetheSystem sys{spin, length, m};
    const auto certs = solve_all(sys, options.strategies, options.seeds, newton, options.threads);
    const SectorSpectrum& own = report.ed[static_cast<std::size_t>(m)];
    for (const auto& cert : certs) {
      BetheMultiplet mult;
      mult.m = m;
      mult.energy = cert.energy;
      mult.multiplicity = two_sl - 2 * m + 1;
      mult.verified_multiplicity = multiplet_dimension(*cert.state);
      // Weight of the normalized Bethe vector inside the ED eigenspace.
      const StateVector psi = cert.state->vector.normalized();
      Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(psi.size());
      for (std::size_t k = 0; k < own.eigenvalues.size(); ++k) {
        if (std::abs(own.eigenvalues[k] - cert.energy) <= options.tolerances.match) {
          const Eigen::VectorXcd col = own.eigenvectors.col(static_cast<Eigen::Index>(k)).cast<Complex>();
          proj += col * col.dot(psi);
        }
      }
      mult.eigenspace_overlap = proj.norm();
      mult.certificate = cert;
      report.bethe.push_back(std::move(mult));
    }
  }
  std::stable_sort(report.bethe.begin(), report.bethe.end(), [](const BetheMultiplet& a, const BetheMultiplet& b) {
    return a.energy.real() < b.energy.real();
  });

  std::vector<std::vector<bool>> claimed;
  for (const auto& sector : report.ed) claimed.emplace_back(sector.eigenvalues.size(), false);
  for (auto& mult : report.bethe) {
    for (int sector = mult.m; sector <= two_sl - mult.m; ++sector) {
      const auto& levels = report.ed[static_cast<std::size_t>(sector)].eigenvalues;
      auto& taken = claimed[static_cast<std::size_t>(sector)];
      std::optional<std::size_t> best;
      double best_gap = options.tolerances.match;
      for (std::size_t k = 0; k < levels.size(); ++k) {
        if (taken[k]) continue;
        const double gap = std::abs(levels[k] - mult.energy);
        if (gap <= best_gap) {
          best_gap = gap;
          best = k;
        }
      }
      if (!best) continue;
      taken[*best] = true;
      ++mult.matched;
      report.matches.push_back({mult.m, sector, mult.energy.real(), levels[*best], best_gap});
    }
  }
  for (std::size_t s = 0; s < report.ed.size(); ++s) {
    auto& sector = report.ed[s];
    for (std::size_t k = 0; k < sector.eigenvalues.size(); ++k) {
      if (!claimed[s][k]) report.unmatched.push_back({sector.m, sector.eigenvalues[k]});
    }
    sector.eigenvectors.resize(0, 0);
  }
  return report;
}

}  // namespace bethe
