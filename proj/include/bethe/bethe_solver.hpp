#pragma once

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bethe/bethe_core.hpp"
#include "bethe/hamiltonian.hpp"

namespace bethe {

/// Bethe equations for m magnons on a periodic chain of length L.
struct BetheSystem {
  Spin spin;
  int length;
  int m;
};

/// Polynomial-cleared residual
///   F_j = (l_j + is)^L prod_{k!=j}(l_j - l_k - i) - (l_j - is)^L prod_{k!=j}(l_j - l_k + i).
/// Throws DomainError near lambda = +-is and DegenerateRootsError for
/// coinciding rapidities.
std::vector<Complex> bethe_residual(const Rapidities& roots, const BetheSystem& sys);

/// max_j |F_j| / max(1, max_j (|first term| + |second term|)); no guards.
double scaled_bethe_residual(const Rapidities& roots, const BetheSystem& sys);

/// Analytic dF_j/dlambda_k.
Eigen::MatrixXcd bethe_jacobian(const Rapidities& roots, const BetheSystem& sys);

struct Tolerances {
  double newton = 1e-10;
  double eigen = 1e-8;
  double match = 1e-7;
};

struct RootCertificate {
  Rapidities roots;
  double bethe_residual = 0.0;
  double eigen_residual = 0.0;
  double hw_residual = 0.0;
  Complex energy;
  int iterations = 0;
  /// Root set contains the (2s+1)-string through +-is; the state is the
  /// regularized limit.
  bool singular = false;
  std::shared_ptr<const BetheState> state;
};

enum class SolveStatus {
  certified,
  not_converged,
  descendant_direction,
  degenerate,
  duplicate,
  unphysical,
  failed_verification,
};

std::string to_string(SolveStatus status);

struct SolveResult {
  SolveStatus status = SolveStatus::not_converged;
  std::optional<RootCertificate> certificate;
  int iterations = 0;
  std::string detail;
};

/// Sorts a root set into a canonical order (real part, then imaginary part).
Rapidities canonical_order(Rapidities roots);

/// Registry of certified root sets, compared through their elementary
/// symmetric polynomials so that order does not matter; a set and its
/// complex conjugate count as the same entry. Thread-safe.
class RootRegistry {
 public:
  static constexpr double kThreshold = 1e-6;

  [[nodiscard]] bool contains(const Rapidities& roots) const;
  /// Atomic check-then-insert; false when an equivalent set is present.
  bool try_insert(const Rapidities& roots);
  [[nodiscard]] std::size_t size() const;

 private:
  [[nodiscard]] bool contains_locked(const std::vector<Complex>& key) const;

  mutable std::mutex mutex_;
  std::vector<std::vector<Complex>> keys_;
};

/// Elementary symmetric polynomials e_1..e_m of the roots.
std::vector<Complex> symmetric_key(const Rapidities& roots);

struct NewtonOptions {
  Tolerances tolerances;
  int max_iter = 100;
  /// |lambda_j| above this is a descendant direction.
  double infinity = 1e8;
  /// Full-space dimension cap for the certifying Hamiltonian; 0 = default_dimension_cap().
  std::uint64_t cap = 0;
};

/// Newton iteration on the polynomial-cleared equations from `seed`,
/// followed by classification and certification against the chain
/// Hamiltonian. When `registry` is given, a certified root set is inserted
/// and equivalent sets are reported as duplicates.
SolveResult solve_newton(const BetheSystem& sys, const Rapidities& seed,
                         const NewtonOptions& options = {}, RootRegistry* registry = nullptr);

enum class SeedStrategy { free_momenta, two_string, random, singular_string };

std::optional<SeedStrategy> parse_strategy(std::string_view name);
std::string to_string(SeedStrategy strategy);

struct SeedOptions {
  int random_count = 64;
  double random_scale = 1.0;
  std::uint64_t rng_seed = 0;
};

/// free-momenta: lambda_j = s cot(pi n_j / L) over increasing n_1 < ... < n_m in [1, L-1].
/// two-string: a pair c +- i/2 around each real center c in
///   {0} u {s cot(pi n/L)} u {(s + 1/2) cot(pi n/L)}, completed by every
///   free-momenta combination whose roots avoid the center.
/// random: complex Gaussian seeds of the given scale.
/// singular-string: {is, is - i, ..., -is} completed by free-momenta roots.
std::vector<Rapidities> seed_catalog(const BetheSystem& sys, SeedStrategy strategy,
                                     const SeedOptions& options = {});

/// Runs solve_newton on every seed of every strategy, deduplicating through
/// one registry. Independent seeds run on `threads` workers; the returned
/// list is sorted by (Re E, canonical roots) so it does not depend on
/// scheduling.
std::vector<RootCertificate> solve_all(const BetheSystem& sys,
                                       std::span<const SeedStrategy> strategies,
                                       const SeedOptions& seeds = {},
                                       const NewtonOptions& options = {}, int threads = 1);

}  // namespace bethe
