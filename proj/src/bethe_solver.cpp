#include "bethe/bethe_solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "bethe/detail/kernels.hpp"
#include "bethe/errors.hpp"
#include "bethe/singular.hpp"
#include "bethe/verification.hpp"

namespace bethe {

namespace {

constexpr Complex kI{0.0, 1.0};

// Distance to the exact singular string at which a root set is snapped onto it.
constexpr double kSingularSnap = 1e-4;
// Closest allowed approach of a certified regular root to +-is.
constexpr double kPoleExclusion = 1e-8;
constexpr double kCoincidence = 1e-6;

void check_system(const Rapidities& roots, const BetheSystem& sys) {
  if (static_cast<int>(roots.size()) != sys.m) {
    throw DimensionMismatch("Bethe system: expected " + std::to_string(sys.m) + " rapidities");
  }
}

}  // namespace

std::vector<Complex> bethe_residual(const Rapidities& roots, const BetheSystem& sys) {
  check_system(roots, sys);
  const Complex is = kI * sys.spin.value();
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const Complex l = roots.values[j];
    if (std::abs(l - is) < kPoleTolerance || std::abs(l + is) < kPoleTolerance) {
      throw DomainError("Bethe residual: rapidity at a pole lambda = +-is");
    }
    for (std::size_t k = j + 1; k < roots.size(); ++k) {
      if (std::abs(l - roots.values[k]) < kDegeneracyTolerance) {
        throw DegenerateRootsError("Bethe residual: coinciding rapidities");
      }
    }
  }
  return detail::bethe_polynomials(roots.values, sys.spin.value(), sys.length).value;
}

double scaled_bethe_residual(const Rapidities& roots, const BetheSystem& sys) {
  check_system(roots, sys);
  const auto poly = detail::bethe_polynomials(roots.values, sys.spin.value(), sys.length);
  double worst = 0.0;
  double scale = 1.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    worst = std::max(worst, std::abs(poly.value[j]));
    scale = std::max(scale, std::abs(poly.plus_term[j]) + std::abs(poly.minus_term[j]));
  }
  return worst / scale;
}

Eigen::MatrixXcd bethe_jacobian(const Rapidities& roots, const BetheSystem& sys) {
  check_system(roots, sys);
  const auto m = static_cast<Eigen::Index>(roots.size());
  const auto flat = detail::bethe_jacobian(roots.values, sys.spin.value(), sys.length);
  Eigen::MatrixXcd jac(m, m);
  for (Eigen::Index r = 0; r < m; ++r) {
    for (Eigen::Index c = 0; c < m; ++c) jac(r, c) = flat[static_cast<std::size_t>(r * m + c)];
  }
  return jac;
}

std::string to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::certified: return "certified";
    case SolveStatus::not_converged: return "not-converged";
    case SolveStatus::descendant_direction: return "descendant-direction";
    case SolveStatus::degenerate: return "degenerate";
    case SolveStatus::duplicate: return "duplicate";
    case SolveStatus::unphysical: return "unphysical";
    case SolveStatus::failed_verification: return "failed-verification";
  }
  return "unknown";
}

Rapidities canonical_order(Rapidities roots) {
  std::sort(roots.values.begin(), roots.values.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

std::vector<Complex> symmetric_key(const Rapidities& roots) {
  // Coefficients of prod_j (t + lambda_j), skipping the leading 1.
  std::vector<Complex> e(roots.size() + 1, Complex{});
  e[0] = 1.0;
  for (std::size_t j = 0; j < roots.size(); ++j) {
    for (std::size_t k = j + 1; k > 0; --k) e[k] += e[k - 1] * roots.values[j];
  }
  e.erase(e.begin());
  return e;
}

namespace {

bool keys_close(const std::vector<Complex>& a, const std::vector<Complex>& b, double threshold) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (std::abs(a[k] - b[k]) > threshold * std::max(1.0, std::abs(b[k]))) return false;
  }
  return true;
}

std::vector<Complex> conjugated(std::vector<Complex> key) {
  for (Complex& z : key) z = std::conj(z);
  return key;
}

}  // namespace

bool RootRegistry::contains_locked(const std::vector<Complex>& key) const {
  const auto conj_key = conjugated(key);
  return std::any_of(keys_.begin(), keys_.end(), [&](const std::vector<Complex>& k) {
    return keys_close(key, k, kThreshold) || keys_close(conj_key, k, kThreshold);
  });
}

bool RootRegistry::contains(const Rapidities& roots) const {
  const auto key = symmetric_key(roots);
  std::lock_guard lock(mutex_);
  return contains_locked(key);
}

bool RootRegistry::try_insert(const Rapidities& roots) {
  auto key = symmetric_key(roots);
  std::lock_guard lock(mutex_);
  if (contains_locked(key)) return false;
  keys_.push_back(std::move(key));
  return true;
}

std::size_t RootRegistry::size() const {
  std::lock_guard lock(mutex_);
  return keys_.size();
}

namespace {

SolveResult fail(SolveStatus status, int iterations, std::string detail) {
  SolveResult r;
  r.status = status;
  r.iterations = iterations;
  r.detail = std::move(detail);
  return r;
}

/// One damped Newton step; returns false when the Jacobian is singular.
bool newton_step(const BetheSystem& sys, Rapidities& roots, double& residual) {
  const auto poly = detail::bethe_polynomials(roots.values, sys.spin.value(), sys.length);
  const auto jac = detail::bethe_jacobian(roots.values, sys.spin.value(), sys.length);
  std::vector<Complex> delta = poly.value;
  if (!detail::solve_linear(jac, delta)) return false;
  for (const Complex& d : delta) {
    if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) return false;
  }
  double step = 1.0;
  Rapidities trial = roots;
  double trial_res = residual;
  for (int halving = 0; halving < 12; ++halving) {
    for (std::size_t j = 0; j < delta.size(); ++j) trial.values[j] = roots.values[j] - step * delta[j];
    trial_res = scaled_bethe_residual(trial, sys);
    if (trial_res < residual) break;
    step *= 0.5;
  }
  // Take the shortest step even without decrease so the iteration can leave
  // a plateau; the iteration cap bounds the cost.
  roots = trial;
  residual = trial_res;
  return std::isfinite(residual);
}

}  // namespace

SolveResult solve_newton(const BetheSystem& sys, const Rapidities& seed, const NewtonOptions& options,
                         RootRegistry* registry) {
  check_system(seed, sys);
  for (const Complex& z : seed.values) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw DomainError("solve_newton: seed must be finite");
    }
  }
  if (!(options.tolerances.newton > 0.0)) throw DomainError("solve_newton: tolerance must be positive");

  Rapidities roots = seed;
  int iterations = 0;
  double residual = scaled_bethe_residual(roots, sys);
  const auto escaped = [&] {
    return std::any_of(roots.values.begin(), roots.values.end(),
                       [&](Complex z) { return std::abs(z) > options.infinity; });
  };
  while (residual > options.tolerances.newton && iterations < options.max_iter) {
    if (!newton_step(sys, roots, residual)) {
      return fail(SolveStatus::not_converged, iterations, "singular Jacobian");
    }
    ++iterations;
    if (escaped()) return fail(SolveStatus::descendant_direction, iterations, "rapidity escaped to infinity");
  }
  // Polish: a few more steps while they still help.
  for (int extra = 0; extra < 3 && residual > 0.0; ++extra) {
    Rapidities trial = roots;
    double trial_res = residual;
    if (!newton_step(sys, trial, trial_res) || !(trial_res < residual)) break;
    roots = trial;
    residual = trial_res;
  }
  if (escaped()) return fail(SolveStatus::descendant_direction, iterations, "rapidity escaped to infinity");

  const ChainHamiltonian h(sys.spin, sys.length, options.cap == 0 ? default_dimension_cap() : options.cap);
  const auto certify = [&](BetheState state, Rapidities reported, double bethe_res,
                           bool singular) -> SolveResult {
    RootCertificate cert;
    cert.roots = canonical_order(std::move(reported));
    cert.bethe_residual = bethe_res;
    cert.eigen_residual = eigen_residual(state, h);
    cert.hw_residual = highest_weight_residual(state);
    cert.energy = state.energy;
    cert.iterations = iterations;
    cert.singular = singular;
    cert.state = std::make_shared<const BetheState>(std::move(state));
    SolveResult result;
    result.iterations = iterations;
    const double tol = options.tolerances.eigen;
    if (!(cert.eigen_residual <= tol && cert.hw_residual <= tol)) {
      result.status = singular ? SolveStatus::unphysical : SolveStatus::failed_verification;
      result.detail = "eigenvector or highest-weight residual above tolerance";
      result.certificate = std::move(cert);
      return result;
    }
    if (registry != nullptr && !registry->try_insert(cert.roots)) {
      return fail(SolveStatus::duplicate, iterations, "root set already certified");
    }
    result.status = SolveStatus::certified;
    result.certificate = std::move(cert);
    return result;
  };

  if (const auto string = find_singular_string(roots, sys.spin, kSingularSnap)) {
    Rapidities snapped = roots;
    for (std::size_t t = 0; t < string->size(); ++t) {
      snapped.values[(*string)[t]] = Complex{0.0, sys.spin.value() - static_cast<double>(t)};
    }
    if (registry != nullptr && registry->contains(snapped)) {
      return fail(SolveStatus::duplicate, iterations, "root set already certified");
    }
    try {
      BetheState state = regularize_singular(sys.spin, sys.length, roots, *string);
      return certify(std::move(state), snapped, scaled_bethe_residual(snapped, sys), true);
    } catch (const DegenerateRootsError& e) {
      return fail(SolveStatus::unphysical, iterations, e.what());
    }
  }

  if (residual > options.tolerances.newton) {
    return fail(SolveStatus::not_converged, iterations, "residual above tolerance after max_iter");
  }
  const Complex is = kI * sys.spin.value();
  for (std::size_t j = 0; j < roots.size(); ++j) {
    const Complex l = roots.values[j];
    if (std::abs(l - is) < kPoleExclusion || std::abs(l + is) < kPoleExclusion) {
      return fail(SolveStatus::unphysical, iterations, "rapidity at a pole without a full string");
    }
    for (std::size_t k = j + 1; k < roots.size(); ++k) {
      if (std::abs(l - roots.values[k]) < kCoincidence) {
        return fail(SolveStatus::degenerate, iterations, "coinciding rapidities");
      }
    }
  }
  if (registry != nullptr && registry->contains(roots)) {
    return fail(SolveStatus::duplicate, iterations, "root set already certified");
  }
  try {
    BetheState state = build_bethe_state(sys.spin, sys.length, roots);
    return certify(std::move(state), roots, residual, false);
  } catch (const DegenerateRootsError& e) {
    return fail(SolveStatus::degenerate, iterations, e.what());
  } catch (const DomainError& e) {
    return fail(SolveStatus::unphysical, iterations, e.what());
  }
}

std::optional<SeedStrategy> parse_strategy(std::string_view name) {
  if (name == "free-momenta") return SeedStrategy::free_momenta;
  if (name == "two-string") return SeedStrategy::two_string;
  if (name == "random") return SeedStrategy::random;
  if (name == "singular-string") return SeedStrategy::singular_string;
  return std::nullopt;
}

std::string to_string(SeedStrategy strategy) {
  switch (strategy) {
    case SeedStrategy::free_momenta: return "free-momenta";
    case SeedStrategy::two_string: return "two-string";
    case SeedStrategy::random: return "random";
    case SeedStrategy::singular_string: return "singular-string";
  }
  return "unknown";
}

namespace {

/// Increasing combinations of `count` integers from [1, L-1].
std::vector<std::vector<int>> mode_combinations(int length, int count) {
  std::vector<std::vector<int>> out;
  if (count < 0 || count > length - 1) return out;
  std::vector<int> current;
  const auto recurse = [&](auto&& self, int next) -> void {
    if (static_cast<int>(current.size()) == count) {
      out.push_back(current);
      return;
    }
    for (int n = next; n <= length - 1; ++n) {
      current.push_back(n);
      self(self, n + 1);
      current.pop_back();
    }
  };
  recurse(recurse, 1);
  return out;
}

double free_rapidity(Spin spin, int length, int n) {
  return spin.value() / std::tan(std::numbers::pi * n / length);
}

}  // namespace

std::vector<Rapidities> seed_catalog(const BetheSystem& sys, SeedStrategy strategy,
                                     const SeedOptions& options) {
  std::vector<Rapidities> seeds;
  const auto free_set = [&](const std::vector<int>& modes) {
    Rapidities r;
    for (const int n : modes) r.values.emplace_back(free_rapidity(sys.spin, sys.length, n), 0.0);
    return r;
  };
  switch (strategy) {
    case SeedStrategy::free_momenta: {
      for (const auto& modes : mode_combinations(sys.length, sys.m)) seeds.push_back(free_set(modes));
      break;
    }
    case SeedStrategy::two_string: {
      if (sys.m < 2) break;
      std::vector<double> centers{0.0};
      const auto add_center = [&](double c) {
        if (std::none_of(centers.begin(), centers.end(), [&](double x) { return std::abs(x - c) < 1e-12; })) {
          centers.push_back(c);
        }
      };
      for (int n = 1; n < sys.length; ++n) {
        const double cot = 1.0 / std::tan(std::numbers::pi * n / sys.length);
        add_center(sys.spin.value() * cot);
        add_center((sys.spin.value() + 0.5) * cot);
      }
      const auto rest = mode_combinations(sys.length, sys.m - 2);
      for (const double c : centers) {
        for (const auto& modes : rest) {
          Rapidities r = free_set(modes);
          const bool clash = std::any_of(r.values.begin(), r.values.end(),
                                         [&](Complex z) { return std::abs(z.real() - c) < 1e-6; });
          if (clash) continue;
          r.values.emplace_back(c, 0.5);
          r.values.emplace_back(c, -0.5);
          seeds.push_back(std::move(r));
        }
      }
      break;
    }
    case SeedStrategy::singular_string: {
      const int members = sys.spin.dim();
      if (sys.m < members) break;
      for (const auto& modes : mode_combinations(sys.length, sys.m - members)) {
        Rapidities r = free_set(modes);
        for (int t = 0; t < members; ++t) r.values.emplace_back(0.0, sys.spin.value() - t);
        seeds.push_back(std::move(r));
      }
      break;
    }
    case SeedStrategy::random: {
      std::seed_seq seq{static_cast<std::uint32_t>(options.rng_seed),
                        static_cast<std::uint32_t>(options.rng_seed >> 32),
                        static_cast<std::uint32_t>(sys.spin.two_s()),
                        static_cast<std::uint32_t>(sys.length), static_cast<std::uint32_t>(sys.m)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal(0.0, options.random_scale);
      for (int c = 0; c < options.random_count; ++c) {
        Rapidities r;
        for (int j = 0; j < sys.m; ++j) {
          const double re = normal(rng);
          const double im = normal(rng);
          r.values.emplace_back(re, im);
        }
        seeds.push_back(std::move(r));
      }
      break;
    }
  }
  return seeds;
}

std::vector<RootCertificate> solve_all(const BetheSystem& sys, std::span<const SeedStrategy> strategies,
                                       const SeedOptions& seed_options, const NewtonOptions& options,
                                       int threads) {
  if (sys.m == 0) {
    RootCertificate vacuum;
    const ChainHamiltonian h(sys.spin, sys.length, options.cap == 0 ? default_dimension_cap() : options.cap);
    BetheState state = build_bethe_state(sys.spin, sys.length, Momenta{});
    vacuum.eigen_residual = eigen_residual(state, h);
    vacuum.hw_residual = highest_weight_residual(state);
    vacuum.energy = state.energy;
    vacuum.state = std::make_shared<const BetheState>(std::move(state));
    return {vacuum};
  }
  std::vector<Rapidities> seeds;
  for (const SeedStrategy strategy : strategies) {
    auto batch = seed_catalog(sys, strategy, seed_options);
    seeds.insert(seeds.end(), batch.begin(), batch.end());
  }
  RootRegistry registry;
  std::vector<std::optional<RootCertificate>> slots(seeds.size());
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i = next++; i < seeds.size(); i = next++) {
      SolveResult result = solve_newton(sys, seeds[i], options, &registry);
      if (result.status == SolveStatus::certified) slots[i] = std::move(result.certificate);
    }
  };
  const int workers = std::max(1, threads);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  std::vector<RootCertificate> out;
  for (auto& slot : slots) {
    if (slot) out.push_back(std::move(*slot));
  }
  std::sort(out.begin(), out.end(), [](const RootCertificate& a, const RootCertificate& b) {
    if (a.energy.real() != b.energy.real()) return a.energy.real() < b.energy.real();
    for (std::size_t j = 0; j < a.roots.size() && j < b.roots.size(); ++j) {
      if (a.roots.values[j].real() != b.roots.values[j].real()) {
        return a.roots.values[j].real() < b.roots.values[j].real();
      }
      if (a.roots.values[j].imag() != b.roots.values[j].imag()) {
        return a.roots.values[j].imag() < b.roots.values[j].imag();
      }
    }
    return false;
  });
  return out;
}

}  // namespace bethe
