#include "bethe/property_suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "bethe/bethe_core.hpp"
#include "bethe/errors.hpp"
#include "bethe/hamiltonian.hpp"
#include "bethe/su2_ops.hpp"
#include "bethe/verification.hpp"

namespace bethe {

namespace {

constexpr double kFault = 1e-3;
const Complex kI{0.0, 1.0};

double max_abs(const Eigen::MatrixXd& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

std::mt19937_64 make_rng(const SuiteConfig& config, std::uint64_t salt) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed), static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(salt)};
  return std::mt19937_64(seq);
}

Complex random_complex(std::mt19937_64& rng, double half_width) {
  std::uniform_real_distribution<double> d(-half_width, half_width);
  const double re = d(rng);
  const double im = d(rng);
  return {re, im};
}

std::uint64_t cap_of(const SuiteConfig& config) {
  return config.cap == 0 ? default_dimension_cap() : config.cap;
}

std::string point_label(const ChainPoint& p) {
  return "s=" + p.first.to_string() + " L=" + std::to_string(p.second);
}

/// Accumulates the worst value of a residual and where it occurred.
struct Worst {
  double value = 0.0;
  std::string where;
  std::size_t cases = 0;

  void see(double v, const std::string& label) {
    ++cases;
    if (!(v <= value)) {  // NaN counts as worst
      value = v;
      where = label;
    }
  }
};

CheckResult residual_result(const Worst& w, double threshold) {
  CheckResult r;
  r.observed = w.value;
  r.threshold = threshold;
  r.cases = w.cases;
  r.passed = w.value <= threshold;
  if (!w.where.empty()) r.detail = "worst at " + w.where;
  return r;
}

Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  }
  return out;
}

Eigen::MatrixXd commutator(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return a * b - b * a; }

CheckResult check_su2_local(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const Spin spin : config.spins) {
    Eigen::MatrixXd sp = s_plus(spin);
    const Eigen::MatrixXd sm = s_minus(spin);
    const Eigen::MatrixXd sz = s_z(spin);
    if (fault) sp(0, 1) += kFault;
    const double v = std::max({max_abs(commutator(sp, sm) - 2.0 * sz), max_abs(commutator(sz, sp) - sp),
                               max_abs(commutator(sz, sm) + sm)});
    w.see(v, "s=" + spin.to_string());
  }
  return residual_result(w, 1e-12);
}

CheckResult check_casimir(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const Spin spin : config.spins) {
    const Eigen::MatrixXd sp = s_plus(spin);
    const Eigen::MatrixXd sm = s_minus(spin);
    Eigen::MatrixXd sz = s_z(spin);
    if (fault) sz(0, 0) += kFault;
    const double s = spin.value();
    const Eigen::MatrixXd c = sz * sz + 0.5 * (sp * sm + sm * sp);
    w.see(max_abs(c - s * (s + 1.0) * Eigen::MatrixXd::Identity(spin.dim(), spin.dim())),
          "s=" + spin.to_string());
  }
  return residual_result(w, 1e-12);
}

CheckResult check_e_minus(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const Spin spin : config.spins) {
    Eigen::MatrixXd e = e_minus(spin);
    if (fault) e(1, 0) += kFault;
    const Eigen::MatrixXd g = g_matrix(spin);
    const Eigen::MatrixXd conj = g * s_minus(spin) * g.inverse();
    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(spin.dim(), spin.dim());
    for (int p = 0; p < spin.dim(); ++p) power = power * e;
    w.see(std::max(max_abs(e - conj), max_abs(power)), "s=" + spin.to_string());
  }
  return residual_result(w, 1e-13);
}

CheckResult check_spin_half(const SuiteConfig&, bool fault) {
  const Spin half(1);
  const Eigen::MatrixXd h = local_h(half).matrix();
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  // Swap of the two sites in the (a, b) -> 2a + b basis, minus the identity.
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) expected(2 * b + a, 2 * a + b) += 1.0;
  }
  expected -= Eigen::MatrixXd::Identity(4, 4);
  if (fault) expected(0, 0) += kFault;
  const double matrix_gap = max_abs(h - expected);
  double ed_gap = 0.0;
  const std::vector<double> reference{-4.0, 0.0, 0.0, 0.0};
  std::vector<double> levels;
  for (const auto& sector : exact_diagonalize(half, 2)) {
    levels.insert(levels.end(), sector.eigenvalues.begin(), sector.eigenvalues.end());
  }
  std::sort(levels.begin(), levels.end());
  for (std::size_t k = 0; k < reference.size(); ++k) ed_gap = std::max(ed_gap, std::abs(levels[k] - reference[k]));
  CheckResult r;
  r.cases = 2;
  r.observed = std::max(matrix_gap, ed_gap);
  r.threshold = 1e-12;
  r.passed = matrix_gap == 0.0 && ed_gap <= 1e-12;
  std::ostringstream os;
  os << "local h vs P - I: " << matrix_gap << ", L=2 spectrum: " << ed_gap;
  r.detail = os.str();
  return r;
}

CheckResult check_beta_symmetry(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const Spin spin : config.spins) {
    const BetaTable table(spin);
    double worst = 0.0;
    for (const BetaEntry& e : table.entries()) {
      const double mirrored = table.at(e.m2, e.m1, -e.n) + (fault ? kFault : 0.0);
      worst = std::max(worst, std::abs(mirrored - e.value));
    }
    const Eigen::MatrixXd h = LocalHamiltonian(table).matrix();
    worst = std::max(worst, max_abs(h - h.transpose()));
    w.see(worst, "s=" + spin.to_string());
  }
  return residual_result(w, 1e-15);
}

CheckResult check_beta_recursions(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const Spin spin : config.spins) {
    const RecursionReport rep = check_beta_recursions(spin);
    // The recursion routine takes no corruptible input; the fault is added to its output.
    w.see(rep.max_violation() + (fault ? kFault : 0.0),
          "s=" + spin.to_string() + " (" + std::to_string(rep.relations_checked) + " relations)");
  }
  return residual_result(w, 1e-13);
}

CheckResult check_local_h_commutator(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const Spin spin : config.spins) {
    Eigen::MatrixXd h = local_h(spin).matrix();
    if (fault) h(0, 0) += kFault;
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(spin.dim(), spin.dim());
    double worst = 0.0;
    for (const Eigen::MatrixXd& op : {s_z(spin), s_plus(spin), s_minus(spin)}) {
      const Eigen::MatrixXd total = kron(op, id) + kron(id, op);
      worst = std::max(worst, max_abs(commutator(total, h)));
    }
    w.see(worst, "s=" + spin.to_string());
  }
  return residual_result(w, 1e-12);
}

CheckResult check_hermiticity(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const ChainPoint& p : config.chains) {
    const ChainHamiltonian h(p.first, p.second, cap_of(config));
    for (int m = 0; m <= p.first.two_s() * p.second; ++m) {
      const SectorBasis basis(p.first, p.second, m);
      if (basis.dim() > kDenseLimit) continue;
      Eigen::MatrixXd dense = h.dense_in_sector(basis);
      if (fault && basis.dim() > 1) dense(0, 1) += kFault;
      w.see(max_abs(dense - dense.transpose()), point_label(p) + " m=" + std::to_string(m));
    }
  }
  return residual_result(w, 1e-13);
}

CheckResult check_global_su2(const SuiteConfig& config, bool fault) {
  Worst w;
  auto rng = make_rng(config, 11);
  for (const ChainPoint& p : config.chains) {
    const ChainHamiltonian h(p.first, p.second, cap_of(config));
    const int top = p.first.two_s() * p.second;
    std::vector<SectorBasis> sectors;
    for (int m = 0; m <= top; ++m) sectors.emplace_back(p.first, p.second, m);
    // Optional su(2)-breaking term: bump times the lowering count of site 1.
    const auto apply_h = [&](const SectorBasis& b, const StateVector& v) {
      StateVector out = h.apply_in_sector(b, v);
      if (fault) {
        for (std::size_t i = 0; i < b.dim(); ++i) {
          out(static_cast<Eigen::Index>(i)) += kFault * b.state(i)[0] * v(static_cast<Eigen::Index>(i));
        }
      }
      return out;
    };
    for (int m = 0; m <= top; ++m) {
      const SectorBasis& b = sectors[static_cast<std::size_t>(m)];
      StateVector v(static_cast<Eigen::Index>(b.dim()));
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = random_complex(rng, 1.0);
      v.normalize();
      double worst = 0.0;
      if (m < top) {
        const SectorBasis& down = sectors[static_cast<std::size_t>(m + 1)];
        const StateVector lhs = apply_generator(Generator::minus, b, down, apply_h(b, v));
        const StateVector rhs = apply_h(down, apply_generator(Generator::minus, b, down, v));
        worst = std::max(worst, (lhs - rhs).norm());
      }
      if (m > 0) {
        const SectorBasis& up = sectors[static_cast<std::size_t>(m - 1)];
        const StateVector lhs = apply_generator(Generator::plus, b, up, apply_h(b, v));
        const StateVector rhs = apply_h(up, apply_generator(Generator::plus, b, up, v));
        worst = std::max(worst, (lhs - rhs).norm());
      }
      w.see(worst, point_label(p) + " m=" + std::to_string(m));
    }
  }
  return residual_result(w, 1e-11);
}

CheckResult check_vacuum(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const ChainPoint& p : config.chains) {
    const ChainHamiltonian h(p.first, p.second, cap_of(config));
    StateVector vacuum = StateVector::Zero(static_cast<Eigen::Index>(h.full_dim()));
    vacuum(0) = 1.0;
    if (fault) vacuum(1) = kFault;
    w.see(h.apply(vacuum).norm(), point_label(p));
  }
  return residual_result(w, 1e-13);
}

CheckResult check_dispersion(const SuiteConfig& config, bool fault) {
  Worst w;
  for (const ChainPoint& p : config.chains) {
    const ChainHamiltonian h(p.first, p.second, cap_of(config));
    for (int n = 1; n < p.second; ++n) {
      const double k = 2.0 * std::numbers::pi * n / p.second + (fault ? kFault : 0.0);
      const BetheState state = build_bethe_state(p.first, p.second, Momenta{{Complex{k, 0.0}}});
      const double expected = -(1.0 - std::cos(k)) / p.first.value();
      const double v = std::max({eigen_residual(state, h), highest_weight_residual(state),
                                 std::abs(state.energy - expected)});
      w.see(v, point_label(p) + " n=" + std::to_string(n));
    }
  }
  return residual_result(w, 1e-10);
}

CheckResult check_sigma(const SuiteConfig& config, bool fault) {
  Worst w;
  auto rng = make_rng(config, 13);
  for (const Spin spin : config.spins) {
    double worst = 0.0;
    int done = 0;
    while (done < config.samples) {
      const Complex u = random_complex(rng, 2.0);
      const Complex v = random_complex(rng, 2.0);
      const Complex x = random_complex(rng, 2.0);
      try {
        const Complex uv = sigma_u(u, v, spin);
        const Complex vu = sigma_u(v + (fault ? kFault : 0.0), u, spin);
        const Complex ux = sigma_u(u, x, spin);
        const Complex vx = sigma_u(v, x, spin);
        const Complex lhs = uv * ux * vx;
        const Complex rhs = vx * ux * uv;
        worst = std::max({worst, std::abs(uv * vu - 1.0), std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs))});
        const Complex lambda = random_complex(rng, 2.0);
        const Complex mu = random_complex(rng, 2.0);
        const Complex via_u = sigma_u(u_of_lambda(lambda, spin), u_of_lambda(mu, spin), spin);
        worst = std::max(worst, std::abs(via_u - (lambda - mu - kI) / (lambda - mu + kI)) /
                                    std::max(1.0, std::abs(via_u)));
      } catch (const Error&) {
        continue;  // draw landed on a pole; resample
      }
      ++done;
    }
    w.see(worst, "s=" + spin.to_string());
  }
  return residual_result(w, 1e-12);
}

Momenta random_real_momenta(std::mt19937_64& rng, int m) {
  std::uniform_real_distribution<double> d(0.1, 2.0 * std::numbers::pi - 0.1);
  Momenta k;
  for (int j = 0; j < m; ++j) k.k.emplace_back(d(rng), 0.0);
  return k;
}

CheckResult check_amplitudes(const SuiteConfig& config, bool fault) {
  Worst exchange;
  Worst coinciding;
  auto rng = make_rng(config, 17);
  const int per = std::max(1, config.samples / 10);
  for (const Spin spin : config.spins) {
    const double s2 = spin.two_s();
    for (int m = 2; m <= 4; ++m) {
      double worst_ex = 0.0;
      double worst_co = 0.0;
      for (int t = 0; t < per; ++t) {
        const Momenta k = random_real_momenta(rng, m);
        const auto u = k.u();
        for (const Permutation& perm : permutations_lex(m)) {
          const Complex a = amplitude_AP(perm, k, spin);
          for (int j = 0; j + 1 < m; ++j) {
            Permutation swapped = perm;
            std::swap(swapped[static_cast<std::size_t>(j)], swapped[static_cast<std::size_t>(j + 1)]);
            const Complex sig = sigma_u(u[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])],
                                        u[static_cast<std::size_t>(perm[static_cast<std::size_t>(j + 1)])], spin);
            const Complex b = amplitude_AP(swapped, k, spin) + (fault ? kFault : 0.0);
            worst_ex = std::max(worst_ex, std::abs(b - sig * a) / std::max(1.0, std::abs(a)));
          }
        }
        // (S_i S_{i+1} + (2s-1) S_i - (2s+1) S_{i+1} + 1) a = 0 at x_i = x_{i+1}.
        for (int i = 0; i + 1 < m; ++i) {
          CoordinateTuple x(static_cast<std::size_t>(m));
          for (int j = 0; j < m; ++j) x[static_cast<std::size_t>(j)] = 2 * j + 1;
          x[static_cast<std::size_t>(i + 1)] = x[static_cast<std::size_t>(i)];
          const auto shifted = [&](int di, int dj) {
            CoordinateTuple y = x;
            y[static_cast<std::size_t>(i)] += di;
            y[static_cast<std::size_t>(i + 1)] += dj;
            return amplitude_a(y, k, spin);
          };
          const Complex t11 = shifted(1, 1);
          const Complex t10 = (s2 - 1.0) * shifted(1, 0);
          const Complex t01 = (s2 + 1.0) * shifted(0, 1);
          const Complex t00 = shifted(0, 0);
          const double scale = std::max({1.0, std::abs(t11), std::abs(t10), std::abs(t01), std::abs(t00)});
          worst_co = std::max(worst_co, std::abs(t11 + t10 - t01 + t00) / scale);
        }
      }
      const std::string label = "s=" + spin.to_string() + " m=" + std::to_string(m);
      exchange.see(worst_ex, label);
      coinciding.see(worst_co, label);
    }
  }
  CheckResult r;
  r.cases = exchange.cases + coinciding.cases;
  r.observed = std::max(exchange.value, coinciding.value);
  r.threshold = 1e-11;
  r.passed = exchange.value <= 1e-12 && coinciding.value <= 1e-11;
  std::ostringstream os;
  os << "exchange " << exchange.value << " (" << exchange.where << "), coinciding " << coinciding.value << " ("
     << coinciding.where << ")";
  r.detail = os.str();
  return r;
}

CheckResult check_product_identity(const SuiteConfig& config, bool fault) {
  Worst w;
  auto rng = make_rng(config, 19);
  for (const Spin spin : config.spins) {
    const double s2 = spin.two_s();
    for (int m = 2; m <= 3; ++m) {
      double worst = 0.0;
      for (int t = 0; t < config.samples; ++t) {
        std::vector<Complex> z{random_complex(rng, 1.5)};
        for (int j = 1; j < m; ++j) {
          // P_{0,2}(z_j, z_{j+1}) = 0 solved for z_{j+1}.
          const Complex prev = z.back();
          z.push_back(((s2 - 1.0) * prev + 1.0) / ((s2 + 1.0) - prev));
        }
        if (fault) z[0] += kFault;
        Complex product = 1.0;
        for (const Complex& v : z) product *= v;
        Complex rhs = 1.0 - m;
        for (int j = 1; j <= m; ++j) {
          double chi = ((m + j) % 2 == 0) ? 1.0 : -1.0;
          for (int kk = 1; kk <= m - j; ++kk) chi *= s2 / kk - 1.0;
          for (int l = 1; l <= j - 1; ++l) chi *= s2 / l + 1.0;
          rhs += chi * z[static_cast<std::size_t>(j - 1)];
        }
        worst = std::max(worst, std::abs(product - rhs) / std::max(1.0, std::abs(product)));
      }
      w.see(worst, "s=" + spin.to_string() + " m=" + std::to_string(m));
    }
  }
  return residual_result(w, 1e-11);
}

CheckResult check_energy_forms(const SuiteConfig& config, bool fault) {
  Worst w;
  auto rng = make_rng(config, 23);
  std::uniform_int_distribution<int> count(1, 4);
  for (const Spin spin : config.spins) {
    double worst = 0.0;
    for (int t = 0; t < config.samples; ++t) {
      Rapidities r;
      const int m = count(rng);
      for (int j = 0; j < m; ++j) r.values.push_back(random_complex(rng, 2.0));
      try {
        const Complex el = energy_lambda(r, spin);
        if (fault) r.values[0] += kFault;
        const Complex ek = energy_k(to_momenta(r, spin), spin);
        worst = std::max(worst, std::abs(el - ek) / std::max(1.0, std::abs(el)));
      } catch (const DomainError&) {
        --t;
      }
    }
    w.see(worst, "s=" + spin.to_string());
  }
  return residual_result(w, 1e-12);
}

/// Certified states of every solve chain, m = 1..max_m.
struct SolvedPoint {
  ChainPoint point;
  int m;
  std::vector<RootCertificate> certs;
};

std::vector<SolvedPoint> solve_points(const SuiteConfig& config) {
  std::vector<SolvedPoint> out;
  NewtonOptions options;
  options.tolerances = config.tolerances;
  options.cap = cap_of(config);
  SeedOptions seeds;
  seeds.rng_seed = config.seed;
  const std::vector<SeedStrategy> strategies{SeedStrategy::free_momenta, SeedStrategy::two_string,
                                             SeedStrategy::singular_string, SeedStrategy::random};
  for (const ChainPoint& p : config.solve_chains) {
    for (int m = 1; m <= config.max_m && m <= p.first.two_s() * p.second; ++m) {
      out.push_back({p, m, solve_all({p.first, p.second, m}, strategies, seeds, options)});
    }
  }
  return out;
}

CheckResult check_eigen(const SuiteConfig& config, bool fault) {
  Worst w;
  std::vector<std::string> problems;
  for (const SolvedPoint& sp : solve_points(config)) {
    const std::string label = point_label(sp.point) + " m=" + std::to_string(sp.m);
    const bool highest_weight_possible = 2 * sp.m <= sp.point.first.two_s() * sp.point.second;
    if (highest_weight_possible && sp.certs.empty()) problems.push_back(label + ": no certified roots");
    if (!highest_weight_possible && !sp.certs.empty()) problems.push_back(label + ": certified roots above Ls");
    if (sp.certs.empty()) continue;
    const auto ed = exact_diagonalize(sp.point.first, sp.point.second, sp.m, false, cap_of(config));
    const auto& levels = ed.front().eigenvalues;
    for (const auto& cert : sp.certs) {
      double gap = 1e300;
      const Complex e = cert.energy + (fault ? kFault : 0.0);
      for (const double level : levels) gap = std::min(gap, std::abs(level - e));
      // Normalized so that the eigen and match tolerances share one threshold.
      const double v = std::max({cert.eigen_residual / config.tolerances.eigen,
                                 cert.hw_residual / config.tolerances.eigen, gap / config.tolerances.match});
      w.see(v, label);
    }
  }
  CheckResult r = residual_result(w, 1.0);
  r.passed = r.passed && problems.empty();
  for (const auto& p : problems) r.detail += (r.detail.empty() ? "" : "; ") + p;
  r.detail += (r.detail.empty() ? "" : "; ") + std::string("observed is max residual/tolerance");
  return r;
}

CheckResult check_multiplets(const SuiteConfig& config, bool fault) {
  Worst w;
  std::vector<std::string> problems;
  for (const SolvedPoint& sp : solve_points(config)) {
    const std::string label = point_label(sp.point) + " m=" + std::to_string(sp.m);
    const int two_sl = sp.point.first.two_s() * sp.point.second;
    for (const auto& cert : sp.certs) {
      const BetheState& state = *cert.state;
      const int expected = two_sl - 2 * sp.m + 1;
      const int found = multiplet_dimension(state);
      if (found != expected) {
        problems.push_back(label + ": multiplet of " + std::to_string(found) + " instead of " +
                           std::to_string(expected));
      }
      double v = descendant_annihilation_residual(state);
      if (expected > 1) {
        // S^- Psi is an eigenvector with the same energy.
        BetheState down = state;
        down.basis = std::make_shared<const SectorBasis>(state.spin, state.length, sp.m + 1);
        down.vector = apply_generator(Generator::minus, *state.basis, *down.basis, state.vector);
        down.energy += fault ? kFault : 0.0;
        v = std::max(v, eigen_residual(down, ChainHamiltonian(state.spin, state.length, cap_of(config))));
      }
      w.see(v, label);
    }
  }
  CheckResult r = residual_result(w, 1e-9);
  r.passed = r.passed && problems.empty();
  for (const auto& p : problems) r.detail += "; " + p;
  return r;
}

CheckResult check_reconcile(const SuiteConfig& config, bool fault) {
  CheckResult r;
  r.threshold = 0.0;
  ReconcileOptions options;
  options.tolerances = config.tolerances;
  options.seeds.rng_seed = config.seed;
  options.cap = cap_of(config);
  double worst_deficit = 0.0;
  std::ostringstream os;
  for (const ChainPoint& p : config.reconcile_chains) {
    const int m_max = fault ? 0 : p.first.two_s() * p.second / 2;
    const SpectrumReport rep = reconcile_spectrum(p.first, p.second, m_max, options);
    ++r.cases;
    const double deficit = 1.0 - rep.matched_fraction();
    worst_deficit = std::max(worst_deficit, deficit);
    os << point_label(p) << ": " << rep.matched_levels() << "/" << rep.total_levels << "; ";
  }
  r.observed = worst_deficit;
  r.passed = worst_deficit == 0.0;
  r.detail = os.str();
  return r;
}

CheckResult check_aba(const SuiteConfig& config, bool fault) {
  Worst w;
  auto rng = make_rng(config, 29);
  const int per = std::max(1, config.samples / 10);
  for (const ChainPoint& p : config.chains) {
    double worst = 0.0;
    for (int t = 0; t < per; ++t) {
      const Complex lambda = random_complex(rng, 2.0);
      const StateVector phi = aba_phi1(p.first, p.second, lambda);
      const BetheState psi = build_bethe_state(p.first, p.second, Rapidities{{lambda + (fault ? kFault : 0.0)}});
      worst = std::max(worst, std::abs(1.0 - normalized_overlap(phi, psi.vector)));
    }
    w.see(worst, point_label(p));
  }
  return residual_result(w, 1e-10);
}

CheckResult check_negative_controls(const SuiteConfig& config, bool fault) {
  CheckResult r;
  const double shift = fault ? 0.0 : 0.01;
  double weakest = 1e300;
  std::size_t perturbed = 0;
  for (const SolvedPoint& sp : solve_points(config)) {
    const ChainHamiltonian h(sp.point.first, sp.point.second, cap_of(config));
    for (const auto& cert : sp.certs) {
      if (cert.singular) continue;
      for (std::size_t j = 0; j < cert.roots.size(); ++j) {
        Rapidities moved = cert.roots;
        moved.values[j] += shift;
        try {
          const BetheState state = build_bethe_state(sp.point.first, sp.point.second, moved);
          weakest = std::min(weakest, eigen_residual(state, h));
          ++perturbed;
        } catch (const Error&) {
          // a vanishing vector after the shift is not an eigenvector either
        }
      }
    }
  }
  auto rng = make_rng(config, 31);
  int above = 0;
  const int trials = 100;
  for (const ChainPoint& p : config.solve_chains) {
    for (int t = 0; t < trials; ++t) {
      const Momenta k = random_real_momenta(rng, 2);
      const BetheState state = build_bethe_state(p.first, p.second, k);
      if (highest_weight_residual(state) > 1e-3) ++above;
    }
  }
  const double total = static_cast<double>(trials * config.solve_chains.size());
  const double fraction = total > 0.0 ? above / total : 1.0;
  if (fault) r.detail = "fault: roots left unperturbed";
  r.cases = perturbed + static_cast<std::size_t>(total);
  r.observed = 1.0 - fraction;
  r.threshold = 0.05;
  const bool perturbation_ok = perturbed > 0 && weakest > 1e-4;
  r.passed = perturbation_ok && fraction >= 0.95;
  std::ostringstream os;
  os << (r.detail.empty() ? "" : r.detail + "; ") << "smallest perturbed residual " << weakest << " over "
     << perturbed << " shifts; random-momenta highest-weight violations " << fraction * 100.0 << "%";
  r.detail = os.str();
  return r;
}

using CheckFn = std::function<CheckResult(const SuiteConfig&, bool)>;

const std::vector<std::pair<std::string, CheckFn>>& registry() {
  static const std::vector<std::pair<std::string, CheckFn>> checks{
      {"su2-local", check_su2_local},
      {"casimir", check_casimir},
      {"e-minus", check_e_minus},
      {"spin-half", check_spin_half},
      {"beta-symmetry", check_beta_symmetry},
      {"beta-recursions", check_beta_recursions},
      {"local-h-commutator", check_local_h_commutator},
      {"hermiticity", check_hermiticity},
      {"global-su2", check_global_su2},
      {"vacuum", check_vacuum},
      {"dispersion", check_dispersion},
      {"sigma", check_sigma},
      {"amplitudes", check_amplitudes},
      {"product-identity", check_product_identity},
      {"energy-forms", check_energy_forms},
      {"eigen", check_eigen},
      {"multiplets", check_multiplets},
      {"reconcile", check_reconcile},
      {"aba", check_aba},
      {"negative-controls", check_negative_controls},
  };
  return checks;
}

}  // namespace

SuiteConfig default_suite_config() {
  SuiteConfig c;
  c.spins = {Spin(1), Spin(2), Spin(3), Spin(4)};
  c.chains = {{Spin(1), 6}, {Spin(2), 4}, {Spin(3), 3}, {Spin(4), 2}};
  c.solve_chains = {{Spin(1), 4}, {Spin(1), 5}, {Spin(1), 6}, {Spin(2), 4}, {Spin(2), 5}};
  c.reconcile_chains = {{Spin(1), 4}, {Spin(2), 3}, {Spin(1), 6}, {Spin(4), 2}};
  return c;
}

SuiteConfig suite_config_for(Spin spin, std::optional<int> length) {
  SuiteConfig c = default_suite_config();
  c.spins = {spin};
  const auto restrict = [&](std::vector<ChainPoint>& points) {
    std::vector<ChainPoint> kept;
    if (length) {
      kept.emplace_back(spin, *length);
    } else {
      for (const auto& p : points) {
        if (p.first == spin) kept.push_back(p);
      }
      if (kept.empty()) kept.emplace_back(spin, 3);
    }
    points = kept;
  };
  restrict(c.chains);
  restrict(c.solve_chains);
  restrict(c.reconcile_chains);
  return c;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

bool is_check_name(std::string_view name) {
  const auto& names = check_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

CheckResult run_check(std::string_view name, const SuiteConfig& config, bool inject_fault) {
  for (const auto& [n, fn] : registry()) {
    if (n == name) {
      CheckResult r = fn(config, inject_fault);
      r.name = n;
      return r;
    }
  }
  throw DomainError("unknown check: " + std::string(name));
}

std::vector<CheckResult> run_suite(const SuiteConfig& config, std::span<const std::string> only,
                                   std::optional<std::string> inject_fault) {
  for (const auto& name : only) {
    if (!is_check_name(name)) throw DomainError("unknown check: " + name);
  }
  if (inject_fault && !is_check_name(*inject_fault)) throw DomainError("unknown check: " + *inject_fault);
  std::vector<CheckResult> out;
  for (const auto& name : check_names()) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) continue;
    out.push_back(run_check(name, config, inject_fault && *inject_fault == name));
  }
  return out;
}

}  // namespace bethe
