#include "bethe/cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "bethe/errors.hpp"
#include "bethe/hamiltonian.hpp"
#include "bethe/json_io.hpp"
#include "bethe/property_suite.hpp"
#include "bethe/verification.hpp"

namespace bethe::cli {

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

/// "re" or "re,im".
Complex parse_complex(const std::string& text) {
  const auto comma = text.find(',');
  std::size_t used = 0;
  try {
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw UsageError("bad number: " + text);
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    std::size_t used_b = 0;
    const double re = std::stod(a, &used);
    const double im = std::stod(b, &used_b);
    if (used != a.size() || used_b != b.size()) throw UsageError("bad complex number: " + text);
    return {re, im};
  } catch (const std::logic_error&) {
    throw UsageError("bad complex number: " + text);
  }
}

struct Raw {
  std::string spin;
  int length = 0;
  int sector = -1;
  std::string format = "json";
  Tolerances tolerances;
  std::uint64_t seed = 0;
  std::uint64_t cap = 0;
  CLI::Option* length_opt = nullptr;
  CLI::Option* sector_opt = nullptr;
  CLI::Option* cap_opt = nullptr;
};

RunConfig validate(const Raw& raw) {
  RunConfig c;
  if (!raw.spin.empty()) {
    try {
      c.spin = Spin::parse(raw.spin);
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
  }
  if (raw.length_opt->count() > 0) {
    if (raw.length < 2) throw UsageError("L must be at least 2");
    c.length = raw.length;
  }
  if (raw.sector_opt->count() > 0) {
    if (raw.sector < 0) throw UsageError("sector m must be non-negative");
    if (c.spin && c.length && raw.sector > c.spin->two_s() * *c.length) {
      throw UsageError("sector m must not exceed 2sL");
    }
    c.sector = raw.sector;
  }
  c.csv = raw.format == "csv";
  for (const double t : {raw.tolerances.newton, raw.tolerances.eigen, raw.tolerances.match}) {
    if (!(t > 0.0)) throw UsageError("tolerances must be positive");
  }
  c.tolerances = raw.tolerances;
  c.seed = raw.seed;
  c.cap = raw.cap_opt->count() > 0 ? raw.cap : default_dimension_cap();
  if (c.cap == 0) throw UsageError("--cap must be positive");
  return c;
}

Spin need_spin(const RunConfig& c) {
  if (!c.spin) throw UsageError("--spin is required");
  return *c.spin;
}

int need_length(const RunConfig& c) {
  if (!c.length) throw UsageError("-L/--length is required");
  return *c.length;
}

int need_sector(const RunConfig& c) {
  if (!c.sector) throw UsageError("-m/--sector is required");
  return *c.sector;
}

void emit(std::ostream& out, const io::Json& j) { out << j.dump(2) << '\n'; }

int cmd_beta(const RunConfig& c, std::ostream& out) {
  const BetaTable table(need_spin(c));
  if (c.csv) {
    out << "m1,m2,n,value\n";
    for (const BetaEntry& e : table.entries()) out << e.m1 << ',' << e.m2 << ',' << e.n << ',' << num(e.value) << '\n';
  } else {
    emit(out, io::beta_table_json(table));
  }
  return kOk;
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) out << (col ? "," : "") << num(m(r, col));
    out << '\n';
  }
}

int cmd_local_h(const RunConfig& c, std::ostream& out) {
  const LocalHamiltonian h = local_h(need_spin(c));
  if (c.csv) {
    write_matrix_csv(out, h.matrix());
  } else {
    io::Json j = io::local_h_json(h);
    j["entries"] = io::beta_table_json(BetaTable(h.spin()))["entries"];
    emit(out, j);
  }
  return kOk;
}

int cmd_chain_h(const RunConfig& c, std::ostream& out) {
  const Spin spin = need_spin(c);
  const int length = need_length(c);
  const ChainHamiltonian h(spin, length, c.cap);
  Eigen::MatrixXd dense;
  io::Json j{{"two_s", spin.two_s()}, {"L", length}};
  if (c.sector) {
    const SectorBasis basis(spin, length, *c.sector);
    dense = h.dense_in_sector(basis);
    j["m"] = *c.sector;
    j["states"] = io::sector_json(basis)["states"];
  } else {
    dense = h.dense();
  }
  if (c.csv) {
    write_matrix_csv(out, dense);
  } else {
    j["dim"] = dense.rows();
    j["matrix"] = io::matrix_json(dense);
    emit(out, j);
  }
  return kOk;
}

int cmd_ed(const RunConfig& c, std::ostream& out) {
  const Spin spin = need_spin(c);
  const int length = need_length(c);
  const auto sectors = exact_diagonalize(spin, length, c.sector, false, c.cap);
  if (c.csv) {
    out << "m,eigenvalue\n";
    for (const auto& s : sectors) {
      for (const double e : s.eigenvalues) out << s.m << ',' << num(e) << '\n';
    }
  } else {
    emit(out, io::ed_json(spin, length, sectors));
  }
  return kOk;
}

struct SolveFlags {
  std::vector<std::string> strategies{"all"};
  int random_count = -1;  // command default: 64 for solve, 512 for reconcile
  double random_scale = 1.0;
  int threads = 1;
  int max_iter = 100;
};

std::vector<SeedStrategy> strategies_of(const SolveFlags& f) {
  std::vector<SeedStrategy> out;
  for (const auto& name : f.strategies) {
    if (name == "all") {
      for (const auto s : {SeedStrategy::free_momenta, SeedStrategy::two_string, SeedStrategy::singular_string,
                           SeedStrategy::random}) {
        if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
      }
      continue;
    }
    const auto s = parse_strategy(name);
    if (!s) throw UsageError("unknown strategy: " + name);
    if (std::find(out.begin(), out.end(), *s) == out.end()) out.push_back(*s);
  }
  return out;
}

void check_solve_flags(const SolveFlags& f) {
  if (f.random_count < -1) throw UsageError("--random-seeds must be non-negative");
  if (!(f.random_scale > 0.0)) throw UsageError("--random-scale must be positive");
  if (f.threads < 1) throw UsageError("--threads must be at least 1");
  if (f.max_iter < 1) throw UsageError("--max-iter must be at least 1");
}

int cmd_solve(const RunConfig& c, const SolveFlags& f, std::ostream& out) {
  const Spin spin = need_spin(c);
  const int length = need_length(c);
  const int m = need_sector(c);
  check_solve_flags(f);
  full_dimension(spin, length, c.cap);
  NewtonOptions options;
  options.tolerances = c.tolerances;
  options.max_iter = f.max_iter;
  options.cap = c.cap;
  const SeedOptions seeds{f.random_count < 0 ? 64 : f.random_count, f.random_scale, c.seed};
  const auto strategies = strategies_of(f);
  const auto certs = solve_all({spin, length, m}, strategies, seeds, options, f.threads);
  if (c.csv) {
    std::size_t width = 0;
    for (const auto& cert : certs) width = std::max(width, cert.roots.size());
    out << "energy_re,energy_im,bethe_residual,eigen_residual,hw_residual,iterations,singular";
    for (std::size_t j = 1; j <= width; ++j) out << ",lambda" << j << "_re,lambda" << j << "_im";
    out << '\n';
    for (const auto& cert : certs) {
      out << num(cert.energy.real()) << ',' << num(cert.energy.imag()) << ',' << num(cert.bethe_residual) << ','
          << num(cert.eigen_residual) << ',' << num(cert.hw_residual) << ',' << cert.iterations << ','
          << (cert.singular ? 1 : 0);
      for (const Complex& z : cert.roots.values) out << ',' << num(z.real()) << ',' << num(z.imag());
      out << '\n';
    }
  } else {
    io::Json list = io::Json::array();
    for (const auto& cert : certs) list.push_back(io::certificate_json(cert));
    emit(out, list);
  }
  return kOk;
}

struct StateFlags {
  std::vector<std::string> lambda;
  std::vector<std::string> k;
};

int cmd_state(const RunConfig& c, const StateFlags& f, std::ostream& out) {
  const Spin spin = need_spin(c);
  const int length = need_length(c);
  if (f.lambda.empty() == f.k.empty() && !(f.lambda.empty() && f.k.empty() && c.sector && *c.sector == 0)) {
    throw UsageError("give the roots with either --lambda or --k");
  }
  const ChainHamiltonian h(spin, length, c.cap);
  BetheState state = [&] {
    if (!f.k.empty()) {
      Momenta k;
      for (const auto& t : f.k) k.k.push_back(parse_complex(t));
      return build_bethe_state(spin, length, k);
    }
    Rapidities r;
    for (const auto& t : f.lambda) r.values.push_back(parse_complex(t));
    return build_bethe_state(spin, length, r);
  }();
  if (c.sector && *c.sector != state.m()) throw UsageError("-m does not match the number of roots");
  const double residual = eigen_residual(state, h);
  const double hw = highest_weight_residual(state);
  if (c.csv) {
    out << "index,occupation,re,im\n";
    for (std::size_t i = 0; i < state.basis->dim(); ++i) {
      out << i << ',';
      for (const int n : state.basis->state(i)) out << n;
      const Complex z = state.vector(static_cast<Eigen::Index>(i));
      out << ',' << num(z.real()) << ',' << num(z.imag()) << '\n';
    }
  } else {
    emit(out, io::state_json(state, residual, hw));
  }
  return kOk;
}

struct VerifyFlags {
  std::vector<std::string> only;
  std::string fault;
  bool list = false;
  int samples = 200;
};

int cmd_verify(const RunConfig& c, const VerifyFlags& f, std::ostream& out, std::ostream& err) {
  if (f.list) {
    for (const auto& name : check_names()) out << name << '\n';
    return kOk;
  }
  for (const auto& name : f.only) {
    if (!is_check_name(name)) throw UsageError("unknown check: " + name);
  }
  if (!f.fault.empty() && !is_check_name(f.fault)) throw UsageError("unknown check: " + f.fault);
  if (f.samples < 1) throw UsageError("--samples must be at least 1");
  if (c.length && !c.spin) throw UsageError("-L needs --spin for verify");
  SuiteConfig config = c.spin ? suite_config_for(*c.spin, c.length) : default_suite_config();
  config.tolerances = c.tolerances;
  config.seed = c.seed;
  config.cap = c.cap;
  config.samples = f.samples;
  std::optional<std::string> fault;
  if (!f.fault.empty()) fault = f.fault;
  const auto results = run_suite(config, f.only, fault);
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    if (!r.passed) err << "FAIL " << r.name << ": observed " << num(r.observed) << ", threshold " << num(r.threshold)
                       << (r.detail.empty() ? "" : " (" + r.detail + ")") << '\n';
  }
  if (c.csv) {
    out << "name,passed,observed,threshold,cases\n";
    for (const auto& r : results) {
      out << r.name << ',' << (r.passed ? 1 : 0) << ',' << num(r.observed) << ',' << num(r.threshold) << ','
          << r.cases << '\n';
    }
  } else {
    emit(out, io::check_results_json(results));
  }
  return all ? kOk : kVerificationFailed;
}

struct AbaFlags {
  std::vector<std::string> lambda;
  int count = 20;
};

int cmd_aba(const RunConfig& c, const AbaFlags& f, std::ostream& out) {
  const Spin spin = need_spin(c);
  const int length = need_length(c);
  if (f.count < 1) throw UsageError("--count must be at least 1");
  full_dimension(spin, length, c.cap);
  std::vector<Complex> lambdas;
  for (const auto& t : f.lambda) lambdas.push_back(parse_complex(t));
  if (lambdas.empty()) {
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < f.count; ++i) {
      const double re = d(rng);
      const double im = d(rng);
      lambdas.emplace_back(re, im);
    }
  }
  constexpr double kThreshold = 1e-10;
  double worst = 0.0;
  io::Json rows = io::Json::array();
  if (c.csv) out << "lambda_re,lambda_im,overlap\n";
  for (const Complex& lambda : lambdas) {
    const StateVector phi = aba_phi1(spin, length, lambda);
    const BetheState psi = build_bethe_state(spin, length, Rapidities{{lambda}});
    const double overlap = normalized_overlap(phi, psi.vector);
    worst = std::max(worst, std::abs(1.0 - overlap));
    if (c.csv) {
      out << num(lambda.real()) << ',' << num(lambda.imag()) << ',' << num(overlap) << '\n';
    } else {
      rows.push_back({{"lambda", io::complex_json(lambda)}, {"overlap", overlap}});
    }
  }
  if (!c.csv) {
    emit(out, {{"two_s", spin.two_s()},
               {"L", length},
               {"comparisons", std::move(rows)},
               {"max_deviation", worst},
               {"threshold", kThreshold},
               {"passed", worst <= kThreshold}});
  }
  return worst <= kThreshold ? kOk : kVerificationFailed;
}

int cmd_reconcile(const RunConfig& c, const SolveFlags& f, int m_max, std::ostream& out) {
  const Spin spin = need_spin(c);
  const int length = need_length(c);
  check_solve_flags(f);
  ReconcileOptions options;
  options.tolerances = c.tolerances;
  options.seeds = {f.random_count < 0 ? ReconcileOptions{}.seeds.random_count : f.random_count, f.random_scale,
                   c.seed};
  options.strategies = strategies_of(f);
  options.threads = f.threads;
  options.cap = c.cap;
  const SpectrumReport report =
      reconcile_spectrum(spin, length, m_max < 0 ? spin.two_s() * length / 2 : m_max, options);
  if (c.csv) {
    out << "kind,m,sector,energy,gap\n";
    for (const auto& mt : report.matches) {
      out << "match," << mt.hw_m << ',' << mt.sector << ',' << num(mt.ed_energy) << ',' << num(mt.gap) << '\n';
    }
    for (const auto& u : report.unmatched) out << "unmatched,," << u.m << ',' << num(u.energy) << ",\n";
  } else {
    emit(out, io::spectrum_report_json(report));
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-s XXX chain: Hamiltonian, Bethe ansatz and verification", "bethe"};
  app.require_subcommand(1);
  app.fallthrough();

  Raw raw;
  app.add_option("--spin", raw.spin, "Spin as an exact rational: 1/2, 1, 3/2, ...");
  raw.length_opt = app.add_option("-L,--length", raw.length, "Chain length");
  raw.sector_opt = app.add_option("-m,--sector", raw.sector, "Number of lowerings m (S^z = Ls - m)");
  app.add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--tol-newton", raw.tolerances.newton, "Newton residual tolerance")->capture_default_str();
  app.add_option("--tol-eigen", raw.tolerances.eigen, "Eigenvector residual tolerance")->capture_default_str();
  app.add_option("--tol-match", raw.tolerances.match, "Bethe/ED energy match tolerance")->capture_default_str();
  app.add_option("--seed", raw.seed, "Random seed")->capture_default_str();
  raw.cap_opt = app.add_option("--cap", raw.cap, "Full-space dimension cap (overrides BETHE_CAP)");

  auto* beta = app.add_subcommand("beta", "Dump the beta coefficient table");
  auto* loc = app.add_subcommand("local-h", "Dump the two-site Hamiltonian");
  auto* chain = app.add_subcommand("chain-h", "Dense chain Hamiltonian, full or one sector");
  auto* ed = app.add_subcommand("ed", "Exact diagonalization per S^z sector");

  SolveFlags solve_flags;
  const auto add_solve_flags = [&](CLI::App* sub) {
    sub->add_option("--strategy", solve_flags.strategies,
                    "free-momenta, two-string, random, singular-string or all")
        ->delimiter(',');
    sub->add_option("--random-seeds", solve_flags.random_count, "Number of random seeds (solve 64, reconcile 512)");
    sub->add_option("--random-scale", solve_flags.random_scale, "Spread of random seeds")->capture_default_str();
    sub->add_option("--threads", solve_flags.threads, "Worker threads")->capture_default_str();
    sub->add_option("--max-iter", solve_flags.max_iter, "Newton iteration cap")->capture_default_str();
  };
  auto* solve = app.add_subcommand("solve", "Solve and certify the Bethe equations in one sector");
  add_solve_flags(solve);

  StateFlags state_flags;
  auto* state = app.add_subcommand("state", "Build a Bethe vector from roots");
  state->add_option("--lambda", state_flags.lambda, "Rapidity re[,im]; repeat per root");
  state->add_option("--k", state_flags.k, "Momentum re[,im]; repeat per root");

  VerifyFlags verify_flags;
  auto* verify = app.add_subcommand("verify", "Run the property suite");
  verify->add_option("--only", verify_flags.only, "Checks to run")->delimiter(',');
  verify->add_option("--inject-fault", verify_flags.fault, "Corrupt the named check (test hook)");
  verify->add_option("--samples", verify_flags.samples, "Random samples per sampled check")->capture_default_str();
  verify->add_flag("--list", verify_flags.list, "List check names");

  AbaFlags aba_flags;
  auto* aba = app.add_subcommand("aba-compare", "Compare the one-magnon algebraic and coordinate vectors");
  aba->add_option("--lambda", aba_flags.lambda, "Rapidity re[,im]; repeat per comparison");
  aba->add_option("--count", aba_flags.count, "Random rapidities when none are given")->capture_default_str();

  int m_max = -1;
  auto* reconcile = app.add_subcommand("reconcile", "Match certified Bethe multiplets against ED");
  add_solve_flags(reconcile);
  reconcile->add_option("--m-max", m_max, "Largest highest-weight sector (default floor(Ls))");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const RunConfig config = validate(raw);
    if (beta->parsed()) return cmd_beta(config, out);
    if (loc->parsed()) return cmd_local_h(config, out);
    if (chain->parsed()) return cmd_chain_h(config, out);
    if (ed->parsed()) return cmd_ed(config, out);
    if (solve->parsed()) return cmd_solve(config, solve_flags, out);
    if (state->parsed()) return cmd_state(config, state_flags, out);
    if (verify->parsed()) return cmd_verify(config, verify_flags, out, err);
    if (aba->parsed()) return cmd_aba(config, aba_flags, out);
    if (reconcile->parsed()) return cmd_reconcile(config, solve_flags, m_max, out);
    err << "no command given\n";
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << '\n';
    return kResourceCap;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
}

}  // namespace bethe::cli
