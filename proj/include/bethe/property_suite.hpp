#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "bethe/bethe_solver.hpp"
#include "bethe/spin.hpp"

namespace bethe {

using ChainPoint = std::pair<Spin, int>;

struct SuiteConfig {
  std::vector<Spin> spins;                  // single-site and two-site checks
  std::vector<ChainPoint> chains;           // vacuum, hermiticity, global su(2), dispersion, aba
  std::vector<ChainPoint> solve_chains;     // eigen, multiplets, negative controls
  std::vector<ChainPoint> reconcile_chains;
  int max_m = 3;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  int samples = 200;
  std::uint64_t cap = 0;  // 0: default_dimension_cap()
};

/// s in {1/2, 1, 3/2, 2} with desk-scale chains for each group of checks.
SuiteConfig default_suite_config();
/// Every group restricted to one spin, and to one length when given.
SuiteConfig suite_config_for(Spin spin, std::optional<int> length);

struct CheckResult {
  std::string name;
  bool passed = false;
  double observed = 0.0;   // worst residual, or the failing fraction for sampled controls
  double threshold = 0.0;
  std::size_t cases = 0;
  std::string detail;
};

const std::vector<std::string>& check_names();
bool is_check_name(std::string_view name);

/// `inject_fault` corrupts one input of the check so that it must fail.
CheckResult run_check(std::string_view name, const SuiteConfig& config, bool inject_fault = false);

/// Runs `only` (every check when empty) in check_names() order.
std::vector<CheckResult> run_suite(const SuiteConfig& config, std::span<const std::string> only = {},
                                   std::optional<std::string> inject_fault = std::nullopt);

}  // namespace bethe
