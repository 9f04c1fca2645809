#include "bethe/json_io.hpp"

#include <algorithm>

namespace bethe::io {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json complex_list(const std::vector<Complex>& values) {
  Json out = Json::array();
  for (const Complex& z : values) out.push_back(complex_json(z));
  return out;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json beta_table_json(const BetaTable& table) {
  Json entries = Json::array();
  for (const BetaEntry& e : table.entries()) {
    entries.push_back({{"m1", e.m1}, {"m2", e.m2}, {"n", e.n}, {"value", e.value}});
  }
  return {{"two_s", table.spin().two_s()}, {"entries", std::move(entries)}};
}

Json local_h_json(const LocalHamiltonian& h) {
  return {{"two_s", h.spin().two_s()}, {"matrix", matrix_json(h.matrix())}};
}

Json sector_json(const SectorBasis& basis) {
  Json states = Json::array();
  for (const Occupation& occ : basis.states()) states.push_back(occ);
  return {{"two_s", basis.spin().two_s()},
          {"L", basis.length()},
          {"m", basis.m()},
          {"dim", basis.dim()},
          {"states", std::move(states)}};
}

Json state_json(const BetheState& state, double residual, double hw_residual) {
  Json vector = Json::array();
  for (Eigen::Index i = 0; i < state.vector.size(); ++i) vector.push_back(complex_json(state.vector(i)));
  return {{"two_s", state.spin.two_s()},
          {"L", state.length},
          {"m", state.m()},
          {"k", complex_list(state.momenta.k)},
          {"lambda", complex_list(state.rapidities.values)},
          {"energy", complex_json(state.energy)},
          {"norm", state.norm},
          {"residual", residual},
          {"hw_residual", hw_residual},
          {"regularized", state.regularized},
          {"vector", std::move(vector)}};
}

Json certificate_json(const RootCertificate& cert) {
  return {{"lambda", complex_list(cert.roots.values)},
          {"bethe_residual", cert.bethe_residual},
          {"eigen_residual", cert.eigen_residual},
          {"hw_residual", cert.hw_residual},
          {"energy", complex_json(cert.energy)},
          {"iterations", cert.iterations},
          {"singular", cert.singular}};
}

Json ed_json(Spin spin, int length, const std::vector<SectorSpectrum>& sectors) {
  Json ed = Json::array();
  std::vector<double> pooled;
  for (const SectorSpectrum& s : sectors) {
    ed.push_back({{"m", s.m}, {"eigenvalues", s.eigenvalues}});
    pooled.insert(pooled.end(), s.eigenvalues.begin(), s.eigenvalues.end());
  }
  std::sort(pooled.begin(), pooled.end());
  return {{"two_s", spin.two_s()}, {"L", length}, {"ed", std::move(ed)}, {"eigenvalues", pooled}};
}

Json spectrum_report_json(const SpectrumReport& report) {
  Json out = ed_json(report.spin, report.length, report.ed);
  out.erase("eigenvalues");
  out["m_max"] = report.m_max;
  Json bethe = Json::array();
  for (const BetheMultiplet& b : report.bethe) {
    bethe.push_back({{"m", b.m},
                     {"energy", complex_json(b.energy)},
                     {"multiplicity", b.multiplicity},
                     {"verified_multiplicity", b.verified_multiplicity},
                     {"matched", b.matched},
                     {"eigenspace_overlap", b.eigenspace_overlap},
                     {"singular", b.certificate.singular},
                     {"lambda", complex_list(b.certificate.roots.values)}});
  }
  Json matches = Json::array();
  for (const LevelMatch& m : report.matches) {
    matches.push_back({{"hw_m", m.hw_m},
                       {"sector", m.sector},
                       {"bethe_energy", m.bethe_energy},
                       {"ed_energy", m.ed_energy},
                       {"gap", m.gap}});
  }
  Json unmatched = Json::array();
  for (const UnmatchedLevel& u : report.unmatched) unmatched.push_back({{"m", u.m}, {"energy", u.energy}});
  out["bethe"] = std::move(bethe);
  out["matches"] = std::move(matches);
  out["unmatched"] = std::move(unmatched);
  out["total_levels"] = report.total_levels;
  out["matched_levels"] = report.matched_levels();
  out["matched_fraction"] = report.matched_fraction();
  return out;
}

Json check_results_json(const std::vector<CheckResult>& results) {
  Json checks = Json::array();
  bool all = true;
  for (const CheckResult& r : results) {
    all = all && r.passed;
    checks.push_back({{"name", r.name},
                      {"passed", r.passed},
                      {"observed", r.observed},
                      {"threshold", r.threshold},
                      {"cases", r.cases},
                      {"detail", r.detail}});
  }
  return {{"passed", all}, {"checks", std::move(checks)}};
}

}  // namespace bethe::io
