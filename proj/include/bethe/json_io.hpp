#pragma once

#include <vector>

#include <json.hpp>

#include "bethe/bethe_core.hpp"
#include "bethe/bethe_solver.hpp"
#include "bethe/hamiltonian.hpp"
#include "bethe/property_suite.hpp"
#include "bethe/verification.hpp"

namespace bethe::io {

using Json = nlohmann::json;

/// [re, im]
Json complex_json(Complex z);
Json complex_list(const std::vector<Complex>& values);
Json matrix_json(const Eigen::MatrixXd& m);

Json beta_table_json(const BetaTable& table);
Json local_h_json(const LocalHamiltonian& h);
Json sector_json(const SectorBasis& basis);
Json state_json(const BetheState& state, double residual, double hw_residual);
Json certificate_json(const RootCertificate& cert);
/// ED side only, with the pooled spectrum under "eigenvalues".
Json ed_json(Spin spin, int length, const std::vector<SectorSpectrum>& sectors);
Json spectrum_report_json(const SpectrumReport& report);
Json check_results_json(const std::vector<CheckResult>& results);

}  // namespace bethe::io
