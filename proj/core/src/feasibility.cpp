// SPDX-License-Identifier: Apache-2.0
#include "cogbf/feasibility.hpp"

#include <string>

#include "cogbf/errors.hpp"

namespace cogbf {

namespace {

Eigen::VectorXd clamped_cross_eigenvalues(const DerivedModel& model) {
  const double tol = rank_tolerance(model.cross_evd);
  Eigen::VectorXd values = model.cross_evd.eigenvalues;
  for (Eigen::Index i = 0; i < values.size(); ++i)
    if (values[i] <= tol) values[i] = 0.0;
  return values;
}

}  // namespace

FeasibilityReport test_access(const DerivedModel& model, const SnrMatrix& snr,
                              double interference_cap) {
  const int streams = snr.streams();
  const int rank = model.effective_rank;
  if (streams > rank)
    throw RankError("feasibility: " + std::to_string(streams) +
                    " streams exceed effective channel rank " +
                    std::to_string(rank));

  FeasibilityReport report;
  report.cross_eigenvalues = clamped_cross_eigenvalues(model);

  // Largest target times smallest usable eigenvalue, second largest times
  // second smallest, and so on. Directions outside range(effective_gram)
  // carry no signal, so the pairing stops at index rank-1 rather than at
  // the bottom of the full spectrum (identical when the Gram is full rank).
  double xi_min = 0.0;
  for (int i = 0; i < streams; ++i)
    xi_min += snr[i] * report.cross_eigenvalues[rank - 1 - i];
  report.xi_min = xi_min;
  report.slack = interference_cap - xi_min;
  report.feasible = report.slack >= 0.0;
  return report;
}

double min_interference(const DerivedModel& model, const SnrMatrix& snr) {
  return test_access(model, snr, 0.0).xi_min;
}

double access_probability(const ScenarioConfig& config, int trials) {
  if (trials < 1) throw ConfigError("access_probability: trials must be >= 1");
  const SnrMatrix snr = SnrMatrix::from_config(config);
  int granted = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const ChannelSet channels =
        sample_channels(config, static_cast<std::uint64_t>(trial));
    const DerivedModel model = build_derived(channels, config);
    if (test_access(model, snr, config.interference_cap).feasible) ++granted;
  }
  return static_cast<double>(granted) / static_cast<double>(trials);
}

}  // namespace cogbf
