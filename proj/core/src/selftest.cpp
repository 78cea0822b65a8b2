// SPDX-License-Identifier: Apache-2.0
#include "cogbf/selftest.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "cogbf/certificates.hpp"
#include "cogbf/channel.hpp"
#include "cogbf/derived.hpp"
#include "cogbf/feasibility.hpp"
#include "cogbf/linalg.hpp"
#include "cogbf/nfb.hpp"
#include "cogbf/random.hpp"
#include "cogbf/sweep.hpp"
#include "cogbf/zfb.hpp"

namespace cogbf {

namespace {

constexpr std::uint64_t kSelfTestSeed = 0xc09bfull;

ScenarioConfig default_scenario(int streams, double cap, double target,
                                std::uint64_t seed) {
  return ScenarioConfig(5, 5, 2, 2, streams, 1.0, cap,
                        std::vector<double>(static_cast<std::size_t>(streams),
                                            target),
                        seed);
}

// Weighted trace of an orthonormal section against a Hermitian form is
// bounded below by pairing largest weights with smallest eigenvalues;
// equality at the trailing-eigenvector construction.
bool check_trace_inequality(int rounds, std::string& detail) {
  RandomStream rng(kSelfTestSeed, 1);
  double worst_violation = 0.0;
  double worst_equality = 0.0;
  for (int round = 0; round < rounds; ++round) {
    const int outer = 2 + static_cast<int>(rng.next_below(5));  // v in [2,6]
    const int inner = 1 + static_cast<int>(rng.next_below(
                              static_cast<std::uint64_t>(outer)));
    Eigen::VectorXd weights(inner);
    for (int i = 0; i < inner; ++i) weights[i] = std::abs(rng.gaussian()) + 0.1;
    std::sort(weights.data(), weights.data() + inner,
              std::greater<double>());
    const Eigen::MatrixXcd form =
        symmetrized(rng.complex_gaussian_matrix(outer, outer));
    const HermitianEvd evd = hermitian_evd(form);

    const Eigen::MatrixXcd section =
        orthonormalize(rng.complex_gaussian_matrix(outer, inner));
    const double value =
        (weights.cast<std::complex<double>>().asDiagonal() *
         section.adjoint() * form * section)
            .trace()
            .real();
    double bound = 0.0;
    for (int i = 0; i < inner; ++i)
      bound += weights[i] * evd.eigenvalues[outer - 1 - i];
    worst_violation = std::max(worst_violation, bound - value);

    const Eigen::MatrixXcd trailing =
        evd.eigenvectors.rightCols(inner).rowwise().reverse();
    const double attained =
        (weights.cast<std::complex<double>>().asDiagonal() *
         trailing.adjoint() * form * trailing)
            .trace()
            .real();
    worst_equality = std::max(worst_equality, std::abs(attained - bound));
  }
  std::ostringstream stream;
  stream << "max bound violation " << worst_violation << ", max equality gap "
         << worst_equality;
  detail = stream.str();
  return worst_violation <= 1e-9 && worst_equality <= 1e-9;
}

bool check_zero_forcing(int rounds, std::string& detail) {
  double worst_leak = 0.0;
  double worst_snr = 0.0;
  for (int round = 0; round < rounds; ++round) {
    const int streams = 1 + round % 3;
    const ScenarioConfig scenario =
        default_scenario(streams, 0.0, 4.0, kSelfTestSeed + 11);
    const ChannelSet channels =
        sample_channels(scenario, static_cast<std::uint64_t>(round));
    const DerivedModel model = build_derived(channels, scenario);
    const SnrMatrix snr = SnrMatrix::from_config(scenario);
    const BeamformingSolution solution = solve_zfb(model, snr);

    const double leak = (channels.st_to_pr * solution.transmit).norm() /
                        (channels.st_to_pr.norm() * solution.transmit.norm());
    worst_leak = std::max(worst_leak, leak);
    for (int i = 0; i < streams; ++i)
      worst_snr = std::max(
          worst_snr, std::abs(solution.stream_snr[i] - snr[i]) / snr[i]);
  }
  std::ostringstream stream;
  stream << "max leakage ratio " << worst_leak << ", max SNR error "
         << worst_snr;
  detail = stream.str();
  return worst_leak <= 1e-10 && worst_snr <= 1e-8;
}

bool check_dual_monotonicity(int instances, int grid, std::string& detail) {
  double worst_power_drop = 0.0;
  double worst_interference_rise = 0.0;
  for (int instance = 0; instance < instances; ++instance) {
    const int streams = 1 + instance % 3;
    const ScenarioConfig scenario =
        default_scenario(streams, 1.0, 3.0, kSelfTestSeed + 23);
    const DerivedModel model = build_derived(
        sample_channels(scenario, static_cast<std::uint64_t>(instance)),
        scenario);
    const SnrMatrix snr = SnrMatrix::from_config(scenario);
    double previous_power = -1.0;
    double previous_interference = 0.0;
    for (int point = 0; point < grid; ++point) {
      const double multiplier =
          point == 0 ? 0.0
                     : std::pow(10.0, -2.0 + 5.0 * (point - 1) / (grid - 2));
      const auto [power, interference] =
          power_and_interference_at(model, snr, multiplier);
      if (point > 0) {
        worst_power_drop =
            std::max(worst_power_drop, previous_power - power);
        worst_interference_rise = std::max(
            worst_interference_rise, interference - previous_interference);
      }
      previous_power = power;
      previous_interference = interference;
    }
  }
  std::ostringstream stream;
  stream << "max power drop " << worst_power_drop
         << ", max interference rise " << worst_interference_rise;
  detail = stream.str();
  return worst_power_drop <= 1e-9 && worst_interference_rise <= 1e-9;
}

bool check_slackness(int rounds, std::string& detail) {
  double worst = 0.0;
  for (int round = 0; round < rounds; ++round) {
    const ScenarioConfig scenario =
        default_scenario(2, 0.4 + 0.2 * round, 5.0, kSelfTestSeed + 37);
    const DerivedModel model = build_derived(
        sample_channels(scenario, static_cast<std::uint64_t>(round)),
        scenario);
    const SnrMatrix snr = SnrMatrix::from_config(scenario);
    const BeamformingSolution solution =
        solve_nfb(model, snr, scenario.interference_cap);
    const double slackness =
        std::abs(solution.multiplier *
                 (solution.interference - scenario.interference_cap));
    worst = std::max(
        worst, slackness / std::max(1.0, scenario.interference_cap));
  }
  std::ostringstream stream;
  stream << "max relative slackness " << worst;
  detail = stream.str();
  return worst <= 1e-6;
}

bool check_receive_agreement(int rounds, std::string& detail) {
  double worst = 0.0;
  for (int round = 0; round < rounds; ++round) {
    const int streams = 1 + round % 2;
    const ScenarioConfig scenario =
        default_scenario(streams, 2.0, 6.0, kSelfTestSeed + 41);
    const ChannelSet channels =
        sample_channels(scenario, static_cast<std::uint64_t>(round));
    const DerivedModel model = build_derived(channels, scenario);
    const SnrMatrix snr = SnrMatrix::from_config(scenario);
    const BeamformingSolution solution =
        solve_nfb(model, snr, scenario.interference_cap);
    const Eigen::VectorXd achieved =
        receive_snr(solution.transmit, channels.st_to_sr, model.noise_cov);
    for (int i = 0; i < streams; ++i)
      worst =
          std::max(worst, std::abs(achieved[i] - snr[i]) / snr[i]);
  }
  std::ostringstream stream;
  stream << "max receive-side SNR error " << worst;
  detail = stream.str();
  return worst <= 1e-8;
}

bool check_sweep_determinism(std::string& detail) {
  SweepSpec spec{default_scenario(2, 1.0, 4.0, kSelfTestSeed + 53),
                 SweepAxis::kXi,
                 {0.5, 1.0, 2.0},
                 AxisUnit::kLinear,
                 16,
                 {SolverKind::kZfb, SolverKind::kNfb, SolverKind::kLowerBound},
                 {},
                 ""};
  const std::string serial = sweep_csv(run_sweep(spec, 1), spec.axis_unit);
  const std::string parallel = sweep_csv(run_sweep(spec, 4), spec.axis_unit);
  const std::string repeat = sweep_csv(run_sweep(spec, 2), spec.axis_unit);
  detail = serial == parallel && serial == repeat
               ? "byte-identical across thread counts"
               : "outputs differ across thread counts";
  return serial == parallel && serial == repeat;
}

bool check_oracle_sanity(std::string& detail) {
  // Identity channels: every Stiefel point costs the same power, so the
  // oracle must land on the exact optimum immediately.
  const int dim = 3;
  ScenarioConfig scenario(dim, dim, 1, dim, 1, 0.0, 5.0, {2.0},
                          kSelfTestSeed + 61);
  ChannelSet channels;
  channels.st_to_sr = Eigen::MatrixXcd::Identity(dim, dim);
  channels.st_to_pr = Eigen::MatrixXcd::Identity(dim, dim);
  channels.pt_to_sr = Eigen::MatrixXcd::Ones(dim, 1);
  const DerivedModel model = build_derived(channels, scenario);
  const OracleResult result =
      oracle_min_power(model, SnrMatrix({2.0}), 5.0, 8);
  std::ostringstream stream;
  stream << "isotropic power " << result.power << " (expected 2)";
  detail = stream.str();
  return std::abs(result.power - 2.0) <= 1e-6;
}

}  // namespace

std::vector<SelfTestResult> run_selftest(bool quick) {
  const int scale = quick ? 1 : 4;
  std::vector<SelfTestResult> results;
  const auto run = [&](const std::string& name,
                       const std::function<bool(std::string&)>& check) {
    SelfTestResult result;
    result.name = name;
    try {
      result.passed = check(result.detail);
    } catch (const std::exception& error) {
      result.passed = false;
      result.detail = std::string("threw: ") + error.what();
    }
    results.push_back(std::move(result));
  };

  run("trace-inequality", [&](std::string& d) {
    return check_trace_inequality(250 * scale, d);
  });
  run("zero-forcing-contract", [&](std::string& d) {
    return check_zero_forcing(12 * scale, d);
  });
  run("dual-monotonicity", [&](std::string& d) {
    return check_dual_monotonicity(5 * scale, 20, d);
  });
  run("complementary-slackness", [&](std::string& d) {
    return check_slackness(5 * scale, d);
  });
  run("receive-snr-agreement", [&](std::string& d) {
    return check_receive_agreement(5 * scale, d);
  });
  run("sweep-determinism", check_sweep_determinism);
  run("oracle-sanity", check_oracle_sanity);
  return results;
}

}  // namespace cogbf
