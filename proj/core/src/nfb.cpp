// SPDX-License-Identifier: Apache-2.0
#include "cogbf/nfb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cogbf/errors.hpp"
#include "cogbf/feasibility.hpp"

namespace cogbf {

namespace {

constexpr double kBracketCeiling = 1e12;

struct ReducedModel {
  Eigen::MatrixXcd basis;        // st x rank, orthonormal
  Eigen::VectorXd inv_gains;     // 1/mu_i, i.e. the reduced inverse Gram
  Eigen::MatrixXcd cross;        // reduced cross Gram, rank x rank
  Eigen::MatrixXcd cross_sqrt;   // its PSD square root
};

ReducedModel reduce(const DerivedModel& model) {
  ReducedModel reduced;
  reduced.basis = model.range_basis();
  const int rank = model.effective_rank;
  reduced.inv_gains.resize(rank);
  for (int i = 0; i < rank; ++i)
    reduced.inv_gains[i] = 1.0 / model.effective_evd.eigenvalues[i];
  reduced.cross = symmetrized(reduced.basis.adjoint() * model.cross_gram *
                              reduced.basis);
  reduced.cross_sqrt = psd_power(reduced.cross, 0.5);
  return reduced;
}

void require_streams_fit(const DerivedModel& model, const SnrMatrix& snr) {
  if (snr.streams() > model.effective_rank)
    throw RankError("nfb: " + std::to_string(snr.streams()) +
                    " streams exceed effective channel rank " +
                    std::to_string(model.effective_rank));
}

struct DualEvaluation {
  Eigen::MatrixXcd stiefel;
  Eigen::VectorXd eigenvalues;  // ascending, all rank entries
  double power = 0.0;
  double interference = 0.0;
};

DualEvaluation evaluate_dual_point(const DerivedModel& model,
                                   const ReducedModel& reduced,
                                   const SnrMatrix& snr, double multiplier) {
  Eigen::MatrixXcd weighted = multiplier * reduced.cross;
  weighted.diagonal() += reduced.inv_gains.cast<std::complex<double>>();
  const HermitianEvd evd = hermitian_evd(weighted);

  DualEvaluation eval;
  eval.eigenvalues = evd.eigenvalues.reverse();  // ascending
  const int streams = snr.streams();
  const Eigen::MatrixXcd small =
      evd.eigenvectors.rightCols(streams).rowwise().reverse();
  eval.stiefel = reduced.basis * small;
  for (int i = 0; i < streams; ++i) {
    const Eigen::VectorXcd column = small.col(i);
    double inv_quadratic = 0.0;
    for (Eigen::Index k = 0; k < column.size(); ++k)
      inv_quadratic += reduced.inv_gains[k] * std::norm(column[k]);
    eval.power += snr[i] * inv_quadratic;
    // Squared-norm form keeps the leakage nonnegative at round-off scale.
    eval.interference +=
        snr[i] * (reduced.cross_sqrt * column).squaredNorm();
  }
  return eval;
}

BeamformingSolution make_solution(const DerivedModel& model,
                                  const SnrMatrix& snr,
                                  const DualEvaluation& eval,
                                  double multiplier, bool stalled) {
  BeamformingSolution solution;
  solution.mode = BeamformingMode::kNonzeroForcing;
  solution.multiplier = multiplier;
  solution.multiplier_defined = true;
  solution.stalled = stalled;
  solution.stiefel = eval.stiefel;
  const Eigen::VectorXcd amplitudes =
      snr.sqrt_vector().cast<std::complex<double>>();
  solution.transmit =
      model.effective_inv_sqrt * eval.stiefel * amplitudes.asDiagonal();
  solution.power =
      (solution.transmit.adjoint() * solution.transmit).trace().real();
  solution.interference = eval.interference;
  solution.stream_snr =
      hermitian_evd(solution.transmit.adjoint() * model.effective_gram *
                    solution.transmit)
          .eigenvalues;
  return solution;
}

}  // namespace

DualEigenbasis dual_eigenbasis(const DerivedModel& model, const SnrMatrix& snr,
                               double multiplier) {
  require_streams_fit(model, snr);
  const DualEvaluation eval =
      evaluate_dual_point(model, reduce(model), snr, multiplier);
  return DualEigenbasis{eval.stiefel, eval.eigenvalues};
}

std::pair<double, double> power_and_interference_at(const DerivedModel& model,
                                                    const SnrMatrix& snr,
                                                    double multiplier) {
  require_streams_fit(model, snr);
  const DualEvaluation eval =
      evaluate_dual_point(model, reduce(model), snr, multiplier);
  return {eval.power, eval.interference};
}

double dual_value(const DerivedModel& model, const SnrMatrix& snr,
                  double multiplier, double interference_cap) {
  require_streams_fit(model, snr);
  const DualEvaluation eval =
      evaluate_dual_point(model, reduce(model), snr, multiplier);
  double value = -multiplier * interference_cap;
  for (int i = 0; i < snr.streams(); ++i)
    value += snr[i] * eval.eigenvalues[i];
  return value;
}

BeamformingSolution solve_nfb(const DerivedModel& model, const SnrMatrix& snr,
                              double interference_cap) {
  require_streams_fit(model, snr);
  const FeasibilityReport report =
      test_access(model, snr, interference_cap);
  if (!report.feasible)
    throw InfeasibleError(
        "nfb: interference cap " + std::to_string(interference_cap) +
            " below minimum achievable " + std::to_string(report.xi_min),
        report.xi_min);

  const ReducedModel reduced = reduce(model);
  DualEvaluation at_zero = evaluate_dual_point(model, reduced, snr, 0.0);
  if (at_zero.interference <= interference_cap)
    return make_solution(model, snr, at_zero, 0.0, false);

  // Bracket: interference is monotone non-increasing in the multiplier
  // and approaches the minimum achievable value, so a feasible upper end
  // exists whenever the cap passed the access test.
  double lo = 0.0;
  double hi = 1.0;
  DualEvaluation at_hi = evaluate_dual_point(model, reduced, snr, hi);
  while (at_hi.interference > interference_cap) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCeiling)
      throw ToleranceError(
          "nfb: no feasible multiplier below 1e12; cap is within numerical "
          "noise of the minimum achievable interference");
    at_hi = evaluate_dual_point(model, reduced, snr, hi);
  }

  const double interference_tol =
      std::max(1e-8, 1e-6 * interference_cap);
  const auto converged = [&](const DualEvaluation& eval, double multiplier) {
    const double gap = interference_cap - eval.interference;  // >= 0 here
    if (gap > interference_tol) return false;
    // Drive complementary slackness tight enough that the duality gap at
    // the returned point vanishes at 1e-8 relative scale.
    const double slackness = multiplier * gap;
    return slackness <= 1e-8 * std::max(1.0, eval.power) &&
           slackness <= 1e-7 * std::max(1.0, interference_cap);
  };

  bool stalled = false;
  for (int iteration = 0; iteration < 300; ++iteration) {
    if (converged(at_hi, hi)) break;
    if (hi - lo <= 1e-14 * hi) {
      stalled = !converged(at_hi, hi);
      break;
    }
    const double mid = 0.5 * (lo + hi);
    DualEvaluation at_mid = evaluate_dual_point(model, reduced, snr, mid);
    if (at_mid.interference > interference_cap) {
      lo = mid;
    } else {
      hi = mid;
      at_hi = std::move(at_mid);
    }
  }
  // Always return the feasible endpoint: interference <= cap holds by
  // construction, and it is the minimum feasible multiplier localized.
  return make_solution(model, snr, at_hi, hi, stalled);
}

double lower_bound_power(const DerivedModel& model, const SnrMatrix& snr) {
  require_streams_fit(model, snr);
  double power = 0.0;
  for (int i = 0; i < snr.streams(); ++i)
    power += snr[i] / model.effective_evd.eigenvalues[i];
  return power;
}

}  // namespace cogbf
