// SPDX-License-Identifier: Apache-2.0
#include "cogbf/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <vector>

#include "cogbf/errors.hpp"
#include "cogbf/linalg.hpp"
#include "cogbf/nfb.hpp"
#include "cogbf/random.hpp"

namespace cogbf {

Eigen::VectorXd receive_snr(const Eigen::MatrixXcd& transmit,
                            const Eigen::MatrixXcd& st_to_sr,
                            const Eigen::MatrixXcd& noise_cov,
                            Eigen::MatrixXcd* receive_vectors) {
  const Eigen::Index streams = transmit.cols();
  const Eigen::Index sr = st_to_sr.rows();
  if (transmit.rows() != st_to_sr.cols() || noise_cov.rows() != sr ||
      noise_cov.cols() != sr)
    throw ConfigError("receive_snr: dimension mismatch");
  if (streams > sr)
    throw ConfigError("receive_snr: more streams than receive antennas");

  const Eigen::MatrixXcd received = st_to_sr * transmit;  // sr x streams
  std::vector<double> snr(static_cast<std::size_t>(streams));
  Eigen::MatrixXcd vectors(streams, sr);
  for (Eigen::Index i = 0; i < streams; ++i) {
    Eigen::MatrixXcd interference = noise_cov;
    for (Eigen::Index k = 0; k < streams; ++k) {
      if (k == i) continue;
      interference += received.col(k) * received.col(k).adjoint();
    }
    const Eigen::MatrixXcd whitener = psd_power(interference, -0.5);
    const Eigen::MatrixXcd quotient = symmetrized(
        whitener * received.col(i) * received.col(i).adjoint() * whitener);
    const HermitianEvd evd = hermitian_evd(quotient);
    snr[static_cast<std::size_t>(i)] = evd.eigenvalues[0];
    vectors.row(i) = (evd.eigenvectors.col(0).adjoint() * whitener);
  }

  std::vector<std::size_t> order(snr.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return snr[a] > snr[b]; });
  Eigen::VectorXd sorted(streams);
  Eigen::MatrixXcd sorted_vectors(streams, sr);
  for (Eigen::Index i = 0; i < streams; ++i) {
    sorted[i] = snr[order[static_cast<std::size_t>(i)]];
    sorted_vectors.row(i) =
        vectors.row(static_cast<Eigen::Index>(order[static_cast<std::size_t>(i)]));
  }
  if (receive_vectors != nullptr) *receive_vectors = sorted_vectors;
  return sorted;
}

namespace {

// Largest mu2 keeping I + mu1*A - mu2*E positive semidefinite: the PSD
// boundary for the SNR multiplier at a fixed interference multiplier.
double boundary_snr_multiplier(const Eigen::MatrixXcd& interference_gram,
                               const Eigen::MatrixXcd& effective_gram,
                               double mu1) {
  const Eigen::Index dim = effective_gram.rows();
  const Eigen::MatrixXcd shifted = symmetrized(
      Eigen::MatrixXcd::Identity(dim, dim) + mu1 * interference_gram);
  const Eigen::MatrixXcd whitener = psd_power(shifted, -0.5);
  const HermitianEvd evd =
      hermitian_evd(whitener * effective_gram * whitener);
  return 1.0 / evd.eigenvalues[0];
}

}  // namespace

KktReport sdp_dual_single_stream(const DerivedModel& model, double snr_target,
                                 double interference_cap) {
  const SnrMatrix snr({snr_target});
  const BeamformingSolution primal = solve_nfb(model, snr, interference_cap);

  // Signal-domain interference Gram, recovered from the whitened one.
  const Eigen::MatrixXcd sqrt_gram = psd_power(model.effective_evd, 0.5);
  const Eigen::MatrixXcd interference_gram =
      symmetrized(sqrt_gram * model.cross_gram * sqrt_gram);
  const Eigen::MatrixXcd& effective_gram = model.effective_gram;

  const auto dual_objective = [&](double mu1) {
    return snr_target *
               boundary_snr_multiplier(interference_gram, effective_gram, mu1) -
           mu1 * interference_cap;
  };

  // Concave in mu1: expand until the value drops, then golden-section.
  double left = 0.0;
  double right = 1.0;
  double value_left = dual_objective(left);
  double value_right = dual_objective(right);
  if (value_right > value_left) {
    double previous = left;
    while (value_right > value_left && right < 1e14) {
      previous = left;
      left = right;
      value_left = value_right;
      right *= 2.0;
      value_right = dual_objective(right);
    }
    left = previous;
  } else {
    right = 1.0;
  }

  constexpr double kGolden = 0.61803398874989484820;
  double a = left, b = right;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = dual_objective(x1);
  double f2 = dual_objective(x2);
  for (int iteration = 0; iteration < 200 && (b - a) > 1e-12 * (1.0 + b);
       ++iteration) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = dual_objective(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = dual_objective(x1);
    }
  }

  KktReport report;
  report.mu1 = 0.5 * (a + b);
  if (dual_objective(0.0) >= dual_objective(report.mu1)) report.mu1 = 0.0;
  report.mu2 =
      boundary_snr_multiplier(interference_gram, effective_gram, report.mu1);
  report.dual_value =
      snr_target * report.mu2 - report.mu1 * interference_cap;
  report.primal_value = primal.power;

  const Eigen::VectorXcd beam = primal.transmit.col(0);
  const double achieved_interference =
      (beam.adjoint() * interference_gram * beam)(0).real();
  const double achieved_snr =
      (beam.adjoint() * effective_gram * beam)(0).real();
  report.slack_interference = interference_cap - achieved_interference;
  report.slack_snr = achieved_snr - snr_target;

  const Eigen::Index dim = effective_gram.rows();
  const Eigen::MatrixXcd certificate = symmetrized(
      Eigen::MatrixXcd::Identity(dim, dim) + report.mu1 * interference_gram -
      report.mu2 * effective_gram);
  report.psd_min_eigenvalue =
      hermitian_evd(certificate).eigenvalues.minCoeff();
  report.complementary_residuals[0] =
      std::abs((beam.adjoint() * certificate * beam)(0).real());
  report.complementary_residuals[1] =
      std::abs(report.mu1 * (achieved_interference - interference_cap));
  report.complementary_residuals[2] =
      std::abs(report.mu2 * (achieved_snr - snr_target));

  const double gap = std::abs(report.dual_value - report.primal_value);
  if (gap > 1e-4 * std::max(1.0, report.primal_value))
    throw ToleranceError("sdp_dual_single_stream: duality gap " +
                         std::to_string(gap) + " exceeds certification tolerance");
  return report;
}

namespace {

struct ReducedOracle {
  Eigen::MatrixXcd ambient_basis;  // st x b: maps search coordinates out
  Eigen::MatrixXcd inv_gram;       // b x b, power cost in search coordinates
  Eigen::MatrixXcd cross;          // b x b, leakage in search coordinates
};

double oracle_power(const ReducedOracle& reduced, const SnrMatrix& snr,
                    const Eigen::MatrixXcd& point) {
  double power = 0.0;
  for (int i = 0; i < snr.streams(); ++i)
    power += snr[i] *
             (point.col(i).adjoint() * reduced.inv_gram * point.col(i))(0).real();
  return power;
}

double oracle_interference(const ReducedOracle& reduced, const SnrMatrix& snr,
                           const Eigen::MatrixXcd& point) {
  double interference = 0.0;
  for (int i = 0; i < snr.streams(); ++i)
    interference +=
        snr[i] * (point.col(i).adjoint() * reduced.cross * point.col(i))(0).real();
  return interference;
}

// Along the planar rotation x(t) = cos(t) x + sin(t) u with u
// orthonormal to x, any quadratic form is A + B cos(2t) + C sin(2t).
// Both the power objective and the leakage constraint take that shape,
// so each 1-D move is minimized in closed form: no derivatives, no
// eigensolvers, and the search can jump anywhere on the great circle,
// which is what lets it slide along a binding constraint boundary and
// hop between assignment basins.
struct Harmonic {
  double offset = 0.0;  // A
  double cosine = 0.0;  // B
  double sine = 0.0;    // C

  double at(double phase) const {
    return offset + cosine * std::cos(phase) + sine * std::sin(phase);
  }
  double amplitude() const { return std::hypot(cosine, sine); }
  double phase_of_max() const { return std::atan2(sine, cosine); }
};

// Coefficients of the full objective along the rotation, as a harmonic
// in 2t: total - w*q(x) is untouched, w*q(cos(t) x + sin(t) u) varies.
// Covers both move families: an external direction (only one column
// changes, w is its SNR weight) and a column pair (both change, which
// collapses to the same form with w the weight difference).
Harmonic rotation_harmonic(const Eigen::MatrixXcd& gram,
                           const Eigen::VectorXcd& x,
                           const Eigen::VectorXcd& u, double weight,
                           double total) {
  const double qx = (x.adjoint() * gram * x)(0).real();
  const double qu = (u.adjoint() * gram * u)(0).real();
  const double mixed = (x.adjoint() * gram * u)(0).real();
  Harmonic h;
  h.offset = total - weight * qx + weight * 0.5 * (qx + qu);
  h.cosine = weight * 0.5 * (qx - qu);
  h.sine = weight * mixed;
  return h;
}

double wrap_phase(double phase) {
  while (phase > std::numbers::pi) phase -= 2.0 * std::numbers::pi;
  while (phase < -std::numbers::pi) phase += 2.0 * std::numbers::pi;
  return phase;
}

// Minimizes `objective` over the circle subject to `constraint` <= cap.
// Phase 0 (the current point) is assumed feasible. Returns the phase of
// the best feasible candidate.
double best_feasible_phase(const Harmonic& objective,
                           const Harmonic& constraint, double cap) {
  std::vector<double> candidates;
  candidates.push_back(0.0);
  const double unconstrained =
      wrap_phase(objective.phase_of_max() + std::numbers::pi);
  if (constraint.at(unconstrained) <= cap) {
    candidates.push_back(unconstrained);
  } else if (constraint.amplitude() > 0.0) {
    // Feasible set is the complement of an arc around the constraint's
    // maximum; its two endpoints are the sliding-along-the-boundary
    // moves.
    const double ratio = (cap - constraint.offset) / constraint.amplitude();
    if (ratio >= -1.0 && ratio <= 1.0) {
      const double arc = std::acos(std::clamp(ratio, -1.0, 1.0));
      const double center = constraint.phase_of_max();
      for (double endpoint : {center + arc, center - arc}) {
        endpoint = wrap_phase(endpoint);
        if (constraint.at(endpoint) <= cap) candidates.push_back(endpoint);
      }
    }
  }
  double best_phase = 0.0;
  double best_value = objective.at(0.0);
  for (double candidate : candidates) {
    const double value = objective.at(candidate);
    if (value < best_value) {
      best_value = value;
      best_phase = candidate;
    }
  }
  return best_phase;
}

OracleResult oracle_search(const DerivedModel& model, const SnrMatrix& snr,
                           const ReducedOracle& reduced, double cap,
                           int restarts, std::uint64_t seed) {
  const Eigen::Index dim = reduced.cross.rows();
  const int streams = snr.streams();
  if (dim < streams)
    throw RankError("oracle: search subspace smaller than stream count");
  RandomStream rng(seed, 0);
  const double cap_slack = cap * (1.0 + 1e-9);
  const auto feasible = [&](const Eigen::MatrixXcd& point) {
    return oracle_interference(reduced, snr, point) <= cap_slack;
  };

  struct Sample {
    Eigen::MatrixXcd point;
    double power;
    double interference;
  };
  std::vector<Sample> samples;
  samples.reserve(static_cast<std::size_t>(restarts));
  for (int restart = 0; restart < restarts; ++restart) {
    Sample sample;
    sample.point = orthonormalize(rng.complex_gaussian_matrix(dim, streams));
    sample.power = oracle_power(reduced, snr, sample.point);
    sample.interference = oracle_interference(reduced, snr, sample.point);
    samples.push_back(std::move(sample));
  }

  std::vector<Sample> feasible_pool;
  for (const Sample& sample : samples)
    if (sample.interference <= cap_slack) feasible_pool.push_back(sample);

  // One sweep of exact line searches: every column against fresh
  // external directions, every column pair against a random relative
  // phase. Objective and (optional) constraint are weighted-trace forms,
  // so each move is solved in closed form. Returns the sweep's total
  // improvement; `point` and `value` are updated in place.
  const auto line_search_sweep = [&](Eigen::MatrixXcd& point, double& value,
                                     const Eigen::MatrixXcd& objective_gram,
                                     const Eigen::MatrixXcd* constraint_gram,
                                     double constraint_cap) {
    const double before = value;
    double constraint_value =
        constraint_gram == nullptr
            ? 0.0
            : [&] {
                double total = 0.0;
                for (int i = 0; i < streams; ++i)
                  total += snr[i] * (point.col(i).adjoint() * *constraint_gram *
                                     point.col(i))(0)
                                        .real();
                return total;
              }();
    const auto try_move = [&](int column, const Eigen::VectorXcd& direction,
                              double weight, int paired_column) {
      if (weight == 0.0) return;
      const Eigen::VectorXcd x = point.col(column);
      const Harmonic objective =
          rotation_harmonic(objective_gram, x, direction, weight, value);
      double phase;
      if (constraint_gram == nullptr) {
        if (objective.amplitude() <= 0.0) return;
        phase = wrap_phase(objective.phase_of_max() + std::numbers::pi);
      } else {
        const Harmonic constraint = rotation_harmonic(
            *constraint_gram, x, direction, weight, constraint_value);
        phase = best_feasible_phase(objective, constraint, constraint_cap);
      }
      if (objective.at(phase) >= value) return;
      const double c = std::cos(0.5 * phase);
      const double s = std::sin(0.5 * phase);
      const Eigen::VectorXcd new_column = c * x + s * direction;
      const Eigen::VectorXcd new_paired = -s * x + c * direction;

      // Commit on exact values only: boundary moves sit right at the cap,
      // where the harmonic prediction and the recomputed form disagree at
      // round-off scale, and an uncontrolled commit could park the point
      // a hair outside the feasible set.
      Eigen::VectorXcd old_paired;
      point.col(column) = new_column;
      if (paired_column >= 0) {
        old_paired = point.col(paired_column);
        point.col(paired_column) = new_paired;
      }
      double power_now = 0.0, constraint_now = 0.0;
      for (int i = 0; i < streams; ++i) {
        power_now += snr[i] * (point.col(i).adjoint() * objective_gram *
                               point.col(i))(0)
                                  .real();
        if (constraint_gram != nullptr)
          constraint_now += snr[i] * (point.col(i).adjoint() *
                                      *constraint_gram * point.col(i))(0)
                                         .real();
      }
      if (power_now >= value ||
          (constraint_gram != nullptr && constraint_now > constraint_cap)) {
        point.col(column) = x;  // revert
        if (paired_column >= 0) point.col(paired_column) = old_paired;
        return;
      }
      value = power_now;
      constraint_value = constraint_now;
    };

    const auto project_out = [&](Eigen::VectorXcd direction)
        -> std::optional<Eigen::VectorXcd> {
      direction -= point * (point.adjoint() * direction);
      const double norm = direction.norm();
      if (norm < 1e-12) return std::nullopt;
      return Eigen::VectorXcd(direction / norm);
    };

    for (int column = 0; column < streams; ++column) {
      if (dim > streams) {
        // Structured planes first: at a boundary optimum the stationarity
        // condition lives in the span of these images, so exact line
        // searches along them converge fast; random planes keep the
        // search globally honest. The third direction is the objective
        // image orthogonalized against the constraint image, i.e. the
        // slide-along-the-boundary plane.
        const Eigen::VectorXcd x = point.col(column);
        const auto objective_dir = project_out(objective_gram * x);
        if (objective_dir) try_move(column, *objective_dir, snr[column], -1);
        if (constraint_gram != nullptr) {
          const auto normal_dir = project_out(*constraint_gram * x);
          if (normal_dir) try_move(column, *normal_dir, snr[column], -1);
          if (objective_dir && normal_dir) {
            const Eigen::VectorXcd tangent =
                *objective_dir -
                *normal_dir * (normal_dir->adjoint() * *objective_dir)(0);
            if (auto direction = project_out(tangent))
              try_move(column, *direction, snr[column], -1);
          }
        }
        for (int attempt = 0; attempt < 2; ++attempt)
          if (auto direction =
                  project_out(rng.complex_gaussian_matrix(dim, 1)))
            try_move(column, *direction, snr[column], -1);
      }
      for (int other = column + 1; other < streams; ++other) {
        const double relative_phase = 2.0 * std::numbers::pi * rng.uniform();
        const Eigen::VectorXcd direction =
            std::polar(1.0, relative_phase) * point.col(other);
        try_move(column, direction, snr[column] - snr[other], other);
      }
    }
    point = orthonormalize(point);  // shed round-off drift each sweep
    return before - value;
  };

  const auto line_search_minimize =
      [&](Eigen::MatrixXcd& point, const Eigen::MatrixXcd& objective_gram,
          const Eigen::MatrixXcd* constraint_gram, double constraint_cap,
          int max_sweeps) {
        double value = 0.0;
        for (int i = 0; i < streams; ++i)
          value += snr[i] * (point.col(i).adjoint() * objective_gram *
                             point.col(i))(0)
                                .real();
        int weak_sweeps = 0;
        for (int sweep = 0; sweep < max_sweeps; ++sweep) {
          const double gain = line_search_sweep(
              point, value, objective_gram, constraint_gram, constraint_cap);
          // Random planes make individual sweeps noisy; stop only after
          // several consecutive sweeps with nothing to show.
          weak_sweeps =
              gain <= 1e-13 * std::max(1.0, std::abs(value)) ? weak_sweeps + 1 : 0;
          if (weak_sweeps >= 4) break;
        }
        return value;
      };

  // Binding caps are rarely satisfied by raw draws: drive the least
  // leaky samples down the leakage landscape before giving up.
  if (feasible_pool.empty()) {
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) {
                return a.interference < b.interference;
              });
    const std::size_t seek = std::min<std::size_t>(6, samples.size());
    for (std::size_t i = 0; i < seek; ++i) {
      Eigen::MatrixXcd point = samples[i].point;
      const double leak =
          line_search_minimize(point, reduced.cross, nullptr, 0.0, 120);
      if (leak <= cap_slack)
        feasible_pool.push_back(
            {point, oracle_power(reduced, snr, point), leak});
    }
  }
  if (feasible_pool.empty())
    throw OracleNoFeasiblePoint(
        "oracle: no sample reached the interference cap");

  // Project the lowest-power (usually infeasible) samples onto the
  // constraint boundary by bisecting the blend toward a feasible anchor:
  // the constrained optimum sits on that boundary near low-power
  // territory, so these crossings make strong starts.
  {
    std::sort(feasible_pool.begin(), feasible_pool.end(),
              [](const Sample& a, const Sample& b) { return a.power < b.power; });
    const Eigen::MatrixXcd anchor = feasible_pool.front().point;
    std::sort(samples.begin(), samples.end(),
              [](const Sample& a, const Sample& b) { return a.power < b.power; });
    const std::size_t project = std::min<std::size_t>(6, samples.size());
    for (std::size_t i = 0; i < project; ++i) {
      if (samples[i].interference <= cap_slack) continue;
      double at_anchor = 0.0, at_sample = 1.0;
      for (int bisect = 0; bisect < 40; ++bisect) {
        const double mid = 0.5 * (at_anchor + at_sample);
        const Eigen::MatrixXcd blend =
            orthonormalize((1.0 - mid) * anchor + mid * samples[i].point);
        if (feasible(blend))
          at_anchor = mid;
        else
          at_sample = mid;
      }
      const Eigen::MatrixXcd crossing = orthonormalize(
          (1.0 - at_anchor) * anchor + at_anchor * samples[i].point);
      if (!feasible(crossing)) continue;
      feasible_pool.push_back({crossing, oracle_power(reduced, snr, crossing),
                               oracle_interference(reduced, snr, crossing)});
    }
  }

  // The trace landscape has one basin per eigenvector assignment;
  // descending from several distinct starts avoids certifying a
  // suboptimal one, and the great-circle moves can slide along a binding
  // boundary or hop basins outright.
  std::sort(feasible_pool.begin(), feasible_pool.end(),
            [](const Sample& a, const Sample& b) { return a.power < b.power; });
  const std::size_t refine_count = std::min<std::size_t>(6, feasible_pool.size());
  Eigen::MatrixXcd best;
  double best_power = std::numeric_limits<double>::infinity();
  // Search strictly inside the reported slack so exact-commit points
  // always pass the final feasibility check.
  const double cap_search = cap * (1.0 + 0.5e-9);
  for (std::size_t i = 0; i < refine_count; ++i) {
    Eigen::MatrixXcd point = feasible_pool[i].point;
    const double power =
        line_search_minimize(point, reduced.inv_gram, &reduced.cross,
                             cap_search, 200);
    if (!feasible(point)) continue;
    if (power < best_power) {
      best_power = power;
      best = point;
    }
  }
  if (!std::isfinite(best_power))
    throw OracleNoFeasiblePoint(
        "oracle: refinement lost every feasible candidate");

  OracleResult result;
  result.power = best_power;
  result.stiefel = reduced.ambient_basis * best;
  return result;
}

ReducedOracle reduce_for_oracle(const DerivedModel& model) {
  ReducedOracle reduced;
  reduced.ambient_basis = model.range_basis();
  const int rank = model.effective_rank;
  reduced.inv_gram = Eigen::MatrixXcd::Zero(rank, rank);
  for (int i = 0; i < rank; ++i)
    reduced.inv_gram(i, i) = 1.0 / model.effective_evd.eigenvalues[i];
  reduced.cross = symmetrized(reduced.ambient_basis.adjoint() *
                              model.cross_gram * reduced.ambient_basis);
  return reduced;
}

}  // namespace

OracleResult oracle_min_power(const DerivedModel& model, const SnrMatrix& snr,
                              double interference_cap, int restarts,
                              std::uint64_t seed) {
  if (restarts < 1) throw ConfigError("oracle: restarts must be >= 1");
  if (snr.streams() > model.effective_rank)
    throw RankError("oracle: streams exceed effective channel rank");
  return oracle_search(model, snr, reduce_for_oracle(model), interference_cap,
                       restarts, seed);
}

OracleResult oracle_min_power_zero_forcing(const DerivedModel& model,
                                           const SnrMatrix& snr, int restarts,
                                           std::uint64_t seed) {
  if (restarts < 1) throw ConfigError("oracle: restarts must be >= 1");
  const ReducedOracle full = reduce_for_oracle(model);

  // Restrict the search to the kernel of the reduced cross Gram: the
  // directions that leak nothing onto the primary receiver.
  const HermitianEvd cross_evd = hermitian_evd(full.cross);
  const int leak_rank = numerical_rank(cross_evd);
  const Eigen::Index spare = cross_evd.dim() - leak_rank;
  if (spare < snr.streams())
    throw InsufficientNullSpace(
        "oracle: interference-free subspace smaller than stream count");
  const Eigen::MatrixXcd kernel = cross_evd.eigenvectors.rightCols(spare);

  ReducedOracle restricted;
  restricted.ambient_basis = full.ambient_basis * kernel;
  restricted.inv_gram =
      symmetrized(kernel.adjoint() * full.inv_gram * kernel);
  restricted.cross = symmetrized(kernel.adjoint() * full.cross * kernel);
  return oracle_search(model, snr, restricted,
                       std::numeric_limits<double>::infinity(), restarts, seed);
}

}  // namespace cogbf
