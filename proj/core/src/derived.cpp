// SPDX-License-Identifier: Apache-2.0
#include "cogbf/derived.hpp"

#include "cogbf/errors.hpp"

namespace cogbf {

DerivedModel build_derived(const ChannelSet& channels,
                           const ScenarioConfig& config) {
  const Eigen::Index st = config.st_antennas;
  const Eigen::Index sr = config.sr_antennas;
  const Eigen::Index pt = config.pt_antennas;
  const Eigen::Index pr = config.pr_antennas;
  if (channels.st_to_sr.rows() != sr || channels.st_to_sr.cols() != st ||
      channels.st_to_pr.rows() != pr || channels.st_to_pr.cols() != st ||
      channels.pt_to_sr.rows() != sr || channels.pt_to_sr.cols() != pt)
    throw ConfigError("build_derived: channel dimensions do not match scenario");

  DerivedModel model;
  model.noise_cov = symmetrized(
      config.primary_power * channels.pt_to_sr * channels.pt_to_sr.adjoint() +
      Eigen::MatrixXcd::Identity(sr, sr));

  // noise_cov >= I, so a plain Cholesky solve is safe.
  Eigen::LLT<Eigen::MatrixXcd> llt(model.noise_cov);
  if (llt.info() != Eigen::Success)
    throw NumericalFailure("build_derived: noise covariance not PD");
  model.effective_gram = symmetrized(channels.st_to_sr.adjoint() *
                                     llt.solve(channels.st_to_sr));

  model.effective_evd = hermitian_evd(model.effective_gram);
  model.effective_rank = numerical_rank(model.effective_evd);
  model.effective_inv_sqrt = psd_power(model.effective_evd, -0.5);
  model.effective_inv = psd_power(model.effective_evd, -1.0);

  model.cross_gram = symmetrized(model.effective_inv_sqrt *
                                 channels.st_to_pr.adjoint() *
                                 channels.st_to_pr * model.effective_inv_sqrt);
  model.cross_evd = hermitian_evd(model.cross_gram);
  return model;
}

}  // namespace cogbf
