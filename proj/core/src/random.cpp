// SPDX-License-Identifier: Apache-2.0
#include "cogbf/random.hpp"

#include <cmath>
#include <numbers>

namespace cogbf {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // Two rounds keep (seed, stream) pairs well separated even for small
  // consecutive values, the common case for Monte-Carlo trial indices.
  return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632BE59BD9B4E019ull));
}

}  // namespace

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(mix_seed(seed, stream)) {}

double RandomStream::uniform_open() {
  return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
}

double RandomStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
  if (has_cached_gaussian_) {
    has_cached_gaussian_ = false;
    return cached_gaussian_;
  }
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  cached_gaussian_ = radius * std::sin(angle);
  has_cached_gaussian_ = true;
  return radius * std::cos(angle);
}

std::complex<double> RandomStream::complex_gaussian() {
  // One Box-Muller pair per entry; scale so total variance is 1.
  const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
  const double angle = 2.0 * std::numbers::pi * uniform();
  constexpr double kHalfPower = 0.70710678118654752440;  // sqrt(1/2)
  return {kHalfPower * radius * std::cos(angle),
          kHalfPower * radius * std::sin(angle)};
}

Eigen::MatrixXcd RandomStream::complex_gaussian_matrix(Eigen::Index rows,
                                                       Eigen::Index cols) {
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = complex_gaussian();
  return out;
}

Eigen::MatrixXd RandomStream::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = gaussian();
  return out;
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) {
  // Rejection-free is not needed here; modulo bias is irrelevant for the
  // bounds used (tiny relative to 2^64).
  return engine_() % bound;
}

}  // namespace cogbf
