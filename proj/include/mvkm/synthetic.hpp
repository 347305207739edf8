#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvkm/rng.hpp"
#include "mvkm/types.hpp"

namespace mvkm {

/// Parameters of the bundled Gaussian-mixture benchmark generator: a shared
/// cluster assignment drawn from `mixing`, then per view an isotropic 2-D
/// Gaussian around that cluster's mean with covariance scale_k * I.
template <typename Scalar>
struct SyntheticSpecT {
  Index n = 10000;
  VectorX<Scalar> mixing;               // one proportion per cluster, sums to 1
  std::vector<MatrixX<Scalar>> means;   // per view: cluster_count x 2
  VectorX<Scalar> covariance_scales;    // per cluster, > 0
  std::uint64_t seed = 0;

  Index cluster_count() const { return mixing.size(); }
  Index view_count() const { return static_cast<Index>(means.size()); }

  /// Built-in three-view, four-cluster benchmark (n = 10000).
  static SyntheticSpecT benchmark_defaults() {
    SyntheticSpecT spec;
    spec.mixing = VectorX<Scalar>(4);
    spec.mixing << Scalar(0.3), Scalar(0.15), Scalar(0.15), Scalar(0.4);
    spec.covariance_scales = VectorX<Scalar>(4);
    spec.covariance_scales << Scalar(1), Scalar(3), Scalar(2), Scalar(0.5);
    MatrixX<Scalar> v1(4, 2), v2(4, 2), v3(4, 2);
    v1 << -10, -5, -9, 11, 0, 6, 4, 0;
    v2 << -8, -12, -6, -3, -2, 7, 2, 1;
    v3 << -5, -10, -8, -1, 0, 5, 5, -4;
    spec.means = {v1, v2, v3};
    return spec;
  }
};

using SyntheticSpec = SyntheticSpecT<double>;

template <typename Scalar>
void validate_spec(const SyntheticSpecT<Scalar>& spec) {
  if (spec.n < 1) throw std::invalid_argument("synthetic spec: n must be >= 1");
  const Index c = spec.cluster_count();
  if (c < 1) throw std::invalid_argument("synthetic spec: need at least one mixing proportion");
  double sum = 0;
  for (Index k = 0; k < c; ++k) {
    if (!(spec.mixing[k] >= Scalar(0)))
      throw std::invalid_argument("synthetic spec: mixing proportions must be nonnegative");
    sum += static_cast<double>(spec.mixing[k]);
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("synthetic spec: mixing proportions must sum to 1");
  if (spec.means.empty()) throw std::invalid_argument("synthetic spec: need at least one view");
  for (const auto& m : spec.means)
    if (m.rows() != c || m.cols() != 2)
      throw std::invalid_argument("synthetic spec: each view needs one 2-D mean per cluster");
  if (spec.covariance_scales.size() != c)
    throw std::invalid_argument("synthetic spec: need one covariance scale per cluster");
  for (Index k = 0; k < c; ++k)
    if (!(spec.covariance_scales[k] > Scalar(0)))
      throw std::invalid_argument("synthetic spec: covariance scales must be positive");
}

/// Pure function of the spec: identical spec (seed included) gives the
/// identical dataset. Draw order is fixed: per sample one cluster draw, then
/// one Box-Muller pair per view.
template <typename Scalar>
MultiViewDatasetT<Scalar> generate_synthetic(const SyntheticSpecT<Scalar>& spec) {
  validate_spec(spec);
  const Index n = spec.n;
  const Index s = spec.view_count();

  std::vector<double> cumulative(static_cast<std::size_t>(spec.cluster_count()));
  double acc = 0;
  for (Index k = 0; k < spec.cluster_count(); ++k) {
    acc += static_cast<double>(spec.mixing[k]);
    cumulative[static_cast<std::size_t>(k)] = acc;
  }

  MultiViewDatasetT<Scalar> ds;
  ds.name = "synthetic";
  ds.views.assign(static_cast<std::size_t>(s), MatrixX<Scalar>(n, 2));
  Eigen::VectorXi labels(n);

  Rng rng(spec.seed);
  for (Index i = 0; i < n; ++i) {
    const auto k = static_cast<Index>(draw_categorical(rng, cumulative));
    labels[i] = static_cast<int>(k);
    const double sigma = std::sqrt(static_cast<double>(spec.covariance_scales[k]));
    for (Index h = 0; h < s; ++h) {
      const auto [z0, z1] = gaussian_pair(rng);
      ds.views[static_cast<std::size_t>(h)](i, 0) =
          spec.means[static_cast<std::size_t>(h)](k, 0) + static_cast<Scalar>(sigma * z0);
      ds.views[static_cast<std::size_t>(h)](i, 1) =
          spec.means[static_cast<std::size_t>(h)](k, 1) + static_cast<Scalar>(sigma * z1);
    }
  }
  ds.labels = std::move(labels);
  return ds;
}

}  // namespace mvkm
