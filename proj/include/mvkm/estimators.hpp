#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

#include "mvkm/types.hpp"

namespace mvkm {

// Kernel coefficient estimators. Each returns one beta per view; degenerate
// data that would disable the Gaussian kernel (beta <= 0) raises DataError.

enum class BetaKind {
  AlgorithmDefault,        // resolved per algorithm at fit time
  Fixed,                   // user-supplied per-view values
  MeanCenterScaled,        // scaled sum of per-feature means ("eq9")
  MeanAbsoluteDeviation,   // mean distance to the view mean ("eq10")
  CenterSpread,            // spread of root-mean distances to centers ("eq11")
  InverseVariance,         // n over the summed squared deviations ("invvar")
};

enum class BetaRefresh { Once, PerIteration };

template <typename Scalar>
struct BetaPolicyT {
  BetaKind kind = BetaKind::AlgorithmDefault;
  VectorX<Scalar> fixed_values;        // Fixed only, strictly positive
  int scale_count = 1;                 // MeanCenterScaled divisor t, >= 1
  std::optional<BetaRefresh> refresh;  // default: CenterSpread tracks the
                                       // moving centers every iteration, all
                                       // other kinds are computed once
};

using BetaPolicy = BetaPolicyT<double>;

template <typename Scalar>
struct StabilizerPolicyT {
  enum class Kind { UserFixed, MountainEstimated };
  Kind kind = Kind::UserFixed;
  Scalar value = Scalar(2);  // UserFixed only, >= 1
};

using StabilizerPolicy = StabilizerPolicyT<double>;

/// beta_h = (c / (t*n)) * sum_j mean(x_.j^h). Errors when the mean-sum of a
/// view is nonpositive (the estimator is unusable on such data).
template <typename Scalar>
VectorX<Scalar> beta_mean_center_scaled(const MultiViewDatasetT<Scalar>& ds,
                                        Index cluster_count, int scale_count) {
  if (cluster_count < 1) throw std::invalid_argument("beta_mean_center_scaled: cluster count must be >= 1");
  if (scale_count < 1) throw std::invalid_argument("beta_mean_center_scaled: scale count must be >= 1");
  const Index s = ds.view_count();
  const auto n = static_cast<Scalar>(ds.sample_count());
  VectorX<Scalar> beta(s);
  for (Index h = 0; h < s; ++h) {
    const Scalar mean_sum = ds.view(h).colwise().mean().sum();
    beta[h] = static_cast<Scalar>(cluster_count) / (static_cast<Scalar>(scale_count) * n) * mean_sum;
    if (!(beta[h] > Scalar(0)))
      throw DataError("beta_mean_center_scaled: nonpositive result for view " + std::to_string(h) +
                      " (estimator unsuitable for zero- or negative-mean data)");
  }
  return beta;
}

/// beta_h = mean_i ||x_i^h - mean(x^h)||. Zero only when all samples of the
/// view coincide, which disables the kernel and raises DataError.
template <typename Scalar>
VectorX<Scalar> beta_mean_absolute_deviation(const MultiViewDatasetT<Scalar>& ds) {
  const Index s = ds.view_count();
  VectorX<Scalar> beta(s);
  for (Index h = 0; h < s; ++h) {
    const auto& x = ds.view(h);
    const VectorX<Scalar> mean = x.colwise().mean().transpose();
    beta[h] = (x.rowwise() - mean.transpose()).rowwise().norm().mean();
    if (!(beta[h] > Scalar(0)))
      throw DataError("beta_mean_absolute_deviation: all samples of view " + std::to_string(h) +
                      " coincide, kernel coefficient would be zero");
  }
  return beta;
}

/// beta_h = max_k sqrt(mean_i ||x_i^h - a_k^h||) - min_k sqrt(...).
/// Requires at least two clusters; coincident centers give zero spread.
template <typename Scalar>
VectorX<Scalar> beta_center_spread(const MultiViewDatasetT<Scalar>& ds,
                                   const CenterSet<Scalar>& centers) {
  if (centers.empty() || centers.front().rows() < 2)
    throw std::invalid_argument("beta_center_spread: needs at least two cluster centers");
  const Index s = ds.view_count();
  const Index c = centers.front().rows();
  VectorX<Scalar> beta(s);
  for (Index h = 0; h < s; ++h) {
    const auto& x = ds.view(h);
    Scalar lo = std::numeric_limits<Scalar>::max();
    Scalar hi = std::numeric_limits<Scalar>::lowest();
    for (Index k = 0; k < c; ++k) {
      const Scalar mean_dist =
          (x.rowwise() - centers[static_cast<std::size_t>(h)].row(k)).rowwise().norm().mean();
      const Scalar root = std::sqrt(mean_dist);
      lo = std::min(lo, root);
      hi = std::max(hi, root);
    }
    beta[h] = hi - lo;
    if (!(beta[h] > Scalar(0)))
      throw DataError("beta_center_spread: zero spread for view " + std::to_string(h) +
                      " (coincident or symmetric centers)");
  }
  return beta;
}

/// beta_h = n / sum_i ||x_i^h - mean(x^h)||^2. Errors on constant views.
template <typename Scalar>
VectorX<Scalar> beta_inverse_variance(const MultiViewDatasetT<Scalar>& ds) {
  const Index s = ds.view_count();
  const auto n = static_cast<Scalar>(ds.sample_count());
  VectorX<Scalar> beta(s);
  for (Index h = 0; h < s; ++h) {
    const auto& x = ds.view(h);
    const VectorX<Scalar> mean = x.colwise().mean().transpose();
    const Scalar ssd = (x.rowwise() - mean.transpose()).squaredNorm();
    if (!(ssd > Scalar(0)))
      throw DataError("beta_inverse_variance: view " + std::to_string(h) +
                      " is constant, kernel coefficient undefined");
    beta[h] = n / ssd;
  }
  return beta;
}

/// Mountain-function estimate of the stabilizer exponent p, clamped to
/// [1, 10]. For each cluster k the score T_k accumulates, over views, the
/// kernel affinities exp(-beta_h * ||x_i - a_k||^2) of all samples plus one
/// term exp(-beta_h * ||view mean - cluster-k mean||^2); the estimate is
/// s / max_k T_k. The aggregation over views is one defensible reading of an
/// ambiguous procedure; treat the result as a heuristic starting point, not
/// a tuned value. An empty trial cluster contributes its view's global mean.
template <typename Scalar>
Scalar estimate_p_mountain(const MultiViewDatasetT<Scalar>& ds,
                           const MembershipMatrix& trial_partition,
                           const CenterSet<Scalar>& centers,
                           const VectorX<Scalar>& beta) {
  const Index n = ds.sample_count();
  const Index s = ds.view_count();
  const Index c = trial_partition.cluster_count;
  if (trial_partition.assign.size() != n)
    throw std::invalid_argument("estimate_p_mountain: partition size mismatch");
  if (static_cast<Index>(centers.size()) != s || beta.size() != s)
    throw std::invalid_argument("estimate_p_mountain: centers/beta shape mismatch");

  std::vector<Index> cluster_sizes(static_cast<std::size_t>(c), 0);
  for (Index i = 0; i < n; ++i) ++cluster_sizes[static_cast<std::size_t>(trial_partition.assign[i])];

  Scalar best = Scalar(0);
  for (Index k = 0; k < c; ++k) {
    Scalar score = Scalar(0);
    for (Index h = 0; h < s; ++h) {
      const auto& x = ds.view(h);
      const auto center = centers[static_cast<std::size_t>(h)].row(k);
      for (Index i = 0; i < n; ++i)
        score += clamped_exp(-beta[h] * (x.row(i) - center).squaredNorm());
      const VectorX<Scalar> view_mean = x.colwise().mean().transpose();
      VectorX<Scalar> cluster_mean = view_mean;
      if (cluster_sizes[static_cast<std::size_t>(k)] > 0) {
        cluster_mean.setZero();
        for (Index i = 0; i < n; ++i)
          if (trial_partition.assign[i] == static_cast<int>(k)) cluster_mean += x.row(i).transpose();
        cluster_mean /= static_cast<Scalar>(cluster_sizes[static_cast<std::size_t>(k)]);
      }
      score += clamped_exp(-beta[h] * (view_mean - cluster_mean).squaredNorm());
    }
    best = std::max(best, score);
  }

  const Scalar raw = static_cast<Scalar>(s) / best;
  if (!std::isfinite(raw)) return Scalar(10);
  return std::clamp(raw, Scalar(1), Scalar(10));
}

inline BetaKind effective_beta_kind(BetaKind kind, Algorithm algorithm) {
  if (kind != BetaKind::AlgorithmDefault) return kind;
  switch (algorithm) {
    case Algorithm::MvkmEd: return BetaKind::MeanAbsoluteDeviation;
    case Algorithm::Gkmvkm: return BetaKind::InverseVariance;
    default: return BetaKind::AlgorithmDefault;  // distance is not kernelized
  }
}

template <typename Scalar>
BetaRefresh beta_refresh(const BetaPolicyT<Scalar>& policy, Algorithm algorithm) {
  if (policy.refresh) return *policy.refresh;
  return effective_beta_kind(policy.kind, algorithm) == BetaKind::CenterSpread
             ? BetaRefresh::PerIteration
             : BetaRefresh::Once;
}

/// Per-view kernel coefficients for the configured policy. Returns an empty
/// vector for the plain squared-distance algorithms.
template <typename Scalar>
VectorX<Scalar> resolve_beta(const BetaPolicyT<Scalar>& policy, Algorithm algorithm,
                             const MultiViewDatasetT<Scalar>& ds, Index cluster_count,
                             const CenterSet<Scalar>& centers) {
  if (algorithm == Algorithm::KMeans || algorithm == Algorithm::Mvkmc) return {};
  switch (effective_beta_kind(policy.kind, algorithm)) {
    case BetaKind::Fixed: {
      if (policy.fixed_values.size() != ds.view_count())
        throw std::invalid_argument("beta policy: need one fixed value per view");
      for (Index h = 0; h < policy.fixed_values.size(); ++h)
        if (!(policy.fixed_values[h] > Scalar(0)))
          throw std::invalid_argument("beta policy: fixed values must be strictly positive");
      return policy.fixed_values;
    }
    case BetaKind::MeanCenterScaled:
      return beta_mean_center_scaled(ds, cluster_count, policy.scale_count);
    case BetaKind::MeanAbsoluteDeviation:
      return beta_mean_absolute_deviation(ds);
    case BetaKind::CenterSpread:
      return beta_center_spread(ds, centers);
    case BetaKind::InverseVariance:
      return beta_inverse_variance(ds);
    case BetaKind::AlgorithmDefault:
      break;
  }
  throw std::invalid_argument("beta policy: no estimator for this algorithm");
}

}  // namespace mvkm
