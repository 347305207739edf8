#pragma once

// Reference implementations used only by tests. Deliberately written as
// plain loops over first-principles definitions, independent of the library
// computation paths they check.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "mvkm/rng.hpp"
#include "mvkm/types.hpp"

namespace oracle {

using Eigen::VectorXi;
using mvkm::Index;

struct PairCounts {
  long long tp = 0;  // together in both
  long long fp = 0;  // together in pred only
  long long fn = 0;  // together in truth only
  long long tn = 0;  // together in neither
};

inline PairCounts pair_counts(const VectorXi& pred, const VectorXi& truth) {
  PairCounts pc;
  for (Index i = 0; i < pred.size(); ++i)
    for (Index j = i + 1; j < pred.size(); ++j) {
      const bool p = pred[i] == pred[j];
      const bool t = truth[i] == truth[j];
      if (p && t)
        ++pc.tp;
      else if (p)
        ++pc.fp;
      else if (t)
        ++pc.fn;
      else
        ++pc.tn;
    }
  return pc;
}

inline double ari_from_pairs(const VectorXi& pred, const VectorXi& truth) {
  const PairCounts pc = pair_counts(pred, truth);
  const long long sum_ij = pc.tp;
  const long long sum_pred = pc.tp + pc.fp;
  const long long sum_truth = pc.tp + pc.fn;
  const long long total = pc.tp + pc.fp + pc.fn + pc.tn;
  const double product = static_cast<double>(sum_pred) * static_cast<double>(sum_truth);
  const double numerator = static_cast<double>(sum_ij) * static_cast<double>(total) - product;
  const double denominator =
      0.5 * static_cast<double>(sum_pred + sum_truth) * static_cast<double>(total) - product;
  if (denominator == 0.0) return pc.fp == 0 && pc.fn == 0 ? 1.0 : 0.0;
  return numerator / denominator;
}

// recall, precision, f
inline std::array<double, 3> prf_from_pairs(const VectorXi& pred, const VectorXi& truth) {
  const PairCounts pc = pair_counts(pred, truth);
  const long long pred_pos = pc.tp + pc.fp;
  const long long truth_pos = pc.tp + pc.fn;
  const double precision =
      pred_pos == 0 ? 1.0 : static_cast<double>(pc.tp) / static_cast<double>(pred_pos);
  const double recall =
      truth_pos == 0 ? 1.0 : static_cast<double>(pc.tp) / static_cast<double>(truth_pos);
  const double f =
      precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
  return {recall, precision, f};
}

inline double entropy_of(const std::map<int, long long>& counts, long long n) {
  double h = 0;
  for (const auto& [label, count] : counts) {
    const double frac = static_cast<double>(count) / static_cast<double>(n);
    h -= frac * std::log(frac);
  }
  return h;
}

/// NMI through the identity MI = H(pred) + H(truth) - H(joint).
inline double nmi_entropy_identity(const VectorXi& pred, const VectorXi& truth) {
  const long long n = pred.size();
  std::map<int, long long> cp, ct;
  std::map<std::pair<int, int>, long long> joint;
  for (Index i = 0; i < pred.size(); ++i) {
    ++cp[pred[i]];
    ++ct[truth[i]];
    ++joint[{pred[i], truth[i]}];
  }
  const double hp = entropy_of(cp, n);
  const double ht = entropy_of(ct, n);
  if (hp == 0.0 && ht == 0.0) return 1.0;
  if (hp == 0.0 || ht == 0.0) return 0.0;
  double hj = 0;
  for (const auto& [key, count] : joint) {
    const double frac = static_cast<double>(count) / static_cast<double>(n);
    hj -= frac * std::log(frac);
  }
  return (hp + ht - hj) / std::sqrt(hp * ht);
}

/// Best one-to-one matching accuracy by enumerating all permutations of the
/// zero-padded square contingency table.
inline double acc_enumeration(const VectorXi& pred, const VectorXi& truth) {
  std::map<int, int> pid, tid;
  for (Index i = 0; i < pred.size(); ++i) {
    pid.emplace(pred[i], 0);
    tid.emplace(truth[i], 0);
  }
  int next = 0;
  for (auto& [l, id] : pid) id = next++;
  next = 0;
  for (auto& [l, id] : tid) id = next++;
  const int cp = static_cast<int>(pid.size());
  const int ct = static_cast<int>(tid.size());
  const int dim = std::max(cp, ct);
  std::vector<std::vector<long long>> counts(dim, std::vector<long long>(dim, 0));
  for (Index i = 0; i < pred.size(); ++i) ++counts[pid[pred[i]]][tid[truth[i]]];

  std::vector<int> perm(dim);
  std::iota(perm.begin(), perm.end(), 0);
  long long best = 0;
  do {
    long long matched = 0;
    for (int i = 0; i < dim; ++i) matched += counts[i][perm[i]];
    best = std::max(best, matched);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return static_cast<double>(best) / static_cast<double>(pred.size());
}

/// The per-pair dissimilarity, written straight from its definition.
inline double dissim(mvkm::Algorithm algo, const Eigen::RowVectorXd& x,
                     const Eigen::RowVectorXd& a, double beta, double p) {
  const double d2 = (x - a).squaredNorm();
  switch (algo) {
    case mvkm::Algorithm::KMeans:
    case mvkm::Algorithm::Mvkmc:
      return d2;
    case mvkm::Algorithm::MvkmEd:
      return 1.0 - std::exp(-beta * d2);
    case mvkm::Algorithm::Gkmvkm:
      return 1.0 - std::exp(-p * beta * d2);
  }
  return d2;
}

/// Weighted dissimilarity of sample i to cluster k, summed over views.
inline double sample_cost(const mvkm::MultiViewDataset& ds, Index i, Index k,
                          const mvkm::CenterSet<double>& centers, const Eigen::VectorXd& weights,
                          double alpha, const Eigen::VectorXd& beta, mvkm::Algorithm algo,
                          double p) {
  double cost = 0;
  for (Index h = 0; h < ds.view_count(); ++h) {
    const double b = beta.size() > 0 ? beta[h] : 0.0;
    cost += std::pow(weights[h], alpha) *
            dissim(algo, ds.view(h).row(i), centers[static_cast<std::size_t>(h)].row(k), b, p);
  }
  return cost;
}

/// The objective as the literal triple sum with one-hot memberships.
inline double objective_triple_sum(const mvkm::MultiViewDataset& ds,
                                   const mvkm::MembershipMatrix& memb,
                                   const Eigen::VectorXd& weights,
                                   const mvkm::CenterSet<double>& centers,
                                   const Eigen::VectorXd& beta, mvkm::Algorithm algo,
                                   double alpha, double p) {
  double j = 0;
  for (Index h = 0; h < ds.view_count(); ++h)
    for (Index i = 0; i < ds.sample_count(); ++i)
      for (Index k = 0; k < memb.cluster_count; ++k) {
        if (memb.assign[i] != static_cast<int>(k)) continue;
        const double b = beta.size() > 0 ? beta[h] : 0.0;
        j += std::pow(weights[h], alpha) *
             dissim(algo, ds.view(h).row(i), centers[static_cast<std::size_t>(h)].row(k), b, p);
      }
  return j;
}

inline double weight_objective(const Eigen::VectorXd& weights, const Eigen::VectorXd& costs,
                               double alpha) {
  double j = 0;
  for (Index h = 0; h < weights.size(); ++h) j += std::pow(weights[h], alpha) * costs[h];
  return j;
}

/// Dense grid search over the simplex (s = 2 or 3) at the given resolution.
inline double grid_min_weight_objective(const Eigen::VectorXd& costs, double alpha,
                                        int steps = 1000) {
  double best = std::numeric_limits<double>::max();
  const double h = 1.0 / steps;
  if (costs.size() == 2) {
    for (int i = 0; i <= steps; ++i) {
      Eigen::VectorXd v(2);
      v << i * h, 1.0 - i * h;
      best = std::min(best, weight_objective(v, costs, alpha));
    }
  } else if (costs.size() == 3) {
    for (int i = 0; i <= steps; ++i)
      for (int j = 0; j <= steps - i; ++j) {
        Eigen::VectorXd v(3);
        v << i * h, j * h, 1.0 - i * h - j * h;
        best = std::min(best, weight_objective(v, costs, alpha));
      }
  }
  return best;
}

/// Frozen-weight center objective for one view and cluster:
/// sum_i mu_ik * w_i * ||x_i - a||^2.
inline double frozen_center_objective(const Eigen::MatrixXd& x, const VectorXi& assign, Index k,
                                      const Eigen::VectorXd& frozen_weights,
                                      const Eigen::RowVectorXd& a) {
  double g = 0;
  for (Index i = 0; i < x.rows(); ++i)
    if (assign[i] == static_cast<int>(k)) g += frozen_weights[i] * (x.row(i) - a).squaredNorm();
  return g;
}

/// Central finite-difference gradient norm of the frozen-weight objective at a.
inline double fd_gradient_norm(const Eigen::MatrixXd& x, const VectorXi& assign, Index k,
                               const Eigen::VectorXd& frozen_weights, const Eigen::RowVectorXd& a,
                               double step = 1e-6) {
  double norm2 = 0;
  for (Index d = 0; d < a.size(); ++d) {
    Eigen::RowVectorXd hi = a, lo = a;
    hi[d] += step;
    lo[d] -= step;
    const double grad = (frozen_center_objective(x, assign, k, frozen_weights, hi) -
                         frozen_center_objective(x, assign, k, frozen_weights, lo)) /
                        (2 * step);
    norm2 += grad * grad;
  }
  return std::sqrt(norm2);
}

// ---- random instance helpers -------------------------------------------

/// Separated Gaussian blobs with shared labels across views.
inline mvkm::MultiViewDataset make_blobs(mvkm::Rng& rng, Index n, const std::vector<Index>& dims,
                                         Index k, double spread = 8.0, double noise = 0.8) {
  mvkm::MultiViewDataset ds;
  ds.name = "blobs";
  Eigen::VectorXi labels(n);
  for (Index i = 0; i < n; ++i) labels[i] = static_cast<int>(mvkm::bounded(rng, k));
  for (const Index d : dims) {
    Eigen::MatrixXd anchors(k, d);
    for (Index c = 0; c < k; ++c)
      for (Index j = 0; j < d; ++j)
        anchors(c, j) = (mvkm::uniform_unit(rng) - 0.5) * 2.0 * spread;
    Eigen::MatrixXd view(n, d);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < d; ++j) {
        const auto [z0, z1] = mvkm::gaussian_pair(rng);
        (void)z1;
        view(i, j) = anchors(labels[i], j) + noise * z0;
      }
    ds.views.push_back(std::move(view));
  }
  ds.labels = labels;
  return ds;
}

inline Eigen::VectorXd random_simplex(mvkm::Rng& rng, Index s) {
  Eigen::VectorXd v(s);
  for (Index h = 0; h < s; ++h) v[h] = mvkm::uniform_unit_pos(rng);
  return v / v.sum();
}

/// c distinct data rows as centers (per view).
inline mvkm::CenterSet<double> random_row_centers(mvkm::Rng& rng, const mvkm::MultiViewDataset& ds,
                                                  Index c) {
  const auto rows = mvkm::sample_distinct(rng, ds.sample_count(), c);
  mvkm::CenterSet<double> centers;
  for (Index h = 0; h < ds.view_count(); ++h) {
    Eigen::MatrixXd a(c, ds.dim(h));
    for (Index k = 0; k < c; ++k) a.row(k) = ds.view(h).row(static_cast<Index>(rows[static_cast<std::size_t>(k)]));
    centers.push_back(std::move(a));
  }
  return centers;
}

}  // namespace oracle
