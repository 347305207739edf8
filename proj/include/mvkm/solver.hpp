#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mvkm/estimators.hpp"
#include "mvkm/rng.hpp"
#include "mvkm/types.hpp"

namespace mvkm {

// One alternating-minimization engine drives all four algorithms; they differ
// only in the per-view dissimilarity and in the kernel weights of the center
// update. Each iteration applies memberships -> centers -> weights; every
// sub-step minimizes the objective with the other blocks fixed (the kernel
// center update is one majorize-minimize step with weights frozen at the
// previous centers), so the objective trace is non-increasing for a fixed
// beta. Ties always resolve to the lowest index.

enum class InitMode {
  RandomDistinctPoints,  // c distinct sample rows, copied in every view
  SingleViewKMeans,      // k-means on the column-concatenation of all views
  PlusPlusSeeding,       // greedy D^2-weighted seeding, no refinement
};

template <typename Scalar = double>
struct SolverConfigT {
  Algorithm algorithm = Algorithm::Mvkmc;
  Index cluster_count = 2;
  Scalar alpha = Scalar(2);  // view-weight exponent, > 1
  StabilizerPolicyT<Scalar> stabilizer{};
  BetaPolicyT<Scalar> beta_policy{};
  Scalar epsilon = Scalar(1e-6);
  int max_iter = 100;
  InitMode init = InitMode::SingleViewKMeans;
  std::uint64_t seed = 0;
  bool reseed_empty_clusters = false;
  std::optional<CenterSet<Scalar>> initial_centers;  // overrides init when set
};

using SolverConfig = SolverConfigT<double>;

template <typename Scalar>
struct FitResultT {
  MembershipMatrix memberships;
  VectorX<Scalar> weights;
  CenterSet<Scalar> centers;
  std::vector<Scalar> objective_trace;  // one value per completed iteration
  int iterations = 0;
  bool converged = false;
  std::vector<std::uint8_t> empty_clusters;  // flags from the final pass
  bool zero_cost_view_weights = false;       // final weights came from the
                                             // zero-cost split rule
  VectorX<Scalar> beta;                      // resolved coefficients, if any
  Scalar stabilizer = Scalar(1);             // effective p
};

using FitResult = FitResultT<double>;

/// Dissimilarity between one sample-view vector and one center-view vector:
/// the squared Euclidean distance for kmeans/mvkmc, 1 - exp(-beta*d^2) for
/// mvkm-ed, and 1 - exp(-p*beta*d^2) for gkmvkm (p folded into the exponent).
template <typename Scalar>
Scalar kernel_dissimilarity(Algorithm algorithm, const Eigen::Ref<const VectorX<Scalar>>& x,
                            const Eigen::Ref<const VectorX<Scalar>>& a, Scalar beta_h,
                            Scalar p = Scalar(1)) {
  if (x.size() != a.size())
    throw std::invalid_argument("kernel_dissimilarity: vector lengths differ");
  if (!x.allFinite() || !a.allFinite())
    throw std::invalid_argument("kernel_dissimilarity: non-finite input");
  const Scalar d2 = (x - a).squaredNorm();
  switch (algorithm) {
    case Algorithm::KMeans:
    case Algorithm::Mvkmc:
      return d2;
    case Algorithm::MvkmEd:
      return Scalar(1) - clamped_exp(-beta_h * d2);
    case Algorithm::Gkmvkm:
      return Scalar(1) - clamped_exp(-p * beta_h * d2);
  }
  return d2;
}

namespace detail {

inline bool is_kernelized(Algorithm a) {
  return a == Algorithm::MvkmEd || a == Algorithm::Gkmvkm;
}

/// Effective exponent multiplier: p for gkmvkm, 1 otherwise.
template <typename Scalar>
Scalar exponent_multiplier(const SolverConfigT<Scalar>& cfg) {
  return cfg.algorithm == Algorithm::Gkmvkm ? cfg.stabilizer.value : Scalar(1);
}

/// n x c matrix of squared Euclidean distances between rows of X and rows
/// of A, floored at zero against cancellation noise.
template <typename Scalar>
MatrixX<Scalar> pairwise_sqdist(const MatrixX<Scalar>& x, const MatrixX<Scalar>& a) {
  MatrixX<Scalar> d = Scalar(-2) * x * a.transpose();
  d.colwise() += x.rowwise().squaredNorm();
  d.rowwise() += a.rowwise().squaredNorm().transpose();
  return d.cwiseMax(Scalar(0));
}

template <typename Scalar>
VectorX<Scalar> view_weight_powers(const VectorX<Scalar>& weights, Scalar alpha) {
  VectorX<Scalar> powers(weights.size());
  for (Index h = 0; h < weights.size(); ++h)
    powers[h] = std::pow(weights[h], alpha);
  return powers;
}

}  // namespace detail

/// Assigns every sample to the cluster minimizing its weighted dissimilarity
/// sum over views. For the kernelized algorithms the comparison runs on the
/// summed kernel affinities (same argmin; the 1-exp form would round to 1.0
/// for remote points and lose their ordering).
template <typename Scalar>
MembershipMatrix update_memberships(const MultiViewDatasetT<Scalar>& ds,
                                    const CenterSet<Scalar>& centers,
                                    const VectorX<Scalar>& weights, const VectorX<Scalar>& beta,
                                    const SolverConfigT<Scalar>& cfg) {
  const Index n = ds.sample_count();
  const Index s = ds.view_count();
  const Index c = centers.front().rows();
  const bool kernel = detail::is_kernelized(cfg.algorithm);
  if (kernel && beta.size() != s)
    throw std::invalid_argument("update_memberships: need one kernel coefficient per view");
  const Scalar p = detail::exponent_multiplier(cfg);
  const VectorX<Scalar> powers = detail::view_weight_powers(weights, cfg.alpha);

  MatrixX<Scalar> score = MatrixX<Scalar>::Zero(n, c);
  for (Index h = 0; h < s; ++h) {
    MatrixX<Scalar> d2 = detail::pairwise_sqdist(ds.view(h), centers[static_cast<std::size_t>(h)]);
    if (kernel) {
      score.noalias() +=
          powers[h] * (-p * beta[h] * d2).cwiseMax(exp_floor<Scalar>).array().exp().matrix();
    } else {
      score.noalias() += powers[h] * d2;
    }
  }

  MembershipMatrix memb;
  memb.cluster_count = c;
  memb.assign.resize(n);
  for (Index i = 0; i < n; ++i) {
    Index best = 0;
    Scalar best_score = score(i, 0);
    for (Index k = 1; k < c; ++k) {
      const Scalar v = score(i, k);
      if (kernel ? (v > best_score) : (v < best_score)) {
        best = k;
        best_score = v;
      }
    }
    memb.assign[i] = static_cast<int>(best);
  }
  return memb;
}

/// Weighted means per cluster and view. Kernel weights are frozen at the
/// previous centers (mvkm-ed: exp(-beta*d^2), gkmvkm: exp(-p*beta*d^2),
/// mvkmc/kmeans: 1). Clusters with no effective weight keep their previous
/// center; their flag is set in `empty_flags` when provided. The view-weight
/// factor cancels between numerator and denominator.
template <typename Scalar>
CenterSet<Scalar> update_centers(const MultiViewDatasetT<Scalar>& ds,
                                 const MembershipMatrix& memberships,
                                 const CenterSet<Scalar>& centers_prev,
                                 const VectorX<Scalar>& /*weights*/, const VectorX<Scalar>& beta,
                                 const SolverConfigT<Scalar>& cfg,
                                 std::vector<std::uint8_t>* empty_flags = nullptr) {
  const Index n = ds.sample_count();
  const Index s = ds.view_count();
  const Index c = memberships.cluster_count;
  const bool kernel = detail::is_kernelized(cfg.algorithm);
  const Scalar p = detail::exponent_multiplier(cfg);

  std::vector<Index> sizes(static_cast<std::size_t>(c), 0);
  for (Index i = 0; i < n; ++i) ++sizes[static_cast<std::size_t>(memberships.assign[i])];
  if (empty_flags) {
    empty_flags->assign(static_cast<std::size_t>(c), 0);
    for (Index k = 0; k < c; ++k)
      if (sizes[static_cast<std::size_t>(k)] == 0) (*empty_flags)[static_cast<std::size_t>(k)] = 1;
  }

  CenterSet<Scalar> centers(static_cast<std::size_t>(s));
  for (Index h = 0; h < s; ++h) {
    const auto& x = ds.view(h);
    const auto& prev = centers_prev[static_cast<std::size_t>(h)];
    MatrixX<Scalar> num = MatrixX<Scalar>::Zero(c, x.cols());
    VectorX<Scalar> den = VectorX<Scalar>::Zero(c);
    for (Index i = 0; i < n; ++i) {
      const Index k = memberships.assign[i];
      Scalar w = Scalar(1);
      if (kernel) {
        const Scalar d2 = (x.row(i) - prev.row(k)).squaredNorm();
        w = clamped_exp(-p * beta[h] * d2);
      }
      num.row(k) += w * x.row(i);
      den[k] += w;
    }
    MatrixX<Scalar> out = prev;
    for (Index k = 0; k < c; ++k)
      if (den[k] > Scalar(0)) out.row(k) = num.row(k) / den[k];
    centers[static_cast<std::size_t>(h)] = std::move(out);
  }
  return centers;
}

namespace detail {

/// Per-view cost E_h: the summed dissimilarity of each sample to its
/// assigned center.
template <typename Scalar>
VectorX<Scalar> per_view_costs(const MultiViewDatasetT<Scalar>& ds,
                               const MembershipMatrix& memberships,
                               const CenterSet<Scalar>& centers, const VectorX<Scalar>& beta,
                               const SolverConfigT<Scalar>& cfg) {
  const Index n = ds.sample_count();
  const Index s = ds.view_count();
  const bool kernel = is_kernelized(cfg.algorithm);
  const Scalar p = exponent_multiplier(cfg);
  VectorX<Scalar> costs = VectorX<Scalar>::Zero(s);
  for (Index h = 0; h < s; ++h) {
    const auto& x = ds.view(h);
    const auto& a = centers[static_cast<std::size_t>(h)];
    Scalar sum = Scalar(0);
    for (Index i = 0; i < n; ++i) {
      const Scalar d2 = (x.row(i) - a.row(memberships.assign[i])).squaredNorm();
      sum += kernel ? Scalar(1) - clamped_exp(-p * beta[h] * d2) : d2;
    }
    costs[h] = sum;
  }
  return costs;
}

}  // namespace detail

/// Simplex minimizer of sum_h w_h^alpha * E_h: w_h proportional to
/// E_h^(-1/(alpha-1)), computed in log space. Views with exactly zero cost
/// absorb all the weight, split uniformly; `zero_cost_flag` reports that.
template <typename Scalar>
VectorX<Scalar> update_weights(const MultiViewDatasetT<Scalar>& ds,
                               const MembershipMatrix& memberships,
                               const CenterSet<Scalar>& centers, const VectorX<Scalar>& beta,
                               const SolverConfigT<Scalar>& cfg, bool* zero_cost_flag = nullptr) {
  const VectorX<Scalar> costs = detail::per_view_costs(ds, memberships, centers, beta, cfg);
  const Index s = costs.size();
  if (zero_cost_flag) *zero_cost_flag = false;

  Index zero_count = 0;
  for (Index h = 0; h < s; ++h)
    if (costs[h] <= Scalar(0)) ++zero_count;
  if (zero_count > 0) {
    if (zero_cost_flag) *zero_cost_flag = true;
    VectorX<Scalar> weights = VectorX<Scalar>::Zero(s);
    for (Index h = 0; h < s; ++h)
      if (costs[h] <= Scalar(0)) weights[h] = Scalar(1) / static_cast<Scalar>(zero_count);
    return weights;
  }

  VectorX<Scalar> logw(s);
  for (Index h = 0; h < s; ++h)
    logw[h] = -std::log(costs[h]) / (cfg.alpha - Scalar(1));
  const Scalar top = logw.maxCoeff();
  VectorX<Scalar> weights = (logw.array() - top).exp().matrix();
  weights /= weights.sum();
  return weights;
}

/// The active algorithm's objective: sum_h w_h^alpha sum_i D(x_i^h, a_{k(i)}^h).
template <typename Scalar>
Scalar objective(const MultiViewDatasetT<Scalar>& ds, const MembershipMatrix& memberships,
                 const VectorX<Scalar>& weights, const CenterSet<Scalar>& centers,
                 const VectorX<Scalar>& beta, const SolverConfigT<Scalar>& cfg) {
  const VectorX<Scalar> costs = detail::per_view_costs(ds, memberships, centers, beta, cfg);
  const VectorX<Scalar> powers = detail::view_weight_powers(weights, cfg.alpha);
  return powers.dot(costs);
}

namespace detail {

/// Greedy D^2-weighted seeding: each new center is the best of a few
/// D^2-sampled candidates, judged by the resulting potential.
template <typename Scalar>
MatrixX<Scalar> plus_plus_centers(const MatrixX<Scalar>& x, Index c, Rng& rng) {
  const Index n = x.rows();
  const int trials = 2 + static_cast<int>(std::log(static_cast<double>(c)));
  MatrixX<Scalar> centers(c, x.cols());
  centers.row(0) = x.row(static_cast<Index>(bounded(rng, static_cast<std::uint64_t>(n))));
  VectorX<Scalar> closest = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (Index k = 1; k < c; ++k) {
    const Scalar total = closest.sum();
    if (!(total > Scalar(0))) {
      centers.row(k) = x.row(static_cast<Index>(bounded(rng, static_cast<std::uint64_t>(n))));
      continue;
    }
    Index best_row = 0;
    Scalar best_potential = std::numeric_limits<Scalar>::max();
    VectorX<Scalar> best_closest;
    for (int t = 0; t < trials; ++t) {
      const Scalar u = static_cast<Scalar>(uniform_unit(rng)) * total;
      Index row = n - 1;
      Scalar acc = Scalar(0);
      for (Index i = 0; i < n; ++i) {
        acc += closest[i];
        if (u < acc) {
          row = i;
          break;
        }
      }
      VectorX<Scalar> cand =
          closest.cwiseMin((x.rowwise() - x.row(row)).rowwise().squaredNorm());
      const Scalar potential = cand.sum();
      if (potential < best_potential) {
        best_potential = potential;
        best_row = row;
        best_closest = std::move(cand);
      }
    }
    centers.row(k) = x.row(best_row);
    closest = std::move(best_closest);
  }
  return centers;
}

template <typename Scalar>
CenterSet<Scalar> slice_centers(const MatrixX<Scalar>& concatenated,
                                const MultiViewDatasetT<Scalar>& ds) {
  CenterSet<Scalar> centers;
  Index col = 0;
  for (Index h = 0; h < ds.view_count(); ++h) {
    centers.push_back(concatenated.middleCols(col, ds.dim(h)));
    col += ds.dim(h);
  }
  return centers;
}

template <typename Scalar>
void validate_config(const SolverConfigT<Scalar>& cfg, const MultiViewDatasetT<Scalar>& ds) {
  if (!(cfg.alpha > Scalar(1)))
    throw std::invalid_argument("solver config: alpha must be > 1");
  if (!(cfg.epsilon > Scalar(0)))
    throw std::invalid_argument("solver config: epsilon must be > 0");
  if (cfg.max_iter < 1) throw std::invalid_argument("solver config: max_iter must be >= 1");
  if (cfg.cluster_count < 1 || cfg.cluster_count > ds.sample_count())
    throw std::invalid_argument("solver config: cluster count must lie in [1, n]");
  if (cfg.algorithm == Algorithm::Gkmvkm &&
      cfg.stabilizer.kind == StabilizerPolicyT<Scalar>::Kind::UserFixed &&
      !(cfg.stabilizer.value >= Scalar(1)))
    throw std::invalid_argument("solver config: stabilizer p must be >= 1");
}

template <typename Scalar>
FitResultT<Scalar> fit_engine(const MultiViewDatasetT<Scalar>& ds, SolverConfigT<Scalar> cfg,
                              Rng& rng);

template <typename Scalar>
CenterSet<Scalar> make_initial_centers(const MultiViewDatasetT<Scalar>& ds,
                                       const SolverConfigT<Scalar>& cfg, Rng& rng) {
  if (cfg.initial_centers) {
    const auto& given = *cfg.initial_centers;
    if (static_cast<Index>(given.size()) != ds.view_count())
      throw std::invalid_argument("initial centers: view count mismatch");
    for (Index h = 0; h < ds.view_count(); ++h)
      if (given[static_cast<std::size_t>(h)].rows() != cfg.cluster_count ||
          given[static_cast<std::size_t>(h)].cols() != ds.dim(h))
        throw std::invalid_argument("initial centers: shape mismatch");
    return given;
  }
  switch (cfg.init) {
    case InitMode::RandomDistinctPoints: {
      const auto rows = sample_distinct(rng, ds.sample_count(), cfg.cluster_count);
      CenterSet<Scalar> centers;
      for (Index h = 0; h < ds.view_count(); ++h) {
        MatrixX<Scalar> a(cfg.cluster_count, ds.dim(h));
        for (Index k = 0; k < cfg.cluster_count; ++k)
          a.row(k) = ds.view(h).row(static_cast<Index>(rows[static_cast<std::size_t>(k)]));
        centers.push_back(std::move(a));
      }
      return centers;
    }
    case InitMode::PlusPlusSeeding: {
      const MatrixX<Scalar> concat = concatenate_views(ds);
      return slice_centers(plus_plus_centers(concat, cfg.cluster_count, rng), ds);
    }
    case InitMode::SingleViewKMeans: {
      MultiViewDatasetT<Scalar> flat;
      flat.views = {concatenate_views(ds)};
      SolverConfigT<Scalar> inner;
      inner.algorithm = Algorithm::KMeans;
      inner.cluster_count = cfg.cluster_count;
      inner.alpha = cfg.alpha;
      inner.epsilon = cfg.epsilon;
      inner.max_iter = cfg.max_iter;
      inner.init = InitMode::PlusPlusSeeding;
      const auto warm = fit_engine(flat, inner, rng);
      return slice_centers(warm.centers.front(), ds);
    }
  }
  throw std::invalid_argument("unknown init mode");
}

template <typename Scalar>
FitResultT<Scalar> fit_engine(const MultiViewDatasetT<Scalar>& ds, SolverConfigT<Scalar> cfg,
                              Rng& rng) {
  const Index s = ds.view_count();
  const Index c = cfg.cluster_count;

  CenterSet<Scalar> centers = make_initial_centers(ds, cfg, rng);
  VectorX<Scalar> weights = uniform_view_weights<Scalar>(s);
  VectorX<Scalar> beta = resolve_beta(cfg.beta_policy, cfg.algorithm, ds, c, centers);
  const BetaRefresh refresh = beta_refresh(cfg.beta_policy, cfg.algorithm);

  if (cfg.algorithm == Algorithm::Gkmvkm &&
      cfg.stabilizer.kind == StabilizerPolicyT<Scalar>::Kind::MountainEstimated) {
    // Trial partition from the initial state, using the pre-stabilizer
    // kernel (p = 1).
    SolverConfigT<Scalar> trial_cfg = cfg;
    trial_cfg.stabilizer = {StabilizerPolicyT<Scalar>::Kind::UserFixed, Scalar(1)};
    const MembershipMatrix trial =
        update_memberships(ds, centers, weights, beta, trial_cfg);
    cfg.stabilizer = {StabilizerPolicyT<Scalar>::Kind::UserFixed,
                      estimate_p_mountain(ds, trial, centers, beta)};
  }

  FitResultT<Scalar> res;
  res.empty_clusters.assign(static_cast<std::size_t>(c), 0);
  res.stabilizer = detail::exponent_multiplier(cfg);

  Scalar prev_objective = Scalar(0);
  bool reseeded_since_convergence = false;
  for (int t = 1; t <= cfg.max_iter; ++t) {
    res.memberships = update_memberships(ds, centers, weights, beta, cfg);
    if (refresh == BetaRefresh::PerIteration)
      beta = resolve_beta(cfg.beta_policy, cfg.algorithm, ds, c, centers);
    centers = update_centers(ds, res.memberships, centers, weights, beta, cfg,
                             &res.empty_clusters);
    weights = update_weights(ds, res.memberships, centers, beta, cfg,
                             &res.zero_cost_view_weights);
    const Scalar J = objective(ds, res.memberships, weights, centers, beta, cfg);
    if (!std::isfinite(J))
      throw NumericalError("fit: non-finite objective at iteration " + std::to_string(t));
    res.objective_trace.push_back(J);
    res.iterations = t;

    const bool settled =
        t >= 2 && std::abs(J - prev_objective) /
                          std::max(Scalar(1), std::abs(prev_objective)) < cfg.epsilon;
    prev_objective = J;
    if (!settled) continue;

    bool any_empty = false;
    for (auto f : res.empty_clusters) any_empty = any_empty || f != 0;
    if (cfg.reseed_empty_clusters && any_empty && !reseeded_since_convergence &&
        t < cfg.max_iter) {
      // Move each empty center onto the sample with the largest weighted
      // dissimilarity to its assigned center; distinct samples per cluster.
      reseeded_since_convergence = true;
      const VectorX<Scalar> powers = detail::view_weight_powers(weights, cfg.alpha);
      const Scalar p = detail::exponent_multiplier(cfg);
      VectorX<Scalar> cost = VectorX<Scalar>::Zero(ds.sample_count());
      for (Index h = 0; h < s; ++h) {
        const auto& x = ds.view(h);
        const auto& a = centers[static_cast<std::size_t>(h)];
        for (Index i = 0; i < ds.sample_count(); ++i) {
          const Scalar d2 = (x.row(i) - a.row(res.memberships.assign[i])).squaredNorm();
          const Scalar d = detail::is_kernelized(cfg.algorithm)
                               ? Scalar(1) - clamped_exp(-p * beta[h] * d2)
                               : d2;
          cost[i] += powers[h] * d;
        }
      }
      for (Index k = 0; k < c; ++k) {
        if (!res.empty_clusters[static_cast<std::size_t>(k)]) continue;
        Index pick = 0;
        for (Index i = 1; i < ds.sample_count(); ++i)
          if (cost[i] > cost[pick]) pick = i;
        cost[pick] = std::numeric_limits<Scalar>::lowest();
        for (Index h = 0; h < s; ++h)
          centers[static_cast<std::size_t>(h)].row(k) = ds.view(h).row(pick);
      }
      continue;
    }
    res.converged = true;
    break;
  }

  res.weights = weights;
  res.centers = std::move(centers);
  res.beta = std::move(beta);
  return res;
}

}  // namespace detail

/// Runs the configured algorithm to convergence. `kmeans` operates on the
/// column-concatenation of all views; its result is mapped back to per-view
/// center blocks and uniform view weights.
template <typename Scalar>
FitResultT<Scalar> fit(const MultiViewDatasetT<Scalar>& ds, SolverConfigT<Scalar> cfg) {
  require_valid(ds);
  detail::validate_config(cfg, ds);
  Rng rng(cfg.seed);

  if (cfg.algorithm == Algorithm::KMeans && ds.view_count() > 1) {
    MultiViewDatasetT<Scalar> flat;
    flat.views = {concatenate_views(ds)};
    flat.name = ds.name;
    SolverConfigT<Scalar> inner = cfg;
    if (inner.init == InitMode::SingleViewKMeans) inner.init = InitMode::PlusPlusSeeding;
    if (cfg.initial_centers) {
      MatrixX<Scalar> cat(cfg.cluster_count, flat.dim(0));
      Index col = 0;
      for (Index h = 0; h < ds.view_count(); ++h) {
        cat.middleCols(col, ds.dim(h)) = (*cfg.initial_centers)[static_cast<std::size_t>(h)];
        col += ds.dim(h);
      }
      inner.initial_centers = CenterSet<Scalar>{std::move(cat)};
    }
    FitResultT<Scalar> res = detail::fit_engine(flat, inner, rng);
    res.centers = detail::slice_centers(res.centers.front(), ds);
    res.weights = uniform_view_weights<Scalar>(ds.view_count());
    return res;
  }
  if (cfg.algorithm == Algorithm::KMeans && cfg.init == InitMode::SingleViewKMeans)
    cfg.init = InitMode::PlusPlusSeeding;
  return detail::fit_engine(ds, cfg, rng);
}

/// Lloyd refinement of greedy D^2-weighted seeding on a single matrix. Used
/// standalone and as the warm start on the concatenation of all views.
template <typename Scalar>
FitResultT<Scalar> fit_single_view_kmeans(const MatrixX<Scalar>& x, Index cluster_count,
                                          Scalar epsilon, int max_iter, std::uint64_t seed,
                                          std::optional<MatrixX<Scalar>> initial_centers = {}) {
  MultiViewDatasetT<Scalar> ds;
  ds.views = {x};
  SolverConfigT<Scalar> cfg;
  cfg.algorithm = Algorithm::KMeans;
  cfg.cluster_count = cluster_count;
  cfg.epsilon = epsilon;
  cfg.max_iter = max_iter;
  cfg.init = InitMode::PlusPlusSeeding;
  cfg.seed = seed;
  if (initial_centers) cfg.initial_centers = CenterSet<Scalar>{std::move(*initial_centers)};
  return fit(ds, std::move(cfg));
}

}  // namespace mvkm
