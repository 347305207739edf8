#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mvkm {

using Index = Eigen::Index;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Cluster centers, one c x d_h matrix per view.
template <typename Scalar>
using CenterSet = std::vector<MatrixX<Scalar>>;

/// Input data violates a contract (file missing, shape mismatch, value that
/// disables an estimator, ...). Maps to CLI exit code 2.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An iteration produced a non-finite objective. Maps to CLI exit code 3.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Algorithm { KMeans, Mvkmc, MvkmEd, Gkmvkm };

inline const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::KMeans: return "kmeans";
    case Algorithm::Mvkmc: return "mvkmc";
    case Algorithm::MvkmEd: return "mvkm-ed";
    case Algorithm::Gkmvkm: return "gkmvkm";
  }
  return "?";
}

/// Floor applied to exp() arguments so kernel weights stay strictly positive
/// (keeps weighted-mean denominators away from zero).
template <typename Scalar>
inline constexpr Scalar exp_floor = Scalar(-700);
template <>
inline constexpr float exp_floor<float> = -87.0f;

template <typename Scalar>
Scalar clamped_exp(Scalar arg) {
  return std::exp(arg < exp_floor<Scalar> ? exp_floor<Scalar> : arg);
}

/// n samples observed through s feature matrices ("views") of possibly
/// different widths. Row i of every view describes the same observation.
/// Immutable after construction; safe to share across concurrent fits.
template <typename Scalar>
struct MultiViewDatasetT {
  std::vector<MatrixX<Scalar>> views;
  std::optional<Eigen::VectorXi> labels;  // ground-truth codes, kept verbatim
  std::string name;

  Index sample_count() const { return views.empty() ? 0 : views.front().rows(); }
  Index view_count() const { return static_cast<Index>(views.size()); }
  Index dim(Index h) const { return views[static_cast<std::size_t>(h)].cols(); }
  const MatrixX<Scalar>& view(Index h) const { return views[static_cast<std::size_t>(h)]; }
};

using MultiViewDataset = MultiViewDatasetT<double>;

/// Hard assignment of each sample to exactly one of `cluster_count` clusters,
/// shared across views.
struct MembershipMatrix {
  Eigen::VectorXi assign;
  Index cluster_count = 0;

  Index sample_count() const { return assign.size(); }

  template <typename Scalar>
  MatrixX<Scalar> one_hot() const {
    MatrixX<Scalar> u = MatrixX<Scalar>::Zero(assign.size(), cluster_count);
    for (Index i = 0; i < assign.size(); ++i) u(i, assign[i]) = Scalar(1);
    return u;
  }
};

template <typename Scalar>
VectorX<Scalar> uniform_view_weights(Index view_count) {
  return VectorX<Scalar>::Constant(view_count, Scalar(1) / Scalar(view_count));
}

struct ValidationIssue {
  std::string what;
  Index view = -1;
  Index row = -1;
  Index col = -1;
};

struct ValidationReport {
  bool ok = false;
  Index n = 0;
  Index s = 0;
  std::vector<Index> dims;
  bool has_labels = false;
  std::vector<ValidationIssue> issues;
};

/// Pure check: reports shape, label presence, and every non-finite cell
/// (capped at 100 issues). Never mutates or throws.
template <typename Scalar>
ValidationReport validate(const MultiViewDatasetT<Scalar>& ds) {
  ValidationReport rep;
  rep.s = ds.view_count();
  rep.n = ds.sample_count();
  rep.has_labels = ds.labels.has_value();
  if (rep.s == 0) {
    rep.issues.push_back({"dataset has no views", -1, -1, -1});
    return rep;
  }
  constexpr std::size_t kMaxIssues = 100;
  for (Index h = 0; h < rep.s; ++h) {
    const auto& x = ds.view(h);
    rep.dims.push_back(x.cols());
    if (x.rows() != rep.n)
      rep.issues.push_back({"view row count differs from view 0", h, -1, -1});
    if (x.rows() == 0) rep.issues.push_back({"view is empty", h, -1, -1});
    if (x.cols() == 0) rep.issues.push_back({"view has no features", h, -1, -1});
    for (Index i = 0; i < x.rows() && rep.issues.size() < kMaxIssues; ++i)
      for (Index j = 0; j < x.cols(); ++j)
        if (!std::isfinite(static_cast<double>(x(i, j)))) {
          rep.issues.push_back({"non-finite value", h, i, j});
          if (rep.issues.size() >= kMaxIssues) break;
        }
  }
  if (ds.labels && ds.labels->size() != rep.n)
    rep.issues.push_back({"label count differs from sample count", -1, -1, -1});
  rep.ok = rep.issues.empty() && rep.n > 0;
  return rep;
}

template <typename Scalar>
void require_valid(const MultiViewDatasetT<Scalar>& ds) {
  const ValidationReport rep = validate(ds);
  if (rep.ok) return;
  std::string msg = "invalid dataset";
  if (!rep.issues.empty()) {
    const auto& is = rep.issues.front();
    msg += ": " + is.what;
    if (is.view >= 0) msg += " (view " + std::to_string(is.view);
    if (is.row >= 0) msg += ", row " + std::to_string(is.row) + ", col " + std::to_string(is.col);
    if (is.view >= 0) msg += ")";
  } else if (rep.n == 0) {
    msg += ": no samples";
  }
  throw DataError(msg);
}

/// Column-concatenation of all views, n x (d_1 + ... + d_s).
template <typename Scalar>
MatrixX<Scalar> concatenate_views(const MultiViewDatasetT<Scalar>& ds) {
  Index total = 0;
  for (Index h = 0; h < ds.view_count(); ++h) total += ds.dim(h);
  MatrixX<Scalar> out(ds.sample_count(), total);
  Index col = 0;
  for (Index h = 0; h < ds.view_count(); ++h) {
    out.middleCols(col, ds.dim(h)) = ds.view(h);
    col += ds.dim(h);
  }
  return out;
}

}  // namespace mvkm
