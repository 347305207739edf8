#include "mvkm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace mvkm {

namespace {

std::int64_t comb2(std::int64_t m) { return m * (m - 1) / 2; }

std::map<int, Index> dense_ids(const Eigen::VectorXi& labels) {
  std::map<int, Index> ids;  // ordered: deterministic row/column layout
  for (Index i = 0; i < labels.size(); ++i) ids.emplace(labels[i], 0);
  Index next = 0;
  for (auto& [label, id] : ids) id = next++;
  return ids;
}

double entropy(const Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>& sizes, std::int64_t n) {
  double h = 0;
  for (Index k = 0; k < sizes.size(); ++k) {
    if (sizes[k] == 0) continue;
    const double frac = static_cast<double>(sizes[k]) / static_cast<double>(n);
    h -= frac * std::log(frac);
  }
  return h;
}

}  // namespace

ContingencyTable ContingencyTable::from_labels(const Eigen::VectorXi& pred,
                                               const Eigen::VectorXi& truth) {
  if (pred.size() != truth.size())
    throw std::invalid_argument("contingency table: label vectors differ in length");
  if (pred.size() == 0)
    throw std::invalid_argument("contingency table: empty labelings");
  const auto pred_ids = dense_ids(pred);
  const auto truth_ids = dense_ids(truth);
  ContingencyTable table;
  table.n = pred.size();
  table.counts.setZero(static_cast<Index>(pred_ids.size()), static_cast<Index>(truth_ids.size()));
  for (Index i = 0; i < pred.size(); ++i)
    ++table.counts(pred_ids.at(pred[i]), truth_ids.at(truth[i]));
  table.pred_sizes = table.counts.rowwise().sum();
  table.truth_sizes = table.counts.colwise().sum().transpose();
  return table;
}

PairConfusion pair_confusion(const ContingencyTable& table) {
  PairConfusion pc;
  for (Index i = 0; i < table.counts.rows(); ++i)
    for (Index j = 0; j < table.counts.cols(); ++j)
      pc.together_both += comb2(table.counts(i, j));
  std::int64_t pred_pairs = 0, truth_pairs = 0;
  for (Index i = 0; i < table.pred_sizes.size(); ++i) pred_pairs += comb2(table.pred_sizes[i]);
  for (Index j = 0; j < table.truth_sizes.size(); ++j) truth_pairs += comb2(table.truth_sizes[j]);
  pc.together_pred = pred_pairs - pc.together_both;
  pc.together_truth = truth_pairs - pc.together_both;
  pc.together_neither = comb2(table.n) - pc.together_both - pc.together_pred - pc.together_truth;
  return pc;
}

double nmi(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth, NmiNorm norm) {
  const auto table = ContingencyTable::from_labels(pred, truth);
  const double h_pred = entropy(table.pred_sizes, table.n);
  const double h_truth = entropy(table.truth_sizes, table.n);
  if (h_pred == 0.0 && h_truth == 0.0) return 1.0;  // both single-cluster
  if (h_pred == 0.0 || h_truth == 0.0) return 0.0;

  const auto n = static_cast<double>(table.n);
  double mi = 0;
  for (Index i = 0; i < table.counts.rows(); ++i)
    for (Index j = 0; j < table.counts.cols(); ++j) {
      const std::int64_t nij = table.counts(i, j);
      if (nij == 0) continue;
      const double joint = static_cast<double>(nij) / n;
      mi += joint * std::log(static_cast<double>(nij) * n /
                             (static_cast<double>(table.pred_sizes[i]) *
                              static_cast<double>(table.truth_sizes[j])));
    }
  const double denom = norm == NmiNorm::Sqrt ? std::sqrt(h_pred * h_truth)
                                             : std::max(h_pred, h_truth);
  // Mathematically in [0, 1]; rounding can stray by an ulp on identical inputs.
  return std::clamp(mi / denom, 0.0, 1.0);
}

double ari(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  const auto table = ContingencyTable::from_labels(pred, truth);
  std::int64_t sum_ij = 0;
  for (Index i = 0; i < table.counts.rows(); ++i)
    for (Index j = 0; j < table.counts.cols(); ++j) sum_ij += comb2(table.counts(i, j));
  std::int64_t sum_pred = 0, sum_truth = 0;
  for (Index i = 0; i < table.pred_sizes.size(); ++i) sum_pred += comb2(table.pred_sizes[i]);
  for (Index j = 0; j < table.truth_sizes.size(); ++j) sum_truth += comb2(table.truth_sizes[j]);

  // Adjustment scaled through by the total pair count: every term is an
  // exact integer (in double) at any realistic n, leaving one division.
  const double total_pairs = static_cast<double>(comb2(table.n));
  const double product = static_cast<double>(sum_pred) * static_cast<double>(sum_truth);
  const double numerator = static_cast<double>(sum_ij) * total_pairs - product;
  const double denominator =
      0.5 * static_cast<double>(sum_pred + sum_truth) * total_pairs - product;
  if (denominator == 0.0) {
    // Both all-singleton or both single-cluster; 1 when the partitions match.
    bool same = true;
    for (Index i = 0; i < table.counts.rows() && same; ++i)
      same = (table.counts.row(i).array() != 0).count() == 1;
    for (Index j = 0; j < table.counts.cols() && same; ++j)
      same = (table.counts.col(j).array() != 0).count() == 1;
    return same ? 1.0 : 0.0;
  }
  return numerator / denominator;
}

namespace detail {

std::vector<Index> min_cost_assignment(const MatrixX<double>& cost) {
  const Index dim = cost.rows();
  if (cost.cols() != dim) throw std::invalid_argument("min_cost_assignment: matrix not square");
  // 1-indexed potentials; row 0 / column 0 are virtual.
  std::vector<double> u(static_cast<std::size_t>(dim) + 1, 0.0);
  std::vector<double> v(static_cast<std::size_t>(dim) + 1, 0.0);
  std::vector<Index> matched_row(static_cast<std::size_t>(dim) + 1, 0);
  std::vector<Index> way(static_cast<std::size_t>(dim) + 1, 0);
  for (Index i = 1; i <= dim; ++i) {
    matched_row[0] = i;
    Index j0 = 0;
    std::vector<double> min_slack(static_cast<std::size_t>(dim) + 1,
                                  std::numeric_limits<double>::max());
    std::vector<bool> used(static_cast<std::size_t>(dim) + 1, false);
    do {
      used[static_cast<std::size_t>(j0)] = true;
      const Index i0 = matched_row[static_cast<std::size_t>(j0)];
      double delta = std::numeric_limits<double>::max();
      Index j1 = 0;
      for (Index j = 1; j <= dim; ++j) {
        if (used[static_cast<std::size_t>(j)]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                           v[static_cast<std::size_t>(j)];
        if (cur < min_slack[static_cast<std::size_t>(j)]) {
          min_slack[static_cast<std::size_t>(j)] = cur;
          way[static_cast<std::size_t>(j)] = j0;
        }
        if (min_slack[static_cast<std::size_t>(j)] < delta) {
          delta = min_slack[static_cast<std::size_t>(j)];
          j1 = j;
        }
      }
      for (Index j = 0; j <= dim; ++j) {
        if (used[static_cast<std::size_t>(j)]) {
          u[static_cast<std::size_t>(matched_row[static_cast<std::size_t>(j)])] += delta;
          v[static_cast<std::size_t>(j)] -= delta;
        } else {
          min_slack[static_cast<std::size_t>(j)] -= delta;
        }
      }
      j0 = j1;
    } while (matched_row[static_cast<std::size_t>(j0)] != 0);
    do {
      const Index j1 = way[static_cast<std::size_t>(j0)];
      matched_row[static_cast<std::size_t>(j0)] = matched_row[static_cast<std::size_t>(j1)];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<Index> row_to_col(static_cast<std::size_t>(dim), -1);
  for (Index j = 1; j <= dim; ++j)
    row_to_col[static_cast<std::size_t>(matched_row[static_cast<std::size_t>(j)]) - 1] = j - 1;
  return row_to_col;
}

}  // namespace detail

double acc(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  const auto table = ContingencyTable::from_labels(pred, truth);
  const Index dim = std::max(table.counts.rows(), table.counts.cols());
  MatrixX<double> cost = MatrixX<double>::Zero(dim, dim);
  cost.topLeftCorner(table.counts.rows(), table.counts.cols()) =
      -table.counts.cast<double>();
  const auto assignment = detail::min_cost_assignment(cost);
  std::int64_t matched = 0;
  for (Index i = 0; i < table.counts.rows(); ++i) {
    const Index j = assignment[static_cast<std::size_t>(i)];
    if (j < table.counts.cols()) matched += table.counts(i, j);
  }
  return static_cast<double>(matched) / static_cast<double>(table.n);
}

Prf pairwise_prf(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  const auto pc = pair_confusion(ContingencyTable::from_labels(pred, truth));
  Prf out;
  const std::int64_t pred_pos = pc.together_both + pc.together_pred;
  const std::int64_t truth_pos = pc.together_both + pc.together_truth;
  out.precision = pred_pos == 0
                      ? 1.0
                      : static_cast<double>(pc.together_both) / static_cast<double>(pred_pos);
  out.recall = truth_pos == 0
                   ? 1.0
                   : static_cast<double>(pc.together_both) / static_cast<double>(truth_pos);
  out.f_score = out.precision + out.recall == 0.0
                    ? 0.0
                    : 2.0 * out.precision * out.recall / (out.precision + out.recall);
  return out;
}

MetricReport score_partition(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth) {
  MetricReport report;
  report.nmi = nmi(pred, truth);
  report.ari = ari(pred, truth);
  report.acc = acc(pred, truth);
  const Prf prf = pairwise_prf(pred, truth);
  report.recall = prf.recall;
  report.precision = prf.precision;
  report.f_score = prf.f_score;
  return report;
}

}  // namespace mvkm
