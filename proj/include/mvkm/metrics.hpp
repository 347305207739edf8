#pragma once

#include <cstdint>
#include <vector>

#include "mvkm/types.hpp"

namespace mvkm {

// External validation metrics between a predicted and a ground-truth hard
// partition. Labels are arbitrary integer codes; every metric is invariant
// to relabeling of either side. All pair statistics are exact 64-bit
// integers up to the final division.

/// Cross-tabulation of two labelings over the same samples.
struct ContingencyTable {
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic> counts;  // pred x truth
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> pred_sizes;
  Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1> truth_sizes;
  std::int64_t n = 0;

  static ContingencyTable from_labels(const Eigen::VectorXi& pred,
                                      const Eigen::VectorXi& truth);
};

/// Unordered sample pairs split by co-membership in prediction vs truth.
struct PairConfusion {
  std::int64_t together_both = 0;    // TP
  std::int64_t together_pred = 0;    // FP
  std::int64_t together_truth = 0;   // FN
  std::int64_t together_neither = 0; // TN
};

PairConfusion pair_confusion(const ContingencyTable& table);

enum class NmiNorm { Sqrt, Max };

/// Mutual information normalized by sqrt(H_pred * H_truth) (natural-log
/// entropies). Both partitions trivial: 1; exactly one trivial: 0.
/// NmiNorm::Max normalizes by max(H_pred, H_truth) instead.
double nmi(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth,
           NmiNorm norm = NmiNorm::Sqrt);

/// Chance-adjusted pair-agreement index in [-1, 1]. When the adjustment
/// denominator vanishes (both partitions all-singleton or both single
/// cluster): 1 if the partitions coincide, else 0.
double ari(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

/// Best one-to-one cluster matching accuracy, found by an O(c^3) assignment
/// solve on the contingency table (rectangular tables are zero-padded).
double acc(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

struct Prf {
  double recall = 0;
  double precision = 0;
  double f_score = 0;
};

/// Pair-counting recall/precision/F over unordered sample pairs. A side with
/// no co-clustered pairs contributes 1 for its ratio; F is 0 when P + R = 0.
Prf pairwise_prf(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

struct MetricReport {
  double nmi = 0;
  double ari = 0;
  double acc = 0;
  double recall = 0;
  double precision = 0;
  double f_score = 0;
};

/// All six scores from one contingency pass.
MetricReport score_partition(const Eigen::VectorXi& pred, const Eigen::VectorXi& truth);

namespace detail {

/// Minimum-cost assignment on a square cost matrix (shortest augmenting
/// paths with potentials). Returns the column matched to each row.
std::vector<Index> min_cost_assignment(const MatrixX<double>& cost);

}  // namespace detail

}  // namespace mvkm
