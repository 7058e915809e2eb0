#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

namespace rankmix {

struct MstEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
};

struct ClusteringResult {
  std::size_t k_hat = 0;
  std::vector<std::size_t> labels;      // in [0, k_hat), numbered by first appearance
  double threshold_used = 0.0;          // t2
  std::vector<double> mst_edge_weights; // ascending
};

/// Euclidean minimum spanning tree of the rows (dense Prim, O(N^2 d)).
/// Edges are returned in the order Prim adds them.
std::vector<MstEdge> minimum_spanning_tree(const Eigen::MatrixXd& rows);

/// Connected components of the graph joining rows i, j with ||r_i - r_j|| <= t2,
/// computed by cutting the MST above t2.
ClusteringResult single_linkage(const Eigen::MatrixXd& rows, double t2);
ClusteringResult single_linkage(std::span<const MstEdge> mst, std::size_t num_rows, double t2);

struct T2Options {
  // Minimum ratio between consecutive sorted MST weights that counts as a
  // cluster boundary; below it every row joins one cluster.
  double gap_ratio_guard = 1.5;
  // Cuts leaving a cluster smaller than this are skipped in favour of the next
  // largest gap; 0 means max(2, floor(sqrt(N) / 2)). Keeps the tail spacings
  // of a single diffuse cluster from splitting off a few outlying rows.
  std::size_t min_cluster_size = 0;
};

/// Effective minimum cluster size for N rows.
std::size_t min_cluster_size(std::size_t num_rows, const T2Options& options = {});

/// Midpoint of the largest relative gap between consecutive sorted MST
/// weights, among cuts whose clusters all reach the minimum size; max weight
/// (nudged up) when no such gap reaches the guard ratio.
/// Throws std::invalid_argument for fewer than two rows.
double select_t2(const Eigen::MatrixXd& rows, const T2Options& options = {});
double select_t2(std::span<const MstEdge> mst, const T2Options& options = {});
/// Weights-only variant without the cluster-size rule.
double select_t2_from_weights(std::span<const double> sorted_weights, const T2Options& options = {});

/// select_t2 followed by single_linkage, sharing one MST.
ClusteringResult single_linkage_auto(const Eigen::MatrixXd& rows, const T2Options& options = {});

}  // namespace rankmix
