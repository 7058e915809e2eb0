#include <gtest/gtest.h>

#include <limits>

#include "oracles.hpp"
#include "rankmix/clustering.hpp"
#include "rankmix/pipeline.hpp"

namespace rankmix {
namespace {

Eigen::MatrixXd random_rows(std::size_t n, Eigen::Index dim, std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(0.0, scale);
  Eigen::MatrixXd rows(static_cast<Eigen::Index>(n), dim);
  for (auto& x : rows.reshaped()) x = u(rng);
  return rows;
}

// Longest MST edge within any true cluster: single linkage keeps every true
// cluster whole exactly when t2 is at least this.
double max_intra_mst(const Eigen::MatrixXd& rows, const std::vector<std::size_t>& labels) {
  double out = 0.0;
  const std::size_t k = *std::max_element(labels.begin(), labels.end()) + 1;
  for (std::size_t l = 0; l < k; ++l) {
    std::vector<Eigen::Index> idx;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == l) idx.push_back(static_cast<Eigen::Index>(i));
    }
    Eigen::MatrixXd sub(static_cast<Eigen::Index>(idx.size()), rows.cols());
    for (std::size_t i = 0; i < idx.size(); ++i) sub.row(static_cast<Eigen::Index>(i)) = rows.row(idx[i]);
    for (const auto& e : minimum_spanning_tree(sub)) out = std::max(out, e.weight);
  }
  return out;
}

double min_inter(const Eigen::MatrixXd& rows, const std::vector<std::size_t>& labels) {
  double out = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < rows.rows(); ++j) {
      if (labels[static_cast<std::size_t>(i)] != labels[static_cast<std::size_t>(j)]) {
        out = std::min(out, (rows.row(i) - rows.row(j)).norm());
      }
    }
  }
  return out;
}

TEST(SingleLinkage, ExtremeThresholds) {
  std::mt19937_64 rng(1);
  const auto rows = random_rows(12, 3, rng);
  const auto singletons = single_linkage(rows, 0.0);
  EXPECT_EQ(singletons.k_hat, 12u);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(singletons.labels[i], i);
  const auto one = single_linkage(rows, std::numeric_limits<double>::infinity());
  EXPECT_EQ(one.k_hat, 1u);
  EXPECT_EQ(one.mst_edge_weights.size(), 11u);
  EXPECT_TRUE(std::is_sorted(one.mst_edge_weights.begin(), one.mst_edge_weights.end()));
}

TEST(SingleLinkage, SeparatedGroups) {
  std::mt19937_64 rng(2);
  Eigen::MatrixXd rows = random_rows(20, 2, rng, 0.5);
  std::vector<std::size_t> truth(20);
  for (Eigen::Index i = 0; i < 20; i += 2) {
    rows(i, 0) += 10.0;
    truth[static_cast<std::size_t>(i)] = 1;
  }
  const auto r = single_linkage(rows, 5.0);
  EXPECT_EQ(r.k_hat, 2u);
  EXPECT_TRUE(oracle::same_partition(r.labels, truth));
  EXPECT_EQ(r.labels[0], 0u);
}

TEST(SingleLinkage, SingleRowAndBadThreshold) {
  const Eigen::MatrixXd one = Eigen::MatrixXd::Ones(1, 3);
  EXPECT_EQ(single_linkage(one, 1.0).k_hat, 1u);
  EXPECT_THROW(single_linkage(one, -1.0), std::invalid_argument);
  EXPECT_THROW(select_t2(one), std::invalid_argument);
}

TEST(SingleLinkage, EqualsEpsilonGraphComponents) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 50;
    const auto rows = random_rows(n, 1 + static_cast<Eigen::Index>(rng() % 4), rng);
    const double eps = std::uniform_real_distribution<double>(0.0, 0.6)(rng);
    EXPECT_EQ(single_linkage(rows, eps).labels, oracle::epsilon_components(rows, eps));
  }
}

TEST(SingleLinkage, RowPermutationPermutesLabels) {
  std::mt19937_64 rng(4);
  const auto rows = random_rows(30, 3, rng);
  std::vector<Eigen::Index> perm(30);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  Eigen::MatrixXd shuffled(30, 3);
  for (Eigen::Index i = 0; i < 30; ++i) shuffled.row(i) = rows.row(perm[static_cast<std::size_t>(i)]);
  const auto a = single_linkage(rows, 0.3);
  const auto b = single_linkage(shuffled, 0.3);
  std::vector<std::size_t> pulled(30);
  for (std::size_t i = 0; i < 30; ++i) pulled[i] = a.labels[static_cast<std::size_t>(perm[i])];
  EXPECT_TRUE(oracle::same_partition(pulled, b.labels));
}

TEST(SingleLinkage, MonotoneInThreshold) {
  std::mt19937_64 rng(5);
  const auto rows = random_rows(40, 2, rng);
  const auto mst = minimum_spanning_tree(rows);
  std::size_t previous = 41;
  for (double t = 0.0; t < 1.5; t += 0.01) {
    const auto k = single_linkage(mst, 40, t).k_hat;
    EXPECT_LE(k, previous);
    previous = k;
  }
}

TEST(SingleLinkage, ProperThresholdRecoversTruth) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 50; ++t) {
    const std::size_t k = 2 + rng() % 4;
    Eigen::MatrixXd rows = random_rows(60, 3, rng);
    std::vector<std::size_t> truth(60);
    for (Eigen::Index i = 0; i < 60; ++i) {
      truth[static_cast<std::size_t>(i)] = rng() % k;
      rows(i, 0) += 3.0 * static_cast<double>(truth[static_cast<std::size_t>(i)]);
    }
    const double max_intra = max_intra_mst(rows, truth);
    const double min_gap = min_inter(rows, truth);
    if (!(max_intra < min_gap)) continue;
    const auto r = single_linkage(rows, 0.5 * (max_intra + min_gap));
    EXPECT_TRUE(oracle::same_partition(r.labels, truth));
  }
}

TEST(SelectT2, LargestRatioGap) {
  const std::vector<double> w{1, 1, 1, 9};
  EXPECT_DOUBLE_EQ(select_t2_from_weights(w), 5.0);
  const std::vector<double> flat{2, 2, 2};
  EXPECT_GT(select_t2_from_weights(flat), 2.0);

  // The same weights from points on a line; the size rule must be relaxed to
  // allow the lone far point its own cluster.
  Eigen::MatrixXd line(5, 1);
  line << 0, 1, 2, 3, 12;
  T2Options loose;
  loose.min_cluster_size = 1;
  EXPECT_DOUBLE_EQ(select_t2(line, loose), 5.0);
  EXPECT_EQ(single_linkage_auto(line, loose).k_hat, 2u);
  EXPECT_EQ(single_linkage_auto(line).k_hat, 1u);
}

TEST(SelectT2, GuardMergesUniformData) {
  Eigen::MatrixXd grid(10, 1);
  for (Eigen::Index i = 0; i < 10; ++i) grid(i, 0) = static_cast<double>(i);
  EXPECT_EQ(single_linkage_auto(grid).k_hat, 1u);
}

TEST(SelectT2, DiffuseBlobStaysWhole) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> g;
  for (int t = 0; t < 20; ++t) {
    Eigen::MatrixXd rows(300, 2);
    for (auto& x : rows.reshaped()) x = g(rng);
    EXPECT_EQ(single_linkage_auto(rows).k_hat, 1u);
  }
}

TEST(SelectT2, MinClusterSizeDefault) {
  EXPECT_EQ(min_cluster_size(5), 2u);
  EXPECT_EQ(min_cluster_size(1000), 15u);
  T2Options o;
  o.min_cluster_size = 4;
  EXPECT_EQ(min_cluster_size(1000, o), 4u);
}

TEST(SelectT2, SeparatesDenoisedClustersInSuccessRegime) {
  const std::size_t n = 30;
  const auto spec = MixtureSpec::uniform({ComponentSpec::gaussian(gaussian_utilities(n, 1), 0.3),
                                          ComponentSpec::gaussian(gaussian_utilities(n, 2), 0.3)});
  for (Seed seed = 1; seed <= 5; ++seed) {
    const auto r = run_pipeline(spec, 400, 1.0, seed);
    const auto& rows = r.estimate.scores;
    EXPECT_GE(r.clustering.threshold_used, max_intra_mst(rows, r.true_labels));
    EXPECT_LT(r.clustering.threshold_used, min_inter(rows, r.true_labels));
    EXPECT_EQ(r.clustering.k_hat, 2u);
    EXPECT_EQ(r.evaluation.risk, 0.0);
  }
}

}  // namespace
}  // namespace rankmix
