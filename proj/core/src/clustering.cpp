#include "rankmix/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rankmix {

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

std::vector<double> sorted_weights(std::span<const MstEdge> mst) {
  std::vector<double> w;
  w.reserve(mst.size());
  for (const auto& e : mst) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  return w;
}

}  // namespace

std::vector<MstEdge> minimum_spanning_tree(const Eigen::MatrixXd& rows) {
  const auto n = static_cast<std::size_t>(rows.rows());
  std::vector<MstEdge> edges;
  if (n < 2) return edges;
  edges.reserve(n - 1);

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> best(n, inf);
  std::vector<std::size_t> parent(n, 0);
  std::vector<char> in_tree(n, 0);
  std::size_t current = 0;
  in_tree[0] = 1;
  for (std::size_t step = 1; step < n; ++step) {
    const auto cur_row = rows.row(static_cast<Eigen::Index>(current));
    std::size_t next = n;
    double next_dist = inf;
    for (std::size_t j = 0; j < n; ++j) {
      if (in_tree[j]) continue;
      const double d2 = (rows.row(static_cast<Eigen::Index>(j)) - cur_row).squaredNorm();
      if (d2 < best[j]) {
        best[j] = d2;
        parent[j] = current;
      }
      if (best[j] < next_dist) {
        next_dist = best[j];
        next = j;
      }
    }
    in_tree[next] = 1;
    edges.push_back({parent[next], next, std::sqrt(next_dist)});
    current = next;
  }
  return edges;
}

ClusteringResult single_linkage(std::span<const MstEdge> mst, std::size_t num_rows, double t2) {
  if (!(t2 >= 0.0)) throw std::invalid_argument("t2 must be nonnegative");
  if (num_rows == 0) throw std::invalid_argument("single_linkage needs at least one row");
  if (mst.size() + 1 != num_rows) throw std::invalid_argument("MST must have N-1 edges");
  DisjointSets sets(num_rows);
  for (const auto& e : mst) {
    if (e.weight <= t2) sets.unite(e.a, e.b);
  }
  ClusteringResult result;
  result.threshold_used = t2;
  result.mst_edge_weights = sorted_weights(mst);
  result.labels.resize(num_rows);
  std::vector<std::size_t> label_of_root(num_rows, num_rows);
  for (std::size_t i = 0; i < num_rows; ++i) {
    const std::size_t root = sets.find(i);
    if (label_of_root[root] == num_rows) label_of_root[root] = result.k_hat++;
    result.labels[i] = label_of_root[root];
  }
  return result;
}

ClusteringResult single_linkage(const Eigen::MatrixXd& rows, double t2) {
  const auto mst = minimum_spanning_tree(rows);
  return single_linkage(mst, static_cast<std::size_t>(rows.rows()), t2);
}

namespace {

double above(double w) { return std::nextafter(w, std::numeric_limits<double>::infinity()); }

// Gap candidates i (cut between w[i] and w[i + 1]) with ratio >= guard,
// largest ratio first; ties keep the lower index.
std::vector<std::size_t> gap_candidates(std::span<const double> w, double guard) {
  std::vector<std::pair<double, std::size_t>> gaps;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    double ratio = 1.0;
    if (w[i] > 0.0) {
      ratio = w[i + 1] / w[i];
    } else if (w[i + 1] > 0.0) {
      ratio = std::numeric_limits<double>::infinity();
    }
    if (ratio >= guard) gaps.emplace_back(ratio, i);
  }
  std::stable_sort(gaps.begin(), gaps.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<std::size_t> out;
  for (const auto& g : gaps) out.push_back(g.second);
  return out;
}

std::size_t smallest_cluster(std::span<const MstEdge> mst, double t2) {
  const std::size_t n = mst.size() + 1;
  DisjointSets sets(n);
  for (const auto& e : mst) {
    if (e.weight <= t2) sets.unite(e.a, e.b);
  }
  std::vector<std::size_t> size(n, 0);
  for (std::size_t i = 0; i < n; ++i) ++size[sets.find(i)];
  std::size_t smallest = n;
  for (std::size_t s : size) {
    if (s > 0) smallest = std::min(smallest, s);
  }
  return smallest;
}

}  // namespace

std::size_t min_cluster_size(std::size_t num_rows, const T2Options& options) {
  if (options.min_cluster_size > 0) return options.min_cluster_size;
  const auto half_root = static_cast<std::size_t>(std::sqrt(static_cast<double>(num_rows)) / 2.0);
  return std::max<std::size_t>(2, half_root);
}

double select_t2_from_weights(std::span<const double> w, const T2Options& options) {
  if (w.empty()) throw std::invalid_argument("select_t2 needs at least two rows");
  const auto gaps = gap_candidates(w, options.gap_ratio_guard);
  if (gaps.empty()) return above(w.back());
  return 0.5 * (w[gaps.front()] + w[gaps.front() + 1]);
}

double select_t2(std::span<const MstEdge> mst, const T2Options& options) {
  if (mst.empty()) throw std::invalid_argument("select_t2 needs at least two rows");
  const auto w = sorted_weights(mst);
  const std::size_t min_size = min_cluster_size(mst.size() + 1, options);
  for (std::size_t i : gap_candidates(w, options.gap_ratio_guard)) {
    const double t2 = 0.5 * (w[i] + w[i + 1]);
    if (smallest_cluster(mst, t2) >= min_size) return t2;
  }
  return above(w.back());
}

double select_t2(const Eigen::MatrixXd& rows, const T2Options& options) {
  if (rows.rows() < 2) throw std::invalid_argument("select_t2 needs at least two rows");
  return select_t2(minimum_spanning_tree(rows), options);
}

ClusteringResult single_linkage_auto(const Eigen::MatrixXd& rows, const T2Options& options) {
  if (rows.rows() < 2) throw std::invalid_argument("select_t2 needs at least two rows");
  const auto mst = minimum_spanning_tree(rows);
  return single_linkage(mst, static_cast<std::size_t>(rows.rows()), select_t2(mst, options));
}

}  // namespace rankmix
