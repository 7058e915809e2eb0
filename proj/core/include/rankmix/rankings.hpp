#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rankmix {

using Item = std::size_t;

/// A total order over items {0, ..., n-1}. Rank 0 is the most preferred item.
///
/// Stores both the order (item at each rank) and its inverse (rank of each
/// item) so that either lookup is O(1). Immutable once constructed.
class Permutation {
 public:
  /// Builds from an order array; throws std::invalid_argument unless `order`
  /// is a bijection on {0, ..., order.size()-1}.
  static Permutation from_order(std::vector<Item> order);
  static Permutation identity(std::size_t n);
  static Permutation reversed(std::size_t n);

  std::size_t size() const noexcept { return order_.size(); }
  Item item_at(std::size_t rank) const { return order_[rank]; }
  std::size_t rank_of(Item item) const { return position_[item]; }
  bool precedes(Item a, Item b) const { return position_[a] < position_[b]; }

  std::span<const Item> order() const noexcept { return order_; }
  std::span<const std::size_t> position() const noexcept { return position_; }

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  Permutation(std::vector<Item> order, std::vector<std::size_t> position)
      : order_(std::move(order)), position_(std::move(position)) {}

  std::vector<Item> order_;
  std::vector<std::size_t> position_;
};

/// Lexicographic indexing of unordered item pairs (a, b), a < b.
class PairIndexer {
 public:
  explicit PairIndexer(std::size_t n);

  std::size_t items() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return d_; }

  /// Throws std::out_of_range unless a < b < n.
  std::size_t index(Item a, Item b) const;
  /// Inverse of index(); throws std::out_of_range for idx >= dimension().
  std::pair<Item, Item> pair_of(std::size_t idx) const;

 private:
  std::size_t n_;
  std::size_t d_;
};

std::size_t pair_count(std::size_t n) noexcept;

/// Free-function forms of PairIndexer for one-off lookups.
std::size_t pair_index(Item a, Item b, std::size_t n);
std::pair<Item, Item> pair_of(std::size_t idx, std::size_t n);

/// One coordinate of an embedded ranking.
enum class Comparison : std::int8_t { kBehind = -1, kMissing = 0, kAhead = 1 };

/// Pairwise-comparison vector of a ranking, coordinates over {-1/2, +1/2}
/// plus an explicit MISSING marker.
///
/// Coordinate (a, b) with a < b is +1/2 when a precedes b. This is the global
/// sign flip of the indicator 1{pos(a) >= pos(b)} - 1/2; every distance is
/// unaffected. Under the +-1/2 scale the squared l2 distance between two
/// embeddings equals their Kendall tau distance (with a +-1 scale it is four
/// times larger).
class EmbeddedObservation {
 public:
  static constexpr double kHalf = 0.5;

  EmbeddedObservation() = default;
  EmbeddedObservation(std::size_t n, std::vector<Comparison> coords);

  std::size_t items() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return coords_.size(); }

  Comparison at(std::size_t idx) const { return coords_[idx]; }
  bool is_missing(std::size_t idx) const { return coords_[idx] == Comparison::kMissing; }
  /// +-1/2 for observed coordinates, `fill` for missing ones.
  double value(std::size_t idx, double fill = 0.0) const;
  std::size_t observed_count() const noexcept;
  bool fully_observed() const noexcept { return observed_count() == coords_.size(); }

  std::span<const Comparison> coords() const noexcept { return coords_; }
  std::vector<double> to_dense(double fill = 0.0) const;

  /// Returns a copy with every coordinate mirrored (+1/2 <-> -1/2).
  EmbeddedObservation flipped() const;
  /// Returns a copy where every coordinate with keep[idx] == 0 is MISSING.
  EmbeddedObservation with_missing(std::span<const std::uint8_t> keep) const;

  friend bool operator==(const EmbeddedObservation&, const EmbeddedObservation&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Comparison> coords_;
};

EmbeddedObservation embed(const Permutation& perm);

/// Number of item pairs ordered differently by the two permutations.
/// O(n log n) via merge-sort inversion counting.
std::uint64_t kendall_tau(const Permutation& p1, const Permutation& p2);

/// Squared Euclidean distance between two fully observed embeddings.
/// Throws DimensionError on size mismatch and std::invalid_argument if either
/// vector has MISSING coordinates.
double embedding_distance_sq(const EmbeddedObservation& e1, const EmbeddedObservation& e2);

// Rankings file: first line "N n", then N lines of space-separated orders.
std::vector<Permutation> read_rankings(std::istream& in);
std::vector<Permutation> read_rankings_file(const std::string& path);
void write_rankings(std::ostream& out, std::span<const Permutation> rankings);
void write_rankings_file(const std::string& path, std::span<const Permutation> rankings);

}  // namespace rankmix
