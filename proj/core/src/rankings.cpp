#include "rankmix/rankings.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "rankmix/error.hpp"

namespace rankmix {

Permutation Permutation::from_order(std::vector<Item> order) {
  const std::size_t n = order.size();
  if (n == 0) throw std::invalid_argument("permutation must contain at least one item");
  std::vector<std::size_t> position(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const Item item = order[r];
    if (item >= n) {
      throw std::invalid_argument("item " + std::to_string(item) + " out of range for n=" +
                                  std::to_string(n));
    }
    if (position[item] != n) {
      throw std::invalid_argument("item " + std::to_string(item) + " appears twice");
    }
    position[item] = r;
  }
  return Permutation(std::move(order), std::move(position));
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Item> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  return from_order(std::move(order));
}

Permutation Permutation::reversed(std::size_t n) {
  std::vector<Item> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = n - 1 - i;
  return from_order(std::move(order));
}

std::size_t pair_count(std::size_t n) noexcept { return n < 2 ? 0 : n * (n - 1) / 2; }

PairIndexer::PairIndexer(std::size_t n) : n_(n), d_(pair_count(n)) {}

std::size_t PairIndexer::index(Item a, Item b) const {
  if (!(a < b && b < n_)) {
    throw std::out_of_range("pair (" + std::to_string(a) + "," + std::to_string(b) +
                            ") invalid for n=" + std::to_string(n_));
  }
  // Pairs starting with a' < a occupy (n-1) + (n-2) + ... + (n-a) slots.
  return a * (2 * n_ - a - 1) / 2 + (b - a - 1);
}

std::pair<Item, Item> PairIndexer::pair_of(std::size_t idx) const {
  if (idx >= d_) {
    throw std::out_of_range("pair index " + std::to_string(idx) + " out of range for n=" +
                            std::to_string(n_));
  }
  Item a = 0;
  std::size_t row_len = n_ - 1;
  while (idx >= row_len) {
    idx -= row_len;
    ++a;
    --row_len;
  }
  return {a, a + 1 + idx};
}

std::size_t pair_index(Item a, Item b, std::size_t n) { return PairIndexer(n).index(a, b); }

std::pair<Item, Item> pair_of(std::size_t idx, std::size_t n) { return PairIndexer(n).pair_of(idx); }

EmbeddedObservation::EmbeddedObservation(std::size_t n, std::vector<Comparison> coords)
    : n_(n), coords_(std::move(coords)) {
  if (coords_.size() != pair_count(n)) {
    throw DimensionError("embedding of n=" + std::to_string(n) + " needs " +
                         std::to_string(pair_count(n)) + " coordinates, got " +
                         std::to_string(coords_.size()));
  }
}

double EmbeddedObservation::value(std::size_t idx, double fill) const {
  switch (coords_[idx]) {
    case Comparison::kAhead: return kHalf;
    case Comparison::kBehind: return -kHalf;
    case Comparison::kMissing: break;
  }
  return fill;
}

std::size_t EmbeddedObservation::observed_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(coords_.begin(), coords_.end(),
                    [](Comparison c) { return c != Comparison::kMissing; }));
}

std::vector<double> EmbeddedObservation::to_dense(double fill) const {
  std::vector<double> out(coords_.size());
  for (std::size_t i = 0; i < coords_.size(); ++i) out[i] = value(i, fill);
  return out;
}

EmbeddedObservation EmbeddedObservation::flipped() const {
  std::vector<Comparison> out(coords_.size());
  std::transform(coords_.begin(), coords_.end(), out.begin(), [](Comparison c) {
    return static_cast<Comparison>(-static_cast<std::int8_t>(c));
  });
  return EmbeddedObservation(n_, std::move(out));
}

EmbeddedObservation EmbeddedObservation::with_missing(std::span<const std::uint8_t> keep) const {
  if (keep.size() != coords_.size()) {
    throw DimensionError("mask length " + std::to_string(keep.size()) + " != dimension " +
                         std::to_string(coords_.size()));
  }
  std::vector<Comparison> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!keep[i]) out[i] = Comparison::kMissing;
  }
  return EmbeddedObservation(n_, std::move(out));
}

EmbeddedObservation embed(const Permutation& perm) {
  const std::size_t n = perm.size();
  std::vector<Comparison> coords;
  coords.reserve(pair_count(n));
  for (Item a = 0; a < n; ++a) {
    for (Item b = a + 1; b < n; ++b) {
      coords.push_back(perm.precedes(a, b) ? Comparison::kAhead : Comparison::kBehind);
    }
  }
  return EmbeddedObservation(n, std::move(coords));
}

namespace {

std::uint64_t merge_count(std::vector<std::size_t>& v, std::vector<std::size_t>& scratch,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t count = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      count += mid - i;
      scratch[k++] = v[j++];
    } else {
      scratch[k++] = v[i++];
    }
  }
  while (i < mid) scratch[k++] = v[i++];
  while (j < hi) scratch[k++] = v[j++];
  std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
            scratch.begin() + static_cast<std::ptrdiff_t>(hi),
            v.begin() + static_cast<std::ptrdiff_t>(lo));
  return count;
}

}  // namespace

std::uint64_t kendall_tau(const Permutation& p1, const Permutation& p2) {
  if (p1.size() != p2.size()) {
    throw DimensionError("kendall_tau: permutations of different size (" +
                         std::to_string(p1.size()) + " vs " + std::to_string(p2.size()) + ")");
  }
  // Ranks under p2 of the items listed in p1's order; inversions are disagreements.
  std::vector<std::size_t> seq(p1.size());
  for (std::size_t r = 0; r < p1.size(); ++r) seq[r] = p2.rank_of(p1.item_at(r));
  std::vector<std::size_t> scratch(seq.size());
  return merge_count(seq, scratch, 0, seq.size());
}

double embedding_distance_sq(const EmbeddedObservation& e1, const EmbeddedObservation& e2) {
  if (e1.items() != e2.items() || e1.dimension() != e2.dimension()) {
    throw DimensionError("embedding_distance_sq: dimension mismatch");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < e1.dimension(); ++i) {
    if (e1.is_missing(i) || e2.is_missing(i)) {
      throw std::invalid_argument("embedding_distance_sq: MISSING coordinate at index " +
                                  std::to_string(i));
    }
    const double diff = e1.value(i) - e2.value(i);
    total += diff * diff;
  }
  return total;
}

std::vector<Permutation> read_rankings(std::istream& in) {
  std::string line;
  std::size_t count = 0, n = 0;
  if (!std::getline(in, line)) throw ParseError("rankings: missing header line");
  {
    std::istringstream header(line);
    if (!(header >> count >> n) || n == 0) throw ParseError("rankings: header must be 'N n'");
  }
  std::vector<Permutation> out;
  out.reserve(count);
  for (std::size_t row = 0; row < count; ++row) {
    if (!std::getline(in, line)) {
      throw ParseError("rankings: expected " + std::to_string(count) + " rows, got " +
                       std::to_string(row));
    }
    std::istringstream fields(line);
    std::vector<Item> order;
    order.reserve(n);
    long long item = 0;
    while (fields >> item) {
      if (item < 0) throw ParseError("rankings: negative item on row " + std::to_string(row));
      order.push_back(static_cast<Item>(item));
    }
    if (!fields.eof()) throw ParseError("rankings: non-integer token on row " + std::to_string(row));
    if (order.size() != n) {
      throw ParseError("rankings: row " + std::to_string(row) + " has " +
                       std::to_string(order.size()) + " items, expected " + std::to_string(n));
    }
    try {
      out.push_back(Permutation::from_order(std::move(order)));
    } catch (const std::invalid_argument& e) {
      throw ParseError("rankings: row " + std::to_string(row) + ": " + e.what());
    }
  }
  return out;
}

std::vector<Permutation> read_rankings_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_rankings(in);
}

void write_rankings(std::ostream& out, std::span<const Permutation> rankings) {
  const std::size_t n = rankings.empty() ? 0 : rankings.front().size();
  out << rankings.size() << ' ' << n << '\n';
  for (const auto& perm : rankings) {
    if (perm.size() != n) throw DimensionError("write_rankings: mixed permutation sizes");
    for (std::size_t r = 0; r < n; ++r) {
      if (r) out << ' ';
      out << perm.item_at(r);
    }
    out << '\n';
  }
}

void write_rankings_file(const std::string& path, std::span<const Permutation> rankings) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  write_rankings(out, rankings);
  if (!out) throw IoError(path, "write failed");
}

}  // namespace rankmix
