#include "rankmix/generators.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "rankmix/error.hpp"

namespace rankmix {

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// Index order of `scores` sorted descending; ties go to the lower index.
std::vector<Item> descending_order(const std::vector<double>& scores) {
  std::vector<Item> order(scores.size());
  std::iota(order.begin(), order.end(), Item{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Item a, Item b) { return scores[a] > scores[b]; });
  return order;
}

// Repeated insertion: the j-th center item is inserted so that it jumps ahead
// of r already-placed items with probability proportional to phi^r, which
// adds exactly r discordant pairs relative to the center.
Permutation sample_mallows(const Permutation& center, double phi, Engine& rng) {
  const std::size_t n = center.size();
  std::vector<Item> placed;
  placed.reserve(n);
  std::vector<double> weights;
  weights.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    weights.assign(j + 1, 0.0);
    double w = 1.0;
    for (std::size_t r = 0; r <= j; ++r) {
      weights[r] = w;
      w *= phi;
    }
    std::discrete_distribution<std::size_t> jump(weights.begin(), weights.end());
    const std::size_t r = jump(rng);
    placed.insert(placed.begin() + static_cast<std::ptrdiff_t>(j - r), center.item_at(j));
  }
  return Permutation::from_order(std::move(placed));
}

void require_exact_mallows(const ComponentSpec& spec) {
  if (spec.items() > kMaxExactMallowsItems) {
    throw UnsupportedError("exact Mallows marginals enumerate S_n and support n <= " +
                           std::to_string(kMaxExactMallowsItems) + ", got n=" +
                           std::to_string(spec.items()));
  }
}

// ahead(a, b) probabilities for a Mallows component by enumerating S_n.
Eigen::MatrixXd mallows_ahead_matrix(const ComponentSpec& spec) {
  require_exact_mallows(spec);
  const std::size_t n = spec.items();
  const Permutation& center = *spec.center;
  Eigen::MatrixXd ahead = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                static_cast<Eigen::Index>(n));
  std::vector<Item> order(n);
  std::iota(order.begin(), order.end(), Item{0});
  double total = 0.0;
  do {
    const Permutation perm = Permutation::from_order(order);
    const double w = std::pow(spec.noise, static_cast<double>(kendall_tau(perm, center)));
    total += w;
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t s = r + 1; s < n; ++s) {
        ahead(static_cast<Eigen::Index>(order[r]), static_cast<Eigen::Index>(order[s])) += w;
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return ahead / total;
}

}  // namespace

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::kMnl: return "mnl";
    case Family::kGaussian: return "gaussian";
    case Family::kMallows: return "mallows";
  }
  return "unknown";
}

Family parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "mnl") return Family::kMnl;
  if (lower == "gaussian") return Family::kGaussian;
  if (lower == "mallows") return Family::kMallows;
  throw std::invalid_argument("unknown model family '" + std::string(name) + "'");
}

ComponentSpec ComponentSpec::mnl(std::vector<double> utilities, double beta) {
  ComponentSpec spec{Family::kMnl, std::move(utilities), beta, std::nullopt};
  spec.validate();
  return spec;
}

ComponentSpec ComponentSpec::gaussian(std::vector<double> utilities, double sigma) {
  ComponentSpec spec{Family::kGaussian, std::move(utilities), sigma, std::nullopt};
  spec.validate();
  return spec;
}

ComponentSpec ComponentSpec::mallows(Permutation center, double phi) {
  ComponentSpec spec{Family::kMallows, {}, phi, std::move(center)};
  spec.validate();
  return spec;
}

std::size_t ComponentSpec::items() const {
  return family == Family::kMallows ? (center ? center->size() : 0) : utilities.size();
}

void ComponentSpec::validate() const {
  if (!(noise > 0.0) || !std::isfinite(noise)) {
    throw std::invalid_argument("noise parameter must be positive and finite");
  }
  if (family == Family::kMallows) {
    if (!center) throw std::invalid_argument("Mallows component needs a center permutation");
    if (!(noise < 1.0)) throw std::invalid_argument("Mallows phi must lie in (0, 1)");
    return;
  }
  if (utilities.empty()) throw std::invalid_argument("utility vector is empty");
  for (double u : utilities) {
    if (!std::isfinite(u)) throw std::invalid_argument("utilities must be finite");
  }
}

MixtureSpec MixtureSpec::uniform(std::vector<ComponentSpec> components) {
  MixtureSpec spec;
  const double w = components.empty() ? 0.0 : 1.0 / static_cast<double>(components.size());
  spec.weights.assign(components.size(), w);
  spec.components = std::move(components);
  spec.validate();
  return spec;
}

std::size_t MixtureSpec::items() const {
  if (components.empty()) throw std::invalid_argument("mixture has no components");
  return components.front().items();
}

void MixtureSpec::validate() const {
  if (components.empty()) throw std::invalid_argument("mixture has no components");
  if (weights.size() != components.size()) {
    throw std::invalid_argument("mixture has " + std::to_string(components.size()) +
                                " components but " + std::to_string(weights.size()) + " weights");
  }
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument("weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) {
    throw std::invalid_argument("weights must sum to 1 (got " + std::to_string(total) + ")");
  }
  const std::size_t n = components.front().items();
  for (const auto& c : components) {
    c.validate();
    if (c.items() != n) throw std::invalid_argument("all components must share the same n");
  }
}

Permutation sample_component(const ComponentSpec& spec, Engine& rng) {
  switch (spec.family) {
    case Family::kMallows: return sample_mallows(*spec.center, spec.noise, rng);
    case Family::kMnl: {
      std::vector<double> z(spec.utilities);
      for (double& v : z) v += sample_gumbel(rng, spec.noise);
      return Permutation::from_order(descending_order(z));
    }
    case Family::kGaussian: {
      std::normal_distribution<double> eps(0.0, spec.noise);
      std::vector<double> z(spec.utilities);
      for (double& v : z) v += eps(rng);
      return Permutation::from_order(descending_order(z));
    }
  }
  throw std::logic_error("unreachable family");
}

Permutation sample_component(const ComponentSpec& spec, Seed seed) {
  Engine rng = make_engine(seed, 0, StreamTag::kRanking);
  return sample_component(spec, rng);
}

double exact_pairwise_marginal(const ComponentSpec& spec, Item a, Item b) {
  const std::size_t n = spec.items();
  if (a == b || a >= n || b >= n) {
    throw std::invalid_argument("exact_pairwise_marginal needs two distinct items below n");
  }
  switch (spec.family) {
    case Family::kMnl:
      // w_a / (w_a + w_b) with w = exp(u / beta), written to avoid overflow.
      return 1.0 / (1.0 + std::exp((spec.utilities[b] - spec.utilities[a]) / spec.noise));
    case Family::kGaussian:
      return normal_cdf((spec.utilities[a] - spec.utilities[b]) / (spec.noise * std::sqrt(2.0)));
    case Family::kMallows:
      return mallows_ahead_matrix(spec)(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  throw std::logic_error("unreachable family");
}

Eigen::VectorXd cluster_mean(const ComponentSpec& spec) {
  const std::size_t n = spec.items();
  const PairIndexer pairs(n);
  Eigen::VectorXd mean(static_cast<Eigen::Index>(pairs.dimension()));
  Eigen::MatrixXd mallows;
  if (spec.family == Family::kMallows) mallows = mallows_ahead_matrix(spec);
  Eigen::Index idx = 0;
  for (Item a = 0; a < n; ++a) {
    for (Item b = a + 1; b < n; ++b, ++idx) {
      const double ahead = spec.family == Family::kMallows
                               ? mallows(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))
                               : exact_pairwise_marginal(spec, a, b);
      mean(idx) = ahead - 0.5;
    }
  }
  return mean;
}

std::vector<LabeledSample> sample_mixture(const MixtureSpec& spec, std::size_t count, Seed seed) {
  spec.validate();
  if (count == 0) throw std::invalid_argument("sample_mixture needs N >= 1");
  std::vector<LabeledSample> out;
  out.reserve(count);
  for (std::size_t row = 0; row < count; ++row) {
    Engine label_rng = make_engine(seed, row, StreamTag::kLabel);
    std::discrete_distribution<std::size_t> pick(spec.weights.begin(), spec.weights.end());
    const std::size_t label = pick(label_rng);
    Engine rng = make_engine(seed, row, StreamTag::kRanking);
    out.push_back({embed(sample_component(spec.components[label], rng)), label, row});
  }
  return out;
}

std::vector<LabeledSample> sample_mixture_counts(const MixtureSpec& spec,
                                                 std::span<const std::size_t> counts, Seed seed) {
  if (spec.components.empty()) throw std::invalid_argument("mixture has no components");
  if (counts.size() != spec.components.size()) {
    throw std::invalid_argument("one count per component required");
  }
  for (const auto& c : spec.components) c.validate();
  std::vector<std::size_t> labels;
  for (std::size_t i = 0; i < counts.size(); ++i) labels.insert(labels.end(), counts[i], i);
  Engine shuffle_rng = make_engine(seed, 0, StreamTag::kLabel);
  std::shuffle(labels.begin(), labels.end(), shuffle_rng);

  std::vector<LabeledSample> out;
  out.reserve(labels.size());
  for (std::size_t row = 0; row < labels.size(); ++row) {
    Engine rng = make_engine(seed, row, StreamTag::kRanking);
    out.push_back({embed(sample_component(spec.components[labels[row]], rng)), labels[row], row});
  }
  return out;
}

std::vector<std::size_t> poisson_sizes(std::size_t components, double lambda, Seed seed) {
  if (!(lambda > 0.0)) throw std::invalid_argument("Poisson rate must be positive");
  Engine rng = make_engine(seed, 0, StreamTag::kSizes);
  std::poisson_distribution<long long> draw(lambda);
  std::vector<std::size_t> sizes(components);
  for (auto& s : sizes) s = static_cast<std::size_t>(draw(rng));
  return sizes;
}

std::vector<LabeledSample> mask(std::span<const LabeledSample> samples, double p, Seed seed) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("observation probability must be in (0, 1]");
  std::vector<LabeledSample> out(samples.begin(), samples.end());
  if (p == 1.0) return out;
  std::vector<std::uint8_t> keep_mask;
  for (auto& sample : out) {
    Engine rng = make_engine(seed, sample.row_id, StreamTag::kMask);
    std::bernoulli_distribution keep(p);
    keep_mask.resize(sample.observation.dimension());
    for (auto& k : keep_mask) k = keep(rng) ? 1 : 0;
    sample.observation = sample.observation.with_missing(keep_mask);
  }
  return out;
}

std::vector<double> gaussian_utilities(std::size_t n, Seed seed) {
  Engine rng = make_engine(seed, n, StreamTag::kUtilities);
  std::normal_distribution<double> draw(0.0, 1.0);
  std::vector<double> u(n);
  for (double& v : u) v = draw(rng);
  return u;
}

std::vector<double> hypercube_utilities(std::size_t n, Seed seed) {
  Engine rng = make_engine(seed, n, StreamTag::kUtilities);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> u(n);
  for (double& v : u) v = coin(rng) ? 0.5 : -0.5;
  return u;
}

std::vector<double> ladder_utilities(std::size_t n, double rho, Seed seed) {
  std::vector<Item> items(n);
  std::iota(items.begin(), items.end(), Item{0});
  Engine rng = make_engine(seed, n, StreamTag::kUtilities);
  std::shuffle(items.begin(), items.end(), rng);
  std::vector<double> u(n);
  for (std::size_t r = 0; r < n; ++r) u[items[r]] = rho * static_cast<double>(n - 1 - r);
  return u;
}

}  // namespace rankmix
