#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankmix/rankings.hpp"
#include "rankmix/rng.hpp"

namespace rankmix {

enum class Family { kMnl, kGaussian, kMallows };

std::string_view to_string(Family family) noexcept;
/// Accepts "mnl", "gaussian", "mallows" (case-insensitive).
Family parse_family(std::string_view name);

/// One ranking model of the mixture.
///
/// MNL and Gaussian components sort noisy utilities u_a + eps_a in descending
/// order; `noise` is the Gumbel scale beta or the Gaussian standard deviation
/// sigma. Mallows components ignore `utilities` and use `center` with
/// dispersion phi in (0, 1) stored in `noise`.
struct ComponentSpec {
  Family family = Family::kGaussian;
  std::vector<double> utilities;
  double noise = 1.0;
  std::optional<Permutation> center;

  static ComponentSpec mnl(std::vector<double> utilities, double beta);
  static ComponentSpec gaussian(std::vector<double> utilities, double sigma);
  static ComponentSpec mallows(Permutation center, double phi);

  std::size_t items() const;
  /// Throws std::invalid_argument if the parameters are out of range.
  void validate() const;
};

struct MixtureSpec {
  std::vector<ComponentSpec> components;
  std::vector<double> weights;

  /// Equal weights over the given components.
  static MixtureSpec uniform(std::vector<ComponentSpec> components);

  std::size_t size() const noexcept { return components.size(); }
  std::size_t items() const;
  void validate() const;
};

struct LabeledSample {
  EmbeddedObservation observation;
  std::size_t true_label = 0;
  // Stable identity of the draw; masking keys its random stream on this, so a
  // reordered sample list is masked identically row-for-row.
  std::uint64_t row_id = 0;
};

/// Mallows marginals and means are computed by enumerating S_n up to this size.
inline constexpr std::size_t kMaxExactMallowsItems = 8;

Permutation sample_component(const ComponentSpec& spec, Engine& rng);
Permutation sample_component(const ComponentSpec& spec, Seed seed);

/// P(a is ranked ahead of b) under the component.
/// Throws UnsupportedError for Mallows with more than kMaxExactMallowsItems items.
double exact_pairwise_marginal(const ComponentSpec& spec, Item a, Item b);

/// E[embed(sigma)]: coordinate (a, b) is P(a ahead of b) - 1/2.
Eigen::VectorXd cluster_mean(const ComponentSpec& spec);

/// Draws N labelled rankings; labels are i.i.d. from the mixture weights.
std::vector<LabeledSample> sample_mixture(const MixtureSpec& spec, std::size_t count, Seed seed);

/// Draws counts[i] rankings from component i, then shuffles the rows. Used for
/// experiment-style data where component sizes are drawn up front.
std::vector<LabeledSample> sample_mixture_counts(const MixtureSpec& spec,
                                                 std::span<const std::size_t> counts, Seed seed);

/// Independent Poisson(lambda) component sizes.
std::vector<std::size_t> poisson_sizes(std::size_t components, double lambda, Seed seed);

/// Keeps each coordinate independently with probability p, else MISSING.
/// Throws std::invalid_argument unless 0 < p <= 1.
std::vector<LabeledSample> mask(std::span<const LabeledSample> samples, double p, Seed seed);

// Utility draws used by the experiments and separation examples.
std::vector<double> gaussian_utilities(std::size_t n, Seed seed);
/// Each u_a is +1/2 or -1/2 with equal probability.
std::vector<double> hypercube_utilities(std::size_t n, Seed seed);
/// Ladder rho*(n-1), ..., rho, 0 assigned to items by a uniformly random permutation.
std::vector<double> ladder_utilities(std::size_t n, double rho, Seed seed);

}  // namespace rankmix
