#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "rankmix/error.hpp"
#include "rankmix/generators.hpp"

namespace rankmix {
namespace {

std::vector<Item> order_of(const Permutation& p) { return {p.order().begin(), p.order().end()}; }

TEST(Family, ParsesNames) {
  EXPECT_EQ(parse_family("MNL"), Family::kMnl);
  EXPECT_EQ(parse_family("gaussian"), Family::kGaussian);
  EXPECT_EQ(parse_family("Mallows"), Family::kMallows);
  EXPECT_THROW(parse_family("plackett"), std::invalid_argument);
  EXPECT_EQ(to_string(Family::kMallows), "mallows");
}

TEST(ComponentSpec, Validation) {
  EXPECT_THROW(ComponentSpec::mnl({0.0, 1.0}, 0.0).validate(), std::invalid_argument);
  EXPECT_THROW(ComponentSpec::gaussian({0.0, 1.0}, -1.0).validate(), std::invalid_argument);
  EXPECT_THROW(ComponentSpec::mallows(Permutation::identity(3), 1.0).validate(), std::invalid_argument);
  EXPECT_THROW(ComponentSpec::mallows(Permutation::identity(3), 0.0).validate(), std::invalid_argument);
  EXPECT_NO_THROW(ComponentSpec::mallows(Permutation::identity(3), 0.5).validate());
}

TEST(MixtureSpec, Validation) {
  MixtureSpec spec = MixtureSpec::uniform({ComponentSpec::mnl({0, 1, 2}, 1.0), ComponentSpec::mnl({2, 1, 0}, 1.0)});
  EXPECT_NO_THROW(spec.validate());
  spec.weights = {0.6, 0.3};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  spec.weights = {1.5, -0.5};
  EXPECT_THROW(spec.validate(), std::invalid_argument);
  EXPECT_THROW(MixtureSpec::uniform({ComponentSpec::mnl({0, 1}, 1.0), ComponentSpec::mnl({0, 1, 2}, 1.0)}),
               std::invalid_argument);
}

TEST(SampleComponent, NoiselessGaussianSortsUtilities) {
  const auto spec = ComponentSpec::gaussian({3.0, 2.0, 1.0}, 1e-9);
  for (Seed s = 0; s < 100; ++s) EXPECT_EQ(order_of(sample_component(spec, s)), (std::vector<Item>{0, 1, 2}));
}

TEST(SampleComponent, TiesGoToLowerIndex) {
  const auto spec = ComponentSpec::gaussian({1.0, 1.0, 1.0}, 1e-300);
  EXPECT_EQ(order_of(sample_component(spec, 5)), (std::vector<Item>{0, 1, 2}));
}

TEST(SampleComponent, DeterministicGivenSeed) {
  for (const auto& spec : {ComponentSpec::mnl({0.3, -1.0, 2.0, 0.0}, 1.0),
                           ComponentSpec::gaussian({0.3, -1.0, 2.0, 0.0}, 1.0),
                           ComponentSpec::mallows(Permutation::from_order({3, 1, 0, 2}), 0.6)}) {
    EXPECT_EQ(sample_component(spec, 42), sample_component(spec, 42));
  }
}

TEST(SampleComponent, MnlPairMatchesLogit) {
  const double u0 = 0.4, u1 = -0.3;
  const auto spec = ComponentSpec::mnl({u0, u1}, 1.0);
  Engine rng = make_engine(3, 0, StreamTag::kRanking);
  const int draws = 100000;
  int wins = 0;
  for (int i = 0; i < draws; ++i) wins += sample_component(spec, rng).precedes(0, 1) ? 1 : 0;
  const double expected = std::exp(u0) / (std::exp(u0) + std::exp(u1));
  EXPECT_NEAR(static_cast<double>(wins) / draws, expected, 0.01);
}

double total_variation(const ComponentSpec& spec, int draws, Seed seed) {
  const auto pmf = oracle::mallows_pmf(order_of(*spec.center), spec.noise);
  std::map<std::vector<Item>, double> freq;
  Engine rng = make_engine(seed, 0, StreamTag::kRanking);
  for (int i = 0; i < draws; ++i) freq[order_of(sample_component(spec, rng))] += 1.0 / draws;
  double tv = 0.0;
  for (const auto& [order, prob] : pmf) {
    const auto it = freq.find(order);
    tv += std::abs(prob - (it == freq.end() ? 0.0 : it->second));
  }
  return tv / 2.0;
}

TEST(SampleComponent, MallowsMatchesBruteForcePmf) {
  EXPECT_LE(total_variation(ComponentSpec::mallows(Permutation::from_order({1, 3, 0, 2}), 0.5), 100000, 9), 0.02);
  EXPECT_LE(total_variation(ComponentSpec::mallows(Permutation::from_order({4, 0, 2, 1, 3}), 0.8), 200000, 10),
            0.03);
}

TEST(ExactMarginal, KnownValues) {
  EXPECT_DOUBLE_EQ(exact_pairwise_marginal(ComponentSpec::mnl({0.7, 0.7}, 2.0), 0, 1), 0.5);
  EXPECT_NEAR(exact_pairwise_marginal(ComponentSpec::mnl({1.0, 0.0}, 1.0), 0, 1), std::exp(1.0) / (std::exp(1.0) + 1.0),
              1e-15);
  EXPECT_NEAR(exact_pairwise_marginal(ComponentSpec::mnl({1.0, 0.0}, 1.0), 0, 1), 0.7310585786300049, 1e-12);
  EXPECT_NEAR(exact_pairwise_marginal(ComponentSpec::gaussian({1.0, 0.0}, 1.0), 0, 1), 0.7602499389065233, 1e-12);
  EXPECT_NEAR(exact_pairwise_marginal(ComponentSpec::gaussian({1.0, 0.0}, 1.0), 1, 0), 1.0 - 0.7602499389065233,
              1e-12);
}

TEST(ExactMarginal, MallowsEnumerationAgreesWithPmf) {
  const auto center = Permutation::from_order({2, 0, 3, 1});
  const auto spec = ComponentSpec::mallows(center, 0.4);
  const auto pmf = oracle::mallows_pmf(order_of(center), 0.4);
  for (Item a = 0; a < 4; ++a) {
    for (Item b = 0; b < 4; ++b) {
      if (a == b) continue;
      double expected = 0.0;
      for (const auto& [order, prob] : pmf) {
        if (Permutation::from_order(order).precedes(a, b)) expected += prob;
      }
      EXPECT_NEAR(exact_pairwise_marginal(spec, a, b), expected, 1e-12);
    }
  }
}

TEST(ExactMarginal, LargeMallowsUnsupported) {
  const auto spec = ComponentSpec::mallows(Permutation::identity(kMaxExactMallowsItems + 1), 0.5);
  EXPECT_THROW(exact_pairwise_marginal(spec, 0, 1), UnsupportedError);
  EXPECT_THROW(cluster_mean(spec), UnsupportedError);
}

TEST(ClusterMean, Formulas) {
  EXPECT_TRUE(cluster_mean(ComponentSpec::gaussian({0.5, 0.5, 0.5, 0.5}, 1.0)).isZero(0.0));
  const auto mean = cluster_mean(ComponentSpec::mnl({1.0, 0.0, -1.0}, 1.0));
  auto logit = [](double x) { return 1.0 / (1.0 + std::exp(-x)); };
  EXPECT_NEAR(mean(0), logit(1.0) - 0.5, 1e-15);  // (0, 1)
  EXPECT_NEAR(mean(1), logit(2.0) - 0.5, 1e-15);  // (0, 2)
  EXPECT_NEAR(mean(2), logit(1.0) - 0.5, 1e-15);  // (1, 2)
}

TEST(ClusterMean, MonteCarloAgreesForEveryFamily) {
  for (const auto& spec : {ComponentSpec::mnl({0.3, -1.0, 2.0, 0.0, 0.5}, 1.0),
                           ComponentSpec::gaussian({0.3, -1.0, 2.0, 0.0, 0.5}, 0.8),
                           ComponentSpec::mallows(Permutation::from_order({3, 1, 0, 4, 2}), 0.6)}) {
    const auto exact = cluster_mean(spec);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(exact.size());
    Engine rng = make_engine(31, 0, StreamTag::kRanking);
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) {
      const auto v = embed(sample_component(spec, rng)).to_dense();
      acc += Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    }
    acc /= draws;
    EXPECT_LT((acc - exact).cwiseAbs().maxCoeff(), 0.01) << to_string(spec.family);
  }
}

TEST(Gumbel, MeanIsEulerGamma) {
  Engine rng = make_engine(5, 0, StreamTag::kRanking);
  const double beta = 1.7;
  double sum = 0.0;
  const int draws = 100000;
  for (int i = 0; i < draws; ++i) sum += sample_gumbel(rng, beta);
  const double euler_gamma = 0.5772156649015329;
  EXPECT_NEAR(sum / draws, beta * euler_gamma, 0.02 * beta * euler_gamma);
}

TEST(SampleMixture, SingleComponentLabels) {
  const auto spec = MixtureSpec::uniform({ComponentSpec::gaussian({1, 0, -1}, 1.0)});
  for (const auto& s : sample_mixture(spec, 50, 1)) EXPECT_EQ(s.true_label, 0u);
}

TEST(SampleMixture, LabelFrequencyFollowsWeights) {
  const auto spec =
      MixtureSpec::uniform({ComponentSpec::gaussian({1, 0, -1}, 1.0), ComponentSpec::gaussian({-1, 0, 1}, 1.0)});
  const auto samples = sample_mixture(spec, 100000, 2);
  double zeros = 0;
  for (const auto& s : samples) zeros += s.true_label == 0 ? 1 : 0;
  EXPECT_NEAR(zeros / static_cast<double>(samples.size()), 0.5, 0.01);
}

TEST(SampleMixture, DeterministicAndRowIdsAreIndices) {
  const auto spec =
      MixtureSpec::uniform({ComponentSpec::mnl({1, 0, -1, 2}, 1.0), ComponentSpec::mnl({-1, 0, 1, 2}, 1.0)});
  const auto a = sample_mixture(spec, 200, 9);
  const auto b = sample_mixture(spec, 200, 9);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].observation, b[i].observation);
    EXPECT_EQ(a[i].true_label, b[i].true_label);
    EXPECT_EQ(a[i].row_id, i);
  }
}

TEST(SampleMixture, WithinLabelMeansNearOwnClusterMean) {
  const std::vector<double> u{2.0, 1.0, 0.0, -1.0, -2.0};
  const std::vector<double> v(u.rbegin(), u.rend());
  const auto spec = MixtureSpec::uniform({ComponentSpec::gaussian(u, 0.5), ComponentSpec::gaussian(v, 0.5)});
  const auto samples = sample_mixture(spec, 100, 4);
  const std::vector<Eigen::VectorXd> means{cluster_mean(spec.components[0]), cluster_mean(spec.components[1])};
  for (std::size_t label = 0; label < 2; ++label) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(means[0].size());
    int count = 0;
    for (const auto& s : samples) {
      if (s.true_label != label) continue;
      const auto x = s.observation.to_dense();
      acc += Eigen::Map<const Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(x.size()));
      ++count;
    }
    ASSERT_GT(count, 0);
    acc /= count;
    EXPECT_LT((acc - means[label]).norm(), (acc - means[1 - label]).norm());
  }
}

TEST(SampleMixtureCounts, ExactComponentSizes) {
  const auto spec =
      MixtureSpec::uniform({ComponentSpec::gaussian({1, 0, -1}, 1.0), ComponentSpec::gaussian({-1, 0, 1}, 1.0)});
  const std::vector<std::size_t> counts{7, 3};
  const auto samples = sample_mixture_counts(spec, counts, 5);
  ASSERT_EQ(samples.size(), 10u);
  std::size_t zeros = 0;
  for (const auto& s : samples) zeros += s.true_label == 0 ? 1 : 0;
  EXPECT_EQ(zeros, 7u);
}

TEST(Mask, FullObservationIsIdentity) {
  const auto spec = MixtureSpec::uniform({ComponentSpec::mnl({1, 0, -1, 0.5}, 1.0)});
  const auto samples = sample_mixture(spec, 20, 3);
  const auto masked = mask(samples, 1.0, 8);
  for (std::size_t i = 0; i < samples.size(); ++i) EXPECT_EQ(masked[i].observation, samples[i].observation);
}

TEST(Mask, ObservedFractionConcentrates) {
  const auto spec = MixtureSpec::uniform({ComponentSpec::gaussian(gaussian_utilities(33, 1), 1.0)});
  const auto samples = sample_mixture(spec, 2000, 3);  // N d = 1,056,000
  const auto masked = mask(samples, 0.3, 4);
  double observed = 0, total = 0;
  for (const auto& s : masked) {
    observed += static_cast<double>(s.observation.observed_count());
    total += static_cast<double>(s.observation.dimension());
  }
  EXPECT_NEAR(observed / total, 0.3, 0.002);
}

TEST(Mask, FollowsRowsWhenReordered) {
  const auto spec = MixtureSpec::uniform({ComponentSpec::gaussian({1, 0, -1, 2, 3}, 1.0)});
  const auto samples = sample_mixture(spec, 30, 3);
  std::vector<LabeledSample> reversed(samples.rbegin(), samples.rend());
  const auto a = mask(samples, 0.5, 12);
  const auto b = mask(reversed, 0.5, 12);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].observation, b[a.size() - 1 - i].observation);
}

TEST(Mask, RejectsBadProbability) {
  const auto spec = MixtureSpec::uniform({ComponentSpec::gaussian({1, 0}, 1.0)});
  const auto samples = sample_mixture(spec, 3, 3);
  EXPECT_THROW(mask(samples, 0.0, 1), std::invalid_argument);
  EXPECT_THROW(mask(samples, 1.1, 1), std::invalid_argument);
}

TEST(Utilities, Helpers) {
  const auto h = hypercube_utilities(50, 3);
  for (double x : h) EXPECT_TRUE(x == 0.5 || x == -0.5);
  auto ladder = ladder_utilities(5, 0.5, 2);
  std::sort(ladder.begin(), ladder.end());
  EXPECT_EQ(ladder, (std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0}));
  EXPECT_EQ(gaussian_utilities(10, 4), gaussian_utilities(10, 4));
  EXPECT_NE(gaussian_utilities(10, 4), gaussian_utilities(10, 5));
}

TEST(PoissonSizes, MeanNearLambda) {
  const auto sizes = poisson_sizes(2000, 50.0, 6);
  double sum = 0;
  for (auto s : sizes) sum += static_cast<double>(s);
  EXPECT_NEAR(sum / 2000.0, 50.0, 1.0);
  EXPECT_THROW(poisson_sizes(3, 0.0, 1), std::invalid_argument);
}

}  // namespace
}  // namespace rankmix
