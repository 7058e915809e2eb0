#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankmix/config.hpp"
#include "rankmix/generators.hpp"
#include "rankmix/rng.hpp"

namespace rankmix {

enum class ExperimentId { kExp1, kExp2, kExp3 };

std::string_view to_string(ExperimentId id) noexcept;
/// Accepts "exp1", "exp2", "exp3"; throws std::invalid_argument otherwise.
ExperimentId parse_experiment(std::string_view name);

/// Parameter grid of one experiment sweep.
///
/// exp1: one run per noise level (first n, first p); distance histograms and
///       2-D projections before and after thresholding.
/// exp2: risk for every (n, noise, trial, p); data is drawn once per
///       (n, noise, trial) and masked per p.
/// exp3: empirical tau of single components for every (family, n, noise),
///       averaged over trials.
/// exp1 and exp2 use only the first family.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::kExp2;
  std::vector<Family> families{Family::kGaussian};
  std::vector<std::size_t> items{30};
  std::size_t components = 2;       // k
  double lambda = 500.0;            // Poisson mean of each component size
  std::vector<double> noise{0.3};   // sigma, beta or phi depending on family
  std::vector<double> p_values{1.0};
  std::size_t trials = 1;
  Seed seed = 1;
  std::size_t samples = 1000;       // exp3 draws per estimate
  std::size_t directions = 32;      // exp3 random probe directions
  std::size_t bins = 40;            // exp1 histogram bins
  std::size_t threads = 1;
  std::optional<std::size_t> rank;  // t1 target rank; automatic when unset

  /// Throws std::invalid_argument naming the first out-of-range field.
  void validate() const;
};

/// Desk-scale grids by default; `paper_scale` selects the full grids.
ExperimentConfig default_config(ExperimentId id, bool paper_scale = false);

/// default_config overridden by keys of `file`: seed, family (comma list),
/// n (list), k, lambda, noise (list; aliases sigma, beta, phi), p (list),
/// trials, samples, directions, bins, threads, rank. Unknown keys throw
/// ParseError.
ExperimentConfig load_config(ExperimentId id, const KeyValueFile& file, bool paper_scale = false);

struct Exp1Histogram {
  double sigma = 0.0;
  std::string stage;      // "before" or "after"
  std::string pair_type;  // "intra" or "inter"
  std::vector<double> edges;  // bins + 1
  std::vector<std::size_t> counts;
};

struct Exp1Point {
  double sigma = 0.0;
  std::size_t row = 0;
  std::size_t true_label = 0;
  std::size_t pred_label = 0;
  double pc1 = 0.0;
  double pc2 = 0.0;
};

struct Exp1Summary {
  double sigma = 0.0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t num_rows = 0;
  double p = 1.0;
  double risk = 0.0;
  std::size_t k_hat = 0;
  std::size_t kept_rank = 0;
  double t1 = 0.0;
  double t2 = 0.0;
  // min inter-cluster distance minus max intra-cluster distance
  double gap_before = 0.0;
  double gap_after = 0.0;
};

struct Exp1Result {
  std::vector<Exp1Histogram> histograms;
  std::vector<Exp1Point> points;
  std::vector<Exp1Summary> summaries;
};

struct Exp2Row {
  std::size_t n = 0;
  std::size_t k = 0;
  double noise = 0.0;
  double p = 1.0;
  std::size_t trial = 0;
  double risk = 0.0;
  std::size_t k_hat = 0;
  double p_hat = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;
};

struct Exp3Row {
  Family family = Family::kGaussian;
  std::size_t n = 0;
  double noise = 0.0;
  std::size_t trials = 0;
  double tau_mean = 0.0;
  double tau_sd = 0.0;
};

struct Exp3Slope {
  Family family = Family::kGaussian;
  double noise = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
};

Exp1Result run_exp1(const ExperimentConfig& config);
/// Rows in grid order: n, noise, trial, p.
std::vector<Exp2Row> run_exp2(const ExperimentConfig& config);
/// Rows in grid order: family, n, noise.
std::vector<Exp3Row> run_exp3(const ExperimentConfig& config);
/// Least-squares fit of ln(tau_mean) against ln(n) per (family, noise).
std::vector<Exp3Slope> fit_exp3_slopes(const std::vector<Exp3Row>& rows);

/// Runs the configured experiment and writes its CSV files into `out_dir`
/// (created if needed). Returns the written paths. Each file is written to a
/// temporary name and renamed into place.
std::vector<std::string> run_experiment(const ExperimentConfig& config, const std::string& out_dir);

}  // namespace rankmix
