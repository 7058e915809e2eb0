#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rankmix/generators.hpp"
#include "rankmix/rng.hpp"

namespace rankmix {

struct LabelMatch {
  std::size_t predicted = 0;
  std::size_t truth = 0;
  friend bool operator==(const LabelMatch&, const LabelMatch&) = default;
};

/// Best injective matching between predicted and true label sets and the
/// fraction of rows it leaves mislabelled.
struct Misclassification {
  double risk = 0.0;
  std::size_t errors = 0;
  std::vector<LabelMatch> matching;  // sorted by predicted label
};

/// Minimum misclassification rate over injective label matchings. Uses
/// exhaustive search when both label sets have at most kExhaustiveLabelLimit
/// labels and the assignment solver otherwise.
/// Throws DimensionError on length mismatch, std::invalid_argument when empty.
Misclassification misclassification_rate(std::span<const std::size_t> predicted,
                                         std::span<const std::size_t> truth);

inline constexpr std::size_t kExhaustiveLabelLimit = 6;

/// Enumerates every injective matching; ties go to the first matching in
/// lexicographic enumeration order.
Misclassification misclassification_rate_exhaustive(std::span<const std::size_t> predicted,
                                                    std::span<const std::size_t> truth);
/// Hungarian algorithm on the agreement-count matrix.
Misclassification misclassification_rate_assignment(std::span<const std::size_t> predicted,
                                                    std::span<const std::size_t> truth);

/// "i:j,..." for a matching.
std::string format_matching(std::span<const LabelMatch> matching);

/// Minimum pairwise Euclidean distance between cluster means.
double separation_gamma(std::span<const Eigen::VectorXd> means);

// Lower bounds on the separation for randomly permuted utilities. log is the
// natural logarithm; either bound may be negative.

/// (sqrt(n(n-1))/2) (1 - e^{-rho/beta}) / (1 + e^{-rho/beta}) - 4 sqrt(n ln n)
double gamma_lower_bound_mnl(std::size_t n, double rho, double beta);
/// (sqrt(n(n-1))/sqrt(2)) (Phi(1/(sigma sqrt 2)) - 1/2) - 4 sqrt(n ln n)
double gamma_lower_bound_gaussian(std::size_t n, double sigma);

/// Empirical Orlicz psi_2 norm: smallest t with mean(exp(x_j^2 / t^2)) <= 2,
/// bisected on (0, 10 max|x_j|] to relative tolerance `rel_tol`. 0 when all
/// samples are 0.
double empirical_psi2(std::span<const double> samples, double rel_tol = 1e-6);

struct TauOptions {
  std::size_t directions = 32;  // random unit directions
  // Also probe the n item-score directions (normalised +-1 vectors over the
  // pairs containing one item). Random directions alone see only the average
  // coordinate variance, while the worst case grows along these directions.
  bool item_directions = true;
  double rel_tol = 1e-6;
};

/// Empirical sub-Gaussian norm of a component's centred embedding: the max
/// over probe directions u of empirical_psi2(<u, X_j - mean(X)>).
/// Requires num_samples >= 100 and at least one direction.
double empirical_tau(const ComponentSpec& spec, std::size_t num_samples, Seed seed,
                     const TauOptions& options = {});
double empirical_tau(const ComponentSpec& spec, std::size_t num_samples, std::size_t num_directions,
                     Seed seed);

/// Numeric form of the sufficient condition p >= C tau sqrt(r) ln(n) / Gamma.
struct CorollaryReport {
  double required_p = 0.0;           // C tau sqrt(r) ln n / Gamma
  bool satisfied = false;            // p >= required_p
  bool satisfiable = false;          // required_p <= 1
  double expected_comparisons = 0.0; // C(n,2) N p
  double sufficient_comparisons = 0.0;  // C(n,2) N required_p
};

CorollaryReport corollary_condition_check(std::size_t n, double num_rows, double p, double rank,
                                          double gamma, double tau_star, double constant = 1.0);

/// Risk plus separation diagnostics for one clustering run.
struct EvaluationReport {
  double risk = 0.0;
  std::vector<LabelMatch> matching;
  std::optional<double> gamma;
  std::optional<double> gamma_bound;
  std::optional<double> tau_hat;
};

}  // namespace rankmix
