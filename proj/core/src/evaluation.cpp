#include "rankmix/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "rankmix/error.hpp"

namespace rankmix {

namespace {

// Agreement counts between the distinct predicted and true labels.
struct Contingency {
  std::vector<std::size_t> predicted_labels;
  std::vector<std::size_t> truth_labels;
  std::vector<std::vector<std::size_t>> agree;  // [predicted][truth]
  std::size_t total = 0;
};

std::vector<std::size_t> distinct(std::span<const std::size_t> labels) {
  std::vector<std::size_t> out(labels.begin(), labels.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t index_in(const std::vector<std::size_t>& sorted, std::size_t label) {
  return static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), label) - sorted.begin());
}

Contingency tabulate(std::span<const std::size_t> predicted, std::span<const std::size_t> truth) {
  if (predicted.size() != truth.size()) {
    throw DimensionError("label vectors differ in length (" + std::to_string(predicted.size()) +
                         " vs " + std::to_string(truth.size()) + ")");
  }
  if (predicted.empty()) throw std::invalid_argument("cannot score an empty labelling");
  Contingency c;
  c.predicted_labels = distinct(predicted);
  c.truth_labels = distinct(truth);
  c.agree.assign(c.predicted_labels.size(), std::vector<std::size_t>(c.truth_labels.size(), 0));
  for (std::size_t l = 0; l < predicted.size(); ++l) {
    ++c.agree[index_in(c.predicted_labels, predicted[l])][index_in(c.truth_labels, truth[l])];
  }
  c.total = predicted.size();
  return c;
}

// pairs[i] = truth index matched to predicted index i, or npos.
Misclassification finish(const Contingency& c, const std::vector<std::size_t>& truth_of_pred) {
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  Misclassification out;
  std::size_t agree = 0;
  for (std::size_t i = 0; i < truth_of_pred.size(); ++i) {
    if (truth_of_pred[i] == npos) continue;
    agree += c.agree[i][truth_of_pred[i]];
    out.matching.push_back({c.predicted_labels[i], c.truth_labels[truth_of_pred[i]]});
  }
  out.errors = c.total - agree;
  out.risk = static_cast<double>(out.errors) / static_cast<double>(c.total);
  return out;
}

}  // namespace

Misclassification misclassification_rate_exhaustive(std::span<const std::size_t> predicted,
                                                    std::span<const std::size_t> truth) {
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  const Contingency c = tabulate(predicted, truth);
  const std::size_t kp = c.predicted_labels.size();
  const std::size_t kt = c.truth_labels.size();
  const std::size_t larger = std::max(kp, kt);
  if (larger > 10) throw std::invalid_argument("exhaustive matching limited to 10 labels");

  // Permute the larger side; its first min(kp, kt) entries pair with the smaller side.
  std::vector<std::size_t> perm(larger);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::vector<std::size_t> best_map;
  std::size_t best_agree = 0;
  bool first = true;
  do {
    std::vector<std::size_t> map(kp, npos);
    std::size_t agree = 0;
    if (kp <= kt) {
      for (std::size_t i = 0; i < kp; ++i) {
        map[i] = perm[i];
        agree += c.agree[i][perm[i]];
      }
    } else {
      for (std::size_t j = 0; j < kt; ++j) {
        map[perm[j]] = j;
        agree += c.agree[perm[j]][j];
      }
    }
    if (first || agree > best_agree) {
      best_agree = agree;
      best_map = std::move(map);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return finish(c, best_map);
}

Misclassification misclassification_rate_assignment(std::span<const std::size_t> predicted,
                                                    std::span<const std::size_t> truth) {
  constexpr auto npos = std::numeric_limits<std::size_t>::max();
  const Contingency c = tabulate(predicted, truth);
  const std::size_t kp = c.predicted_labels.size();
  const std::size_t kt = c.truth_labels.size();
  const std::size_t size = std::max(kp, kt);

  // Hungarian method (potentials, O(size^3)) minimising total - agreement;
  // padded rows/columns have zero agreement.
  using Cost = long long;
  const auto total = static_cast<Cost>(c.total);
  auto cost = [&](std::size_t i, std::size_t j) -> Cost {
    if (i >= kp || j >= kt) return total;
    return total - static_cast<Cost>(c.agree[i][j]);
  };
  const Cost inf = std::numeric_limits<Cost>::max() / 4;
  std::vector<Cost> row_pot(size + 1, 0), col_pot(size + 1, 0);
  std::vector<std::size_t> col_match(size + 1, 0), way(size + 1, 0);
  for (std::size_t i = 1; i <= size; ++i) {
    col_match[0] = i;
    std::size_t j0 = 0;
    std::vector<Cost> min_slack(size + 1, inf);
    std::vector<char> used(size + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = col_match[j0];
      Cost delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= size; ++j) {
        if (used[j]) continue;
        const Cost slack = cost(i0 - 1, j - 1) - row_pot[i0] - col_pot[j];
        if (slack < min_slack[j]) {
          min_slack[j] = slack;
          way[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= size; ++j) {
        if (used[j]) {
          row_pot[col_match[j]] += delta;
          col_pot[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (col_match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      col_match[j0] = col_match[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> map(kp, npos);
  for (std::size_t j = 1; j <= size; ++j) {
    const std::size_t i = col_match[j] - 1;
    if (i < kp && j - 1 < kt) map[i] = j - 1;
  }
  return finish(c, map);
}

Misclassification misclassification_rate(std::span<const std::size_t> predicted,
                                         std::span<const std::size_t> truth) {
  const std::size_t kp = distinct(predicted).size();
  const std::size_t kt = distinct(truth).size();
  if (std::max(kp, kt) <= kExhaustiveLabelLimit) return misclassification_rate_exhaustive(predicted, truth);
  return misclassification_rate_assignment(predicted, truth);
}

std::string format_matching(std::span<const LabelMatch> matching) {
  std::string out;
  for (std::size_t i = 0; i < matching.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(matching[i].predicted) + ':' + std::to_string(matching[i].truth);
  }
  return out;
}

double separation_gamma(std::span<const Eigen::VectorXd> means) {
  if (means.size() < 2) throw std::invalid_argument("separation needs at least two means");
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::size_t j = i + 1; j < means.size(); ++j) {
      if (means[i].size() != means[j].size()) throw DimensionError("mean vectors differ in dimension");
      best = std::min(best, (means[i] - means[j]).norm());
    }
  }
  return best;
}

namespace {

double slack_term(std::size_t n) {
  const double nd = static_cast<double>(n);
  return 4.0 * std::sqrt(nd * std::log(nd));
}

void require_items(std::size_t n) {
  if (n < 2) throw std::invalid_argument("separation bounds need n >= 2");
}

}  // namespace

double gamma_lower_bound_mnl(std::size_t n, double rho, double beta) {
  require_items(n);
  if (!(beta > 0.0) || !(rho >= 0.0)) throw std::invalid_argument("need rho >= 0 and beta > 0");
  const double nd = static_cast<double>(n);
  // (1 - e^{-x}) / (1 + e^{-x}) = tanh(x / 2)
  return std::sqrt(nd * (nd - 1.0)) / 2.0 * std::tanh(rho / (2.0 * beta)) - slack_term(n);
}

double gamma_lower_bound_gaussian(std::size_t n, double sigma) {
  require_items(n);
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  const double nd = static_cast<double>(n);
  // Phi(x) - 1/2 = erf(x / sqrt 2) / 2 with x = 1 / (sigma sqrt 2)
  const double lift = 0.5 * std::erf(1.0 / (2.0 * sigma));
  return std::sqrt(nd * (nd - 1.0)) / std::sqrt(2.0) * lift - slack_term(n);
}

double empirical_psi2(std::span<const double> samples, double rel_tol) {
  if (samples.empty()) throw std::invalid_argument("psi_2 estimate needs samples");
  double max_abs = 0.0;
  for (double x : samples) max_abs = std::max(max_abs, std::abs(x));
  if (max_abs == 0.0) return 0.0;
  const double inv_count = 1.0 / static_cast<double>(samples.size());
  auto moment_ok = [&](double t) {
    const double inv_t2 = 1.0 / (t * t);
    double acc = 0.0;
    for (double x : samples) {
      const double e = x * x * inv_t2;
      if (e > 700.0) return false;
      acc += std::exp(e);
    }
    return acc * inv_count <= 2.0;
  };
  double lo = 0.0, hi = 10.0 * max_abs;
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    if (moment_ok(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double empirical_tau(const ComponentSpec& spec, std::size_t num_samples, Seed seed,
                     const TauOptions& options) {
  spec.validate();
  if (num_samples < 100) throw std::invalid_argument("empirical_tau needs at least 100 samples");
  if (options.directions < 1) throw std::invalid_argument("empirical_tau needs at least one direction");
  const std::size_t n = spec.items();
  const auto d = static_cast<Eigen::Index>(pair_count(n));
  const auto m = static_cast<Eigen::Index>(num_samples);
  const auto num_random = static_cast<Eigen::Index>(options.directions);
  const Eigen::Index num_items = options.item_directions && n >= 2 ? static_cast<Eigen::Index>(n) : 0;

  Engine dir_rng = make_engine(seed, 0, StreamTag::kDirections);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd random_dirs(num_random, d);
  for (Eigen::Index r = 0; r < num_random; ++r) {
    for (Eigen::Index j = 0; j < d; ++j) random_dirs(r, j) = gauss(dir_rng);
    const double norm = random_dirs.row(r).norm();
    if (norm > 0.0) random_dirs.row(r) /= norm;
  }

  // Projections of every sample on every probe direction; centring the
  // projections is the same as projecting centred samples.
  Eigen::MatrixXd proj(m, num_random + num_items);
  Engine rng = make_engine(seed, 0, StreamTag::kRanking);
  Eigen::VectorXd x(d);
  const double item_scale = n >= 2 ? 1.0 / (2.0 * std::sqrt(static_cast<double>(n - 1))) : 0.0;
  for (Eigen::Index s = 0; s < m; ++s) {
    const Permutation perm = sample_component(spec, rng);
    Eigen::Index idx = 0;
    for (Item a = 0; a < n; ++a) {
      for (Item b = a + 1; b < n; ++b) x(idx++) = perm.precedes(a, b) ? 0.5 : -0.5;
    }
    proj.row(s).head(num_random) = (random_dirs * x).transpose();
    // Item-score direction of item a: +1 on pairs a wins, -1 on pairs it loses,
    // scaled to unit norm; the projection is (wins - losses) / (2 sqrt(n-1)).
    for (Eigen::Index a = 0; a < num_items; ++a) {
      const double rank = static_cast<double>(perm.rank_of(static_cast<Item>(a)));
      const double wins = static_cast<double>(n - 1) - rank;
      proj(s, num_random + a) = (2.0 * wins - static_cast<double>(n - 1)) * item_scale;
    }
  }

  double tau = 0.0;
  std::vector<double> column(static_cast<std::size_t>(m));
  for (Eigen::Index c = 0; c < proj.cols(); ++c) {
    const double mean = proj.col(c).mean();
    for (Eigen::Index s = 0; s < m; ++s) column[static_cast<std::size_t>(s)] = proj(s, c) - mean;
    tau = std::max(tau, empirical_psi2(column, options.rel_tol));
  }
  return tau;
}

double empirical_tau(const ComponentSpec& spec, std::size_t num_samples, std::size_t num_directions,
                     Seed seed) {
  TauOptions options;
  options.directions = num_directions;
  return empirical_tau(spec, num_samples, seed, options);
}

CorollaryReport corollary_condition_check(std::size_t n, double num_rows, double p, double rank,
                                          double gamma, double tau_star, double constant) {
  if (n < 2 || !(num_rows > 0.0) || !(p > 0.0) || !(rank > 0.0) || !(gamma > 0.0) ||
      !(tau_star > 0.0) || !(constant > 0.0)) {
    throw std::invalid_argument("condition check needs positive arguments and n >= 2");
  }
  const double nd = static_cast<double>(n);
  CorollaryReport r;
  r.required_p = std::isinf(gamma) ? 0.0 : constant * tau_star * std::sqrt(rank) * std::log(nd) / gamma;
  r.satisfied = p >= r.required_p;
  r.satisfiable = r.required_p <= 1.0;
  const double pairs = nd * (nd - 1.0) / 2.0;
  r.expected_comparisons = pairs * num_rows * p;
  r.sufficient_comparisons = pairs * num_rows * r.required_p;
  return r;
}

}  // namespace rankmix
