#include "rankmix/matrix_estimation.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rankmix/error.hpp"

namespace rankmix {

ObservationMatrix::ObservationMatrix(Eigen::MatrixXd values, MaskMatrix mask)
    : values_(std::move(values)), mask_(std::move(mask)) {
  if (values_.rows() != mask_.rows() || values_.cols() != mask_.cols()) {
    throw std::invalid_argument("observation values and mask differ in shape");
  }
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw std::invalid_argument("observation matrix must be non-empty");
  }
  for (Eigen::Index j = 0; j < values_.cols(); ++j) {
    for (Eigen::Index i = 0; i < values_.rows(); ++i) {
      const double v = values_(i, j);
      const bool ok = mask_(i, j) ? (v == 0.5 || v == -0.5) : (v == 0.0);
      if (!ok) {
        throw std::invalid_argument("cell (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") violates the +-1/2 / 0-fill invariant");
      }
    }
  }
}

ObservationMatrix ObservationMatrix::from_observations(std::span<const EmbeddedObservation> rows) {
  if (rows.empty()) throw std::invalid_argument("no observations to stack");
  const auto d = static_cast<Eigen::Index>(rows.front().dimension());
  Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()), d);
  MaskMatrix mask(values.rows(), d);
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (static_cast<Eigen::Index>(row.dimension()) != d) {
      throw DimensionError("observation " + std::to_string(i) + " has dimension " +
                           std::to_string(row.dimension()) + ", expected " + std::to_string(d));
    }
    for (Eigen::Index j = 0; j < d; ++j) {
      const auto idx = static_cast<std::size_t>(j);
      values(i, j) = row.value(idx, 0.0);
      mask(i, j) = row.is_missing(idx) ? 0 : 1;
    }
  }
  return ObservationMatrix(std::move(values), std::move(mask));
}

ObservationMatrix ObservationMatrix::from_samples(std::span<const LabeledSample> samples) {
  std::vector<EmbeddedObservation> rows;
  rows.reserve(samples.size());
  for (const auto& s : samples) rows.push_back(s.observation);
  return from_observations(rows);
}

std::size_t ObservationMatrix::observed_count() const noexcept {
  return static_cast<std::size_t>(mask_.cast<std::size_t>().sum());
}

SvdResult compute_svd(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw NumericalError("SVD input contains non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    throw NumericalError("SVD failed on " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " matrix (Frobenius norm " +
                         std::to_string(a.norm()) + ")");
  }
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& a) {
  if (!a.allFinite()) throw NumericalError("SVD input contains non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  if (svd.info() != Eigen::Success) throw NumericalError("singular value computation failed");
  return svd.singularValues();
}

double spectral_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  return singular_values(a)(0);
}

std::size_t numerical_rank(const Eigen::VectorXd& sv, double rel_tol) {
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  const double cut = rel_tol * sv(0);
  return static_cast<std::size_t>((sv.array() > cut).count());
}

double estimate_p_hat(const ObservationMatrix& obs) {
  const double cells = static_cast<double>(obs.rows()) * static_cast<double>(obs.cols());
  return std::max(static_cast<double>(obs.observed_count()) / cells, 1.0 / cells);
}

namespace {

Eigen::Index kept_components(const Eigen::VectorXd& sv, double threshold) {
  // Singular values are sorted, so the kept set is a prefix.
  Eigen::Index k = 0;
  while (k < sv.size() && sv(k) > threshold) ++k;
  return k;
}

}  // namespace

ThresholdedMatrix hard_threshold(const SvdResult& svd, double threshold) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");
  const Eigen::Index k = kept_components(svd.singular_values, threshold);
  ThresholdedMatrix out;
  out.kept_rank = static_cast<std::size_t>(k);
  out.matrix = svd.u.leftCols(k) * svd.singular_values.head(k).asDiagonal() *
               svd.v.leftCols(k).transpose();
  return out;
}

ThresholdedMatrix hard_threshold(const Eigen::MatrixXd& a, double threshold) {
  return hard_threshold(compute_svd(a), threshold);
}

RowThresholdOperator::RowThresholdOperator(const SvdResult& svd, double threshold) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("threshold must be nonnegative");
  basis_ = svd.v.leftCols(kept_components(svd.singular_values, threshold));
}

Eigen::VectorXd RowThresholdOperator::apply(const Eigen::VectorXd& w) const {
  if (w.size() != basis_.rows()) throw DimensionError("row operator: dimension mismatch");
  return basis_ * (basis_.transpose() * w);
}

HsvtEstimate hsvt(const ObservationMatrix& obs, const SvdResult& svd, double t1) {
  if (!(t1 >= 0.0)) throw std::invalid_argument("t1 must be nonnegative");
  if (svd.u.rows() != obs.rows() || svd.v.rows() != obs.cols()) {
    throw DimensionError("SVD does not match the observation matrix");
  }
  HsvtEstimate est;
  est.p_hat = estimate_p_hat(obs);
  est.threshold_used = t1;
  est.singular_values = svd.singular_values;
  const Eigen::Index k = kept_components(svd.singular_values, t1);
  est.kept_rank = static_cast<std::size_t>(k);
  est.basis = svd.v.leftCols(k);
  est.scores = svd.u.leftCols(k) * (svd.singular_values.head(k) / est.p_hat).asDiagonal();
  est.m_hat = est.scores * est.basis.transpose();
  return est;
}

HsvtEstimate hsvt(const ObservationMatrix& obs, double t1) {
  return hsvt(obs, compute_svd(obs.values()), t1);
}

ThresholdChoice select_threshold(const Eigen::VectorXd& sv, std::optional<std::size_t> target_rank) {
  const auto len = static_cast<std::size_t>(sv.size());
  if (len < 2) throw std::invalid_argument("threshold selection needs at least two singular values");
  auto at = [&](std::size_t j) {  // 1-based, s_{len+1} = 0
    return j <= len ? sv(static_cast<Eigen::Index>(j - 1)) : 0.0;
  };
  std::size_t rank = 0;
  if (target_rank) {
    rank = *target_rank;
    if (rank < 1 || rank > len) {
      throw std::invalid_argument("target rank " + std::to_string(rank) + " outside [1, " +
                                  std::to_string(len) + "]");
    }
  } else {
    const auto root = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(len))));
    const std::size_t j_max = std::min(root, len - 1);
    double best = -1.0;
    for (std::size_t j = 1; j <= j_max; ++j) {
      const double next = at(j + 1);
      const double ratio = next > 0.0 ? at(j) / next
                                      : (at(j) > 0.0 ? std::numeric_limits<double>::infinity() : 1.0);
      if (ratio > best) {
        best = ratio;
        rank = j;
      }
    }
  }
  return {0.5 * (at(rank) + at(rank + 1)), rank};
}

ThresholdChoice select_threshold(const SvdResult& svd, std::optional<std::size_t> target_rank) {
  return select_threshold(svd.singular_values, target_rank);
}

double k_of_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("K(p) needs p in [0, 1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  if (p == 0.5) return 0.25;
  // ln(p / (1 - p)) = 2 atanh(2p - 1); atanh stays accurate close to p = 1/2.
  const double x = 2.0 * p - 1.0;
  return x / (4.0 * std::atanh(x));
}

double delta_bound(double num_rows, double num_items, double p, double tau_star,
                   const ConcentrationConstants& constants) {
  if (!(num_rows > 0.0 && num_items > 0.0)) throw std::invalid_argument("N and n must be positive");
  if (!(tau_star >= 0.0)) throw std::invalid_argument("tau* must be nonnegative");
  const double signal = (std::sqrt(p) + p * tau_star) * std::sqrt(num_rows);
  const double spread = (tau_star + k_of_p(p)) *
                        (num_items + std::sqrt(num_items) * std::pow(num_rows, 0.25));
  return constants.big_c * (signal + spread);
}

double noise_norm_bound(double num_rows, double dim, double p, double tau_star,
                        const ConcentrationConstants& constants) {
  if (!(num_rows >= 1.0 && dim >= 1.0)) throw std::invalid_argument("N and d must be at least 1");
  const double log_n = std::log(num_rows);
  const double first = std::sqrt((1.0 - p) / 4.0 + p * tau_star * tau_star) * std::sqrt(num_rows * p);
  const double bernstein = std::max(
      std::sqrt(constants.c3) * (std::pow(num_rows * dim, 0.25) + std::pow(2.0 * num_rows * log_n, 0.25)),
      constants.c3 * (std::sqrt(dim) + std::sqrt(2.0 * log_n)));
  return first + constants.c1 * (tau_star + k_of_p(p)) * bernstein;
}

Eigen::MatrixXd mean_matrix(std::span<const LabeledSample> samples,
                            std::span<const Eigen::VectorXd> means) {
  if (samples.empty() || means.empty()) throw std::invalid_argument("mean_matrix: empty input");
  const Eigen::Index d = means.front().size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(samples.size()), d);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    const std::size_t label = samples[static_cast<std::size_t>(i)].true_label;
    if (label >= means.size()) throw std::invalid_argument("sample label has no mean vector");
    if (means[label].size() != d) throw DimensionError("mean vectors differ in dimension");
    m.row(i) = means[label].transpose();
  }
  return m;
}

SpectralGapReport spectral_gap_check(const ObservationMatrix& obs, const Eigen::MatrixXd& mean,
                                     double p, double t1, double tau_star, std::size_t num_items,
                                     const ConcentrationConstants& constants) {
  if (mean.rows() != obs.rows() || mean.cols() != obs.cols()) {
    throw DimensionError("mean matrix shape differs from the observation matrix");
  }
  SpectralGapReport report;
  const double num_rows = static_cast<double>(obs.rows());
  report.threshold = t1;
  report.noise_norm = spectral_norm(obs.values() - p * mean);
  report.delta = delta_bound(num_rows, static_cast<double>(num_items), p, tau_star, constants);
  report.noise_bound = noise_norm_bound(num_rows, static_cast<double>(obs.cols()), p, tau_star, constants);

  const Eigen::VectorXd sv = singular_values(mean);
  report.rank_m = numerical_rank(sv);
  report.sigma_r_m = report.rank_m > 0 ? sv(static_cast<Eigen::Index>(report.rank_m - 1)) : 0.0;
  const double signal = p * report.sigma_r_m;

  report.noise_within_delta = report.noise_norm <= report.delta;
  report.p_condition = report.sigma_r_m > 0.0 && p > 4.0 * report.delta / report.sigma_r_m;
  report.threshold_proper = report.delta < t1 && t1 < signal - report.delta;
  report.rank_hypothesis = report.noise_norm < t1 && t1 < signal - report.noise_norm;
  if (report.rank_hypothesis) report.predicted_rank = report.rank_m;
  return report;
}

}  // namespace rankmix
