#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rankmix/generators.hpp"
#include "rankmix/rankings.hpp"

namespace rankmix {

using MaskMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// N stacked embedded observations with MISSING entries filled by 0.
///
/// Invariant: observed cells hold exactly +-1/2 and masked-out cells hold 0.
class ObservationMatrix {
 public:
  /// Validates the invariant; throws std::invalid_argument on violation.
  ObservationMatrix(Eigen::MatrixXd values, MaskMatrix mask);

  static ObservationMatrix from_observations(std::span<const EmbeddedObservation> rows);
  static ObservationMatrix from_samples(std::span<const LabeledSample> samples);

  Eigen::Index rows() const noexcept { return values_.rows(); }
  Eigen::Index cols() const noexcept { return values_.cols(); }
  const Eigen::MatrixXd& values() const noexcept { return values_; }
  const MaskMatrix& mask() const noexcept { return mask_; }
  bool observed(Eigen::Index i, Eigen::Index j) const { return mask_(i, j) != 0; }
  std::size_t observed_count() const noexcept;

 private:
  Eigen::MatrixXd values_;
  MaskMatrix mask_;
};

/// Thin SVD: A = U diag(s) V^T with s nonincreasing.
struct SvdResult {
  Eigen::VectorXd singular_values;
  Eigen::MatrixXd u;
  Eigen::MatrixXd v;

  std::size_t size() const noexcept { return static_cast<std::size_t>(singular_values.size()); }
};

/// Deterministic thin SVD (divide-and-conquer bidiagonalisation).
/// Throws NumericalError for non-finite input or a failed decomposition.
SvdResult compute_svd(const Eigen::MatrixXd& a);
Eigen::VectorXd singular_values(const Eigen::MatrixXd& a);
double spectral_norm(const Eigen::MatrixXd& a);
/// Count of singular values above rel_tol * s_1.
std::size_t numerical_rank(const Eigen::VectorXd& singular_values, double rel_tol = 1e-8);

/// Observed fraction of entries, floored at 1/(N d).
double estimate_p_hat(const ObservationMatrix& obs);

struct ThresholdedMatrix {
  Eigen::MatrixXd matrix;
  std::size_t kept_rank = 0;
};

/// sum_j s_j 1{s_j > t} u_j v_j^T (strict inequality).
ThresholdedMatrix hard_threshold(const SvdResult& svd, double threshold);
ThresholdedMatrix hard_threshold(const Eigen::MatrixXd& a, double threshold);

/// Row-space projector induced by hard thresholding A at t: w -> w V_t V_t^T,
/// where V_t holds the right singular vectors whose singular value exceeds t.
/// Applied to row i of A it reproduces row i of the thresholded matrix.
class RowThresholdOperator {
 public:
  RowThresholdOperator(const SvdResult& svd, double threshold);

  std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  Eigen::VectorXd apply(const Eigen::VectorXd& w) const;

 private:
  Eigen::MatrixXd basis_;
};

/// Denoised, rescaled estimate of the mean matrix.
struct HsvtEstimate {
  Eigen::MatrixXd m_hat;
  std::size_t kept_rank = 0;
  double threshold_used = 0.0;
  double p_hat = 1.0;
  Eigen::VectorXd singular_values;  // of the filled observation matrix
  // m_hat == scores * basis^T. Row distances of m_hat equal row distances of
  // scores because basis has orthonormal columns.
  Eigen::MatrixXd scores;  // N x kept_rank
  Eigen::MatrixXd basis;   // d x kept_rank
};

/// m_hat = (1 / p_hat) * sum_{s_j(Y) > t1} s_j u_j v_j^T.
HsvtEstimate hsvt(const ObservationMatrix& obs, double t1);
HsvtEstimate hsvt(const ObservationMatrix& obs, const SvdResult& svd, double t1);

struct ThresholdChoice {
  double threshold = 0.0;
  std::size_t rank = 0;
};

/// Midpoint threshold keeping exactly `target_rank` components (s_{len+1} is
/// taken as 0). Without a target, the rank is the argmax of s_j / s_{j+1}
/// over 1 <= j <= min(ceil(sqrt(len)), len - 1).
/// Throws std::invalid_argument for fewer than two singular values or a
/// target rank outside [1, len].
ThresholdChoice select_threshold(const Eigen::VectorXd& singular_values,
                                 std::optional<std::size_t> target_rank = std::nullopt);
ThresholdChoice select_threshold(const SvdResult& svd,
                                 std::optional<std::size_t> target_rank = std::nullopt);

// -- Concentration diagnostics ---------------------------------------------

/// Sub-Gaussian (phi_2) norm of a centred Bernoulli(p) variable:
/// 0 at p in {0, 1}, 1/4 at p = 1/2, (2p - 1) / (2 ln(p / (1 - p))) otherwise.
double k_of_p(double p);

/// Unspecified absolute constants of the noise bounds. Diagnostics only; the
/// defaults of 1 carry no calibration.
struct ConcentrationConstants {
  double big_c = 1.0;  // C in the Delta bound
  double c1 = 1.0;     // psi_2 / phi_2 norm equivalence
  double c3 = 1.0;     // matrix Bernstein constant
};

/// Delta = C { (sqrt(p) + p tau) sqrt(N) + (tau + K(p)) (n + sqrt(n) N^{1/4}) }.
double delta_bound(double num_rows, double num_items, double p, double tau_star,
                   const ConcentrationConstants& constants = {});

/// High-probability bound on ||Y - pM||_2:
/// sqrt((1-p)/4 + p tau^2) sqrt(N p)
///   + c1 (tau + K(p)) max{ sqrt(c3) [(N d)^{1/4} + (2 N ln N)^{1/4}], c3 (sqrt(d) + sqrt(2 ln N)) }.
double noise_norm_bound(double num_rows, double dim, double p, double tau_star,
                        const ConcentrationConstants& constants = {});

/// Rows of the ground-truth mean matrix M: row l is means[label(l)].
Eigen::MatrixXd mean_matrix(std::span<const LabeledSample> samples,
                            std::span<const Eigen::VectorXd> means);

struct SpectralGapReport {
  double noise_norm = 0.0;        // ||Y - pM||_2
  double delta = 0.0;             // Delta bound
  double noise_bound = 0.0;       // noise_norm_bound
  std::size_t rank_m = 0;         // numerical rank of M
  double sigma_r_m = 0.0;         // s_r(M)
  double threshold = 0.0;         // t1 under test
  bool noise_within_delta = false;       // ||Y - pM||_2 <= Delta
  bool p_condition = false;              // p > 4 Delta / s_r(M)
  bool threshold_proper = false;         // Delta < t1 < s_r(pM) - Delta
  bool rank_hypothesis = false;          // ||Y-pM|| < t1 < s_r(pM) - ||Y-pM||
  std::optional<std::size_t> predicted_rank;  // rank_m when rank_hypothesis holds
};

/// Evaluates the noise and threshold conditions against a known mean matrix.
/// Never throws on failed conditions; they are reported as booleans.
SpectralGapReport spectral_gap_check(const ObservationMatrix& obs, const Eigen::MatrixXd& mean,
                                     double p, double t1, double tau_star, std::size_t num_items,
                                     const ConcentrationConstants& constants = {});

}  // namespace rankmix
