#include "rankmix/pipeline.hpp"

#include <exception>
#include <string>
#include <utility>

#include "rankmix/error.hpp"

namespace rankmix {

namespace {

template <typename F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const std::exception& e) {
    throw StageError(name, e.what());
  }
}

}  // namespace

PipelineResult run_pipeline(std::span<const LabeledSample> masked, const PipelineOptions& options) {
  PipelineResult out;
  const ObservationMatrix obs = stage("stack", [&] { return ObservationMatrix::from_samples(masked); });
  const SvdResult svd = stage("svd", [&] { return compute_svd(obs.values()); });
  const double t1 = stage("threshold", [&] {
    if (options.t1) return *options.t1;
    return select_threshold(svd, options.rank_hint).threshold;
  });
  out.estimate = stage("hsvt", [&] { return hsvt(obs, svd, t1); });

  out.clustering = stage("cluster", [&] {
    Eigen::MatrixXd rows = out.estimate.kept_rank > 0
                               ? out.estimate.scores
                               : Eigen::MatrixXd::Zero(obs.rows(), 1).eval();
    if (options.t2) return single_linkage(rows, *options.t2);
    return single_linkage_auto(rows, options.t2_options);
  });

  out.true_labels.reserve(masked.size());
  for (const auto& s : masked) out.true_labels.push_back(s.true_label);
  stage("evaluate", [&] {
    const Misclassification mc = misclassification_rate(out.clustering.labels, out.true_labels);
    out.evaluation.risk = mc.risk;
    out.evaluation.matching = mc.matching;
    return 0;
  });
  return out;
}

PipelineResult run_pipeline(const MixtureSpec& spec, std::size_t num_rows, double p, Seed seed,
                            const PipelineOptions& options) {
  stage("sample", [&] {
    spec.validate();
    return 0;
  });
  const auto samples = stage("sample", [&] { return sample_mixture(spec, num_rows, seed); });
  const auto masked = stage("mask", [&] { return mask(samples, p, seed); });
  PipelineResult out = run_pipeline(masked, options);

  if (spec.size() >= 2) {
    try {
      std::vector<Eigen::VectorXd> means;
      for (const auto& c : spec.components) means.push_back(cluster_mean(c));
      out.evaluation.gamma = separation_gamma(means);
    } catch (const UnsupportedError&) {
      // Mallows means are only tabulated for small n.
    }
  }
  return out;
}

}  // namespace rankmix
