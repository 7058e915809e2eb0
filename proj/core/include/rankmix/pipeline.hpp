#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "rankmix/clustering.hpp"
#include "rankmix/evaluation.hpp"
#include "rankmix/generators.hpp"
#include "rankmix/matrix_estimation.hpp"
#include "rankmix/rng.hpp"

namespace rankmix {

struct PipelineOptions {
  std::optional<std::size_t> rank_hint;  // target rank for t1 selection
  std::optional<double> t1;              // overrides rank_hint when set
  std::optional<double> t2;              // otherwise chosen from the MST gap
  T2Options t2_options;
};

struct PipelineResult {
  HsvtEstimate estimate;
  ClusteringResult clustering;
  EvaluationReport evaluation;
  std::vector<std::size_t> true_labels;
};

/// Stack -> p_hat -> SVD -> t1 -> HSVT -> t2 -> single linkage -> risk
/// against the samples' true labels. Failures are rethrown as StageError.
PipelineResult run_pipeline(std::span<const LabeledSample> masked, const PipelineOptions& options = {});

/// Samples N rankings from `spec`, masks them with probability p (both streams
/// derived from `seed`), runs the pipeline and adds the separation of the
/// component means when they are computable.
PipelineResult run_pipeline(const MixtureSpec& spec, std::size_t num_rows, double p, Seed seed,
                            const PipelineOptions& options = {});

}  // namespace rankmix
