#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <exception>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rankmix/clustering.hpp"
#include "rankmix/config.hpp"
#include "rankmix/error.hpp"
#include "rankmix/evaluation.hpp"
#include "rankmix/experiments.hpp"
#include "rankmix/generators.hpp"
#include "rankmix/matrix_estimation.hpp"
#include "rankmix/matrix_io.hpp"
#include "rankmix/mixture_io.hpp"
#include "rankmix/pipeline.hpp"
#include "rankmix/rankings.hpp"

namespace rankmix::cli {

namespace {

constexpr std::size_t kMetaSingularValues = 20;

// Inverts the embedding of a fully observed ranking: an item's rank is the
// number of pairs it loses.
Permutation ranking_of(const EmbeddedObservation& obs) {
  const std::size_t n = obs.items();
  std::vector<std::size_t> losses(n, 0);
  const PairIndexer pairs(n);
  for (std::size_t idx = 0; idx < obs.dimension(); ++idx) {
    const auto [a, b] = pairs.pair_of(idx);
    ++losses[obs.at(idx) == Comparison::kAhead ? b : a];
  }
  std::vector<Item> order(n);
  for (Item a = 0; a < n; ++a) order[losses[a]] = a;
  return Permutation::from_order(order);
}

std::vector<std::size_t> labels_of(std::span<const LabeledSample> samples) {
  std::vector<std::size_t> labels;
  labels.reserve(samples.size());
  for (const auto& s : samples) labels.push_back(s.true_label);
  return labels;
}

struct GenerateArgs {
  std::string spec, out, rankings;
  std::size_t num = 0;
  double p = 1.0;
  Seed seed = 1;
};

void generate(const GenerateArgs& a, std::ostream& out) {
  const MixtureSpec spec = read_mixture_file(a.spec);
  const auto samples = sample_mixture(spec, a.num, a.seed);
  if (!a.rankings.empty()) {
    std::vector<Permutation> perms;
    for (const auto& s : samples) perms.push_back(ranking_of(s.observation));
    write_rankings_file(a.rankings, perms);
  }
  const auto masked = mask(samples, a.p, a.seed);
  write_observation_matrix_file(a.out, ObservationMatrix::from_samples(masked));
  const auto labels = labels_of(masked);
  write_labels_file(a.out + ".labels", labels);
  out << "wrote " << a.out << " (" << masked.size() << " rows)\n";
}

struct EmbedArgs {
  std::string in, out;
  double p = 1.0;
  Seed seed = 1;
};

void embed_rankings(const EmbedArgs& a, std::ostream& out) {
  const auto perms = read_rankings_file(a.in);
  std::vector<LabeledSample> rows;
  rows.reserve(perms.size());
  for (std::size_t i = 0; i < perms.size(); ++i) rows.push_back({embed(perms[i]), 0, i});
  const auto masked = mask(rows, a.p, a.seed);
  write_observation_matrix_file(a.out, ObservationMatrix::from_samples(masked));
  out << "wrote " << a.out << " (" << masked.size() << " rows)\n";
}

struct DenoiseArgs {
  std::string in, out;
  std::optional<std::size_t> rank;
  bool automatic = false;
};

void denoise(const DenoiseArgs& a, std::ostream& out) {
  const ObservationMatrix obs = read_observation_matrix_file(a.in);
  const SvdResult svd = compute_svd(obs.values());
  const ThresholdChoice choice = select_threshold(svd, a.rank);
  const HsvtEstimate est = hsvt(obs, svd, choice.threshold);
  write_dense_matrix_file(a.out, est.m_hat);
  const auto top = std::min<Eigen::Index>(est.singular_values.size(), kMetaSingularValues);
  std::vector<double> sv(est.singular_values.data(), est.singular_values.data() + top);
  write_meta_file(a.out + ".meta", {{"p_hat", format_real(est.p_hat)},
                                    {"threshold_used", format_real(est.threshold_used)},
                                    {"kept_rank", std::to_string(est.kept_rank)},
                                    {"singular_values", join_reals(sv)}});
  out << "kept_rank=" << est.kept_rank << "\nthreshold_used=" << format_real(est.threshold_used) << '\n';
}

struct ClusterArgs {
  std::string in, out;
  std::optional<double> t2;
  bool automatic = false;
};

void cluster(const ClusterArgs& a, std::ostream& out) {
  const Eigen::MatrixXd rows = read_dense_matrix_file(a.in);
  const ClusteringResult r = a.t2 ? single_linkage(rows, *a.t2) : single_linkage_auto(rows);
  write_labels_file(a.out, r.labels);
  write_meta_file(a.out + ".meta", {{"k_hat", std::to_string(r.k_hat)},
                                    {"threshold_used", format_real(r.threshold_used)},
                                    {"mst_weights", join_reals(r.mst_edge_weights)}});
  out << "k_hat=" << r.k_hat << "\nthreshold_used=" << format_real(r.threshold_used) << '\n';
}

void evaluate(const std::string& pred, const std::string& truth, std::ostream& out) {
  const auto p = read_labels_file(pred);
  const auto t = read_labels_file(truth);
  const Misclassification mc = misclassification_rate(p, t);
  out << "risk=" << format_real(mc.risk) << "\nmatching=" << format_matching(mc.matching) << '\n';
}

struct TauArgs {
  std::string spec;
  std::size_t samples = 1000;
  std::size_t directions = 32;
  Seed seed = 1;
  std::optional<std::size_t> component;
};

void tau_estimate(const TauArgs& a, std::ostream& out) {
  const MixtureSpec spec = read_mixture_file(a.spec);
  if (a.component && *a.component >= spec.size()) {
    throw std::invalid_argument("component index " + std::to_string(*a.component) + " out of range");
  }
  TauOptions options;
  options.directions = a.directions;
  double tau = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    if (a.component && *a.component != i) continue;
    tau = std::max(tau, empirical_tau(spec.components[i], a.samples, derive_seed(a.seed, i, StreamTag::kComponent),
                                      options));
  }
  out << "tau_hat=" << format_real(tau) << '\n';
}

struct ExperimentArgs {
  std::string id, config, out;
  bool paper_scale = false;
  std::optional<std::size_t> threads;
};

void experiment(const ExperimentArgs& a, std::ostream& out) {
  const ExperimentId id = parse_experiment(a.id);
  ExperimentConfig config = a.config.empty() ? default_config(id, a.paper_scale)
                                             : load_config(id, KeyValueFile::load(a.config), a.paper_scale);
  if (a.threads) config.threads = *a.threads;
  for (const auto& path : run_experiment(config, a.out)) out << "wrote " << path << '\n';
}

struct PipelineArgs {
  std::string spec;
  std::size_t num = 0;
  double p = 1.0;
  Seed seed = 1;
  std::optional<std::size_t> rank;
  std::optional<double> t2;
};

void pipeline(const PipelineArgs& a, std::ostream& out) {
  const MixtureSpec spec = read_mixture_file(a.spec);
  PipelineOptions options;
  options.rank_hint = a.rank;
  options.t2 = a.t2;
  const PipelineResult r = run_pipeline(spec, a.num, a.p, a.seed, options);
  out << "risk=" << format_real(r.evaluation.risk) << "\nmatching=" << format_matching(r.evaluation.matching)
      << "\nk_hat=" << r.clustering.k_hat << "\nkept_rank=" << r.estimate.kept_rank
      << "\np_hat=" << format_real(r.estimate.p_hat) << "\nt1=" << format_real(r.estimate.threshold_used)
      << "\nt2=" << format_real(r.clustering.threshold_used) << '\n';
  if (r.evaluation.gamma) out << "gamma=" << format_real(*r.evaluation.gamma) << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clustering of partially observed rankings from mixtures of random utility models", "rankmix"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* gen_cmd = app.add_subcommand("generate", "Sample a masked observation matrix from a mixture spec");
  gen_cmd->add_option("--spec", gen.spec, "Mixture spec file")->required()->check(CLI::ExistingFile);
  gen_cmd->add_option("--num", gen.num, "Number of rankings N")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--p", gen.p, "Observation probability")->check(CLI::Range(0.0, 1.0));
  gen_cmd->add_option("--seed", gen.seed, "Master seed");
  gen_cmd->add_option("--out", gen.out, "Output matrix file (labels go to <out>.labels)")->required();
  gen_cmd->add_option("--rankings", gen.rankings, "Also write the unmasked rankings here");

  EmbedArgs emb;
  auto* emb_cmd = app.add_subcommand("embed", "Embed a rankings file as a pairwise-comparison matrix");
  emb_cmd->add_option("--in", emb.in, "Rankings file")->required()->check(CLI::ExistingFile);
  emb_cmd->add_option("--out", emb.out, "Output matrix file")->required();
  emb_cmd->add_option("--p", emb.p, "Observation probability")->check(CLI::Range(0.0, 1.0));
  emb_cmd->add_option("--seed", emb.seed, "Masking seed");

  DenoiseArgs den;
  auto* den_cmd = app.add_subcommand("denoise", "Hard singular value thresholding of an observation matrix");
  den_cmd->add_option("--in", den.in, "Observation matrix file")->required()->check(CLI::ExistingFile);
  den_cmd->add_option("--out", den.out, "Output estimate (sidecar <out>.meta)")->required();
  auto* rank_opt = den_cmd->add_option("--rank", den.rank, "Keep this many components")->check(CLI::PositiveNumber);
  auto* auto_rank = den_cmd->add_flag("--auto", den.automatic, "Pick the rank at the largest singular value ratio");
  rank_opt->excludes(auto_rank);

  ClusterArgs clu;
  auto* clu_cmd = app.add_subcommand("cluster", "Single-linkage clustering of matrix rows");
  clu_cmd->add_option("--in", clu.in, "Dense matrix file")->required()->check(CLI::ExistingFile);
  clu_cmd->add_option("--out", clu.out, "Output labels (sidecar <out>.meta)")->required();
  auto* t2_opt = clu_cmd->add_option("--t2", clu.t2, "Distance threshold")->check(CLI::NonNegativeNumber);
  auto* auto_t2 = clu_cmd->add_flag("--auto", clu.automatic, "Pick t2 at the largest MST weight gap");
  t2_opt->excludes(auto_t2);

  std::string pred, truth;
  auto* eval_cmd = app.add_subcommand("evaluate", "Misclassification rate of predicted labels");
  eval_cmd->add_option("--pred", pred, "Predicted labels")->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--truth", truth, "True labels")->required()->check(CLI::ExistingFile);

  TauArgs tau;
  auto* tau_cmd = app.add_subcommand("tau-estimate", "Empirical sub-Gaussian norm of mixture components");
  tau_cmd->add_option("--spec", tau.spec, "Mixture spec file")->required()->check(CLI::ExistingFile);
  tau_cmd->add_option("--samples", tau.samples, "Samples per component")->check(CLI::Range(100, 100000000));
  tau_cmd->add_option("--directions", tau.directions, "Random probe directions")->check(CLI::PositiveNumber);
  tau_cmd->add_option("--seed", tau.seed, "Master seed");
  tau_cmd->add_option("--component", tau.component, "Only this component (default: max over all)");

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Run a parameter sweep and write CSV files");
  exp_cmd->add_option("id", exp.id, "exp1, exp2 or exp3")->required()->check(CLI::IsMember({"exp1", "exp2", "exp3"}));
  exp_cmd->add_option("--config", exp.config, "key=value overrides")->check(CLI::ExistingFile);
  exp_cmd->add_flag("--paper-scale", exp.paper_scale, "Use the full grids");
  exp_cmd->add_option("--out", exp.out, "Output directory")->required();
  exp_cmd->add_option("--threads", exp.threads, "Worker threads")->check(CLI::PositiveNumber);

  PipelineArgs pipe;
  auto* pipe_cmd = app.add_subcommand("pipeline", "Sample, denoise, cluster and score in one run");
  pipe_cmd->add_option("--spec", pipe.spec, "Mixture spec file")->required()->check(CLI::ExistingFile);
  pipe_cmd->add_option("--num", pipe.num, "Number of rankings N")->required()->check(CLI::PositiveNumber);
  pipe_cmd->add_option("--p", pipe.p, "Observation probability")->check(CLI::Range(0.0, 1.0));
  pipe_cmd->add_option("--seed", pipe.seed, "Master seed");
  pipe_cmd->add_option("--rank", pipe.rank, "Target rank for t1")->check(CLI::PositiveNumber);
  pipe_cmd->add_option("--t2", pipe.t2, "Distance threshold")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) {
      generate(gen, out);
    } else if (*emb_cmd) {
      embed_rankings(emb, out);
    } else if (*den_cmd) {
      if (!den.automatic && !den.rank) throw std::invalid_argument("denoise needs --rank R or --auto");
      denoise(den, out);
    } else if (*clu_cmd) {
      if (!clu.automatic && !clu.t2) throw std::invalid_argument("cluster needs --t2 X or --auto");
      cluster(clu, out);
    } else if (*eval_cmd) {
      evaluate(pred, truth, out);
    } else if (*tau_cmd) {
      tau_estimate(tau, out);
    } else if (*exp_cmd) {
      experiment(exp, out);
    } else if (*pipe_cmd) {
      pipeline(pipe, out);
    }
  } catch (const std::exception& e) {
    err << "rankmix: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace rankmix::cli
