#include "rankmix/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "rankmix/clustering.hpp"
#include "rankmix/error.hpp"
#include "rankmix/evaluation.hpp"
#include "rankmix/matrix_estimation.hpp"
#include "rankmix/matrix_io.hpp"
#include "rankmix/pipeline.hpp"

namespace rankmix {

std::string_view to_string(ExperimentId id) noexcept {
  switch (id) {
    case ExperimentId::kExp1:
      return "exp1";
    case ExperimentId::kExp2:
      return "exp2";
    case ExperimentId::kExp3:
      return "exp3";
  }
  return "unknown";
}

ExperimentId parse_experiment(std::string_view name) {
  if (name == "exp1") return ExperimentId::kExp1;
  if (name == "exp2") return ExperimentId::kExp2;
  if (name == "exp3") return ExperimentId::kExp3;
  throw std::invalid_argument("unknown experiment '" + std::string(name) + "'");
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& what) { throw std::invalid_argument("experiment config: " + what); };
  if (families.empty()) fail("family list is empty");
  if (items.empty()) fail("n list is empty");
  if (noise.empty()) fail("noise list is empty");
  if (p_values.empty()) fail("p list is empty");
  const std::size_t min_items = id == ExperimentId::kExp3 ? 2 : 3;
  for (std::size_t n : items) {
    if (n < min_items) fail("n must be at least " + std::to_string(min_items));
  }
  for (double v : noise) {
    if (!(v > 0.0) || !std::isfinite(v)) fail("noise levels must be positive");
  }
  for (double p : p_values) {
    if (!(p > 0.0 && p <= 1.0)) fail("p must be in (0, 1]");
  }
  if (components < 1) fail("k must be at least 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) fail("lambda must be positive");
  if (trials < 1) fail("trials must be at least 1");
  if (samples < 100) fail("samples must be at least 100");
  if (directions < 1) fail("directions must be at least 1");
  if (bins < 1) fail("bins must be at least 1");
  if (threads < 1) fail("threads must be at least 1");
  if (rank && *rank < 1) fail("rank must be at least 1");
}

ExperimentConfig default_config(ExperimentId id, bool paper_scale) {
  ExperimentConfig c;
  c.id = id;
  switch (id) {
    case ExperimentId::kExp1:
      c.items = {30};
      c.components = paper_scale ? 100 : 5;
      c.lambda = 50.0;
      c.noise = {0.3, 0.5, 1.0};
      c.p_values = {1.0};
      c.trials = 1;
      break;
    case ExperimentId::kExp2:
      c.components = 2;
      c.lambda = 500.0;
      c.p_values = {0.01, 0.02, 0.05, 0.1, 0.2, 0.4, 0.6, 0.8, 1.0};
      if (paper_scale) {
        c.items = {20, 30, 40, 50};
        c.noise = {0.3, 0.5, 0.7, 1.0};
        c.trials = 20;
      } else {
        c.items = {30};
        c.noise = {0.3, 1.0};
        c.trials = 10;
      }
      break;
    case ExperimentId::kExp3:
      c.families = {Family::kGaussian, Family::kMnl};
      c.samples = 1000;
      c.directions = 32;
      if (paper_scale) {
        c.items = {2, 5, 10, 20, 50, 100, 200};
        c.noise = {0.05, 0.1, 0.2, 0.5, 1.0};
        c.trials = 100;
      } else {
        c.items = {10, 20, 50, 100};
        c.noise = {0.1, 1.0};
        c.trials = 3;
      }
      break;
  }
  return c;
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw ParseError("empty entry in list '" + text + "'");
    out.push_back(item.substr(first, last - first + 1));
  }
  return out;
}

}  // namespace

ExperimentConfig load_config(ExperimentId id, const KeyValueFile& file, bool paper_scale) {
  static const std::set<std::string> known = {"seed", "family", "n", "k", "lambda", "noise", "sigma", "beta",
                                              "phi", "p", "trials", "samples", "directions", "bins",
                                              "threads", "rank"};
  for (const auto& [key, value] : file.entries()) {
    if (!known.count(key)) throw ParseError(file.source() + ": unknown key '" + key + "'");
  }
  ExperimentConfig c = default_config(id, paper_scale);
  c.seed = file.get_uint("seed", c.seed);
  if (auto families = file.find("family")) {
    c.families.clear();
    for (const auto& name : split_list(*families)) {
      try {
        c.families.push_back(parse_family(name));
      } catch (const std::invalid_argument& e) {
        throw ParseError(file.source() + ": " + e.what());
      }
    }
  }
  c.items = file.get_sizes("n", c.items);
  c.components = file.get_uint("k", c.components);
  c.lambda = file.get_double("lambda", c.lambda);
  int noise_keys = 0;
  for (const char* key : {"noise", "sigma", "beta", "phi"}) {
    if (!file.contains(key)) continue;
    if (++noise_keys > 1) throw ParseError(file.source() + ": give only one of noise, sigma, beta, phi");
    c.noise = file.get_doubles(key);
  }
  c.p_values = file.get_doubles("p", c.p_values);
  c.trials = file.get_uint("trials", c.trials);
  c.samples = file.get_uint("samples", c.samples);
  c.directions = file.get_uint("directions", c.directions);
  c.bins = file.get_uint("bins", c.bins);
  c.threads = file.get_uint("threads", c.threads);
  if (file.contains("rank")) c.rank = file.get_uint("rank");
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(file.source() + ": " + e.what());
  }
  return c;
}

namespace {

// Runs job(0..count-1) on up to `threads` workers; the first exception wins.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& job) {
  const std::size_t workers = std::min(std::max<std::size_t>(threads, 1), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          job(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = count;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

Seed trial_seed(Seed master, std::size_t n, std::size_t trial) {
  return derive_seed(derive_seed(master, n, StreamTag::kTrial), trial, StreamTag::kTrial);
}

Seed value_seed(Seed master, double value, StreamTag tag) {
  return derive_seed(master, std::bit_cast<std::uint64_t>(value), tag);
}

ComponentSpec make_component(Family family, std::size_t n, double noise, Seed seed, std::size_t index) {
  std::vector<double> u = gaussian_utilities(n, derive_seed(seed, index, StreamTag::kComponent));
  switch (family) {
    case Family::kMnl:
      return ComponentSpec::mnl(std::move(u), noise);
    case Family::kGaussian:
      return ComponentSpec::gaussian(std::move(u), noise);
    case Family::kMallows: {
      std::vector<Item> order(n);
      std::iota(order.begin(), order.end(), Item{0});
      std::stable_sort(order.begin(), order.end(), [&](Item a, Item b) { return u[a] > u[b]; });
      return ComponentSpec::mallows(Permutation::from_order(order), noise);
    }
  }
  throw std::logic_error("unreachable family");
}

// Experiment-style data: k components with N(0, I) utilities and Poisson sizes.
std::vector<LabeledSample> draw_trial(const ExperimentConfig& c, std::size_t n, double noise, Seed seed) {
  std::vector<ComponentSpec> comps;
  for (std::size_t i = 0; i < c.components; ++i) comps.push_back(make_component(c.families.front(), n, noise, seed, i));
  const MixtureSpec spec = MixtureSpec::uniform(std::move(comps));
  const auto sizes = poisson_sizes(c.components, c.lambda, seed);
  return sample_mixture_counts(spec, sizes, seed);
}

Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& rows) {
  const Eigen::MatrixXd gram = rows * rows.transpose();
  const Eigen::Index n = rows.rows();
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      d(i, j) = std::sqrt(std::max(0.0, gram(i, i) + gram(j, j) - 2.0 * gram(i, j)));
    }
  }
  return d;
}

struct DistanceStats {
  std::vector<Exp1Histogram> histograms;
  double gap = 0.0;
};

DistanceStats distance_stats(const Eigen::MatrixXd& rows, const std::vector<std::size_t>& labels, double sigma,
                             const std::string& stage, std::size_t bins) {
  const Eigen::MatrixXd d = pairwise_distances(rows);
  const Eigen::Index n = d.rows();
  double hi = 0.0;
  double max_intra = -std::numeric_limits<double>::infinity();
  double min_inter = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      hi = std::max(hi, d(i, j));
      if (labels[i] == labels[j]) {
        max_intra = std::max(max_intra, d(i, j));
      } else {
        min_inter = std::min(min_inter, d(i, j));
      }
    }
  }
  if (!(hi > 0.0)) hi = 1.0;
  DistanceStats out;
  for (const char* type : {"intra", "inter"}) {
    Exp1Histogram h;
    h.sigma = sigma;
    h.stage = stage;
    h.pair_type = type;
    h.counts.assign(bins, 0);
    for (std::size_t b = 0; b <= bins; ++b) h.edges.push_back(hi * static_cast<double>(b) / static_cast<double>(bins));
    out.histograms.push_back(std::move(h));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      auto& h = out.histograms[labels[i] == labels[j] ? 0 : 1];
      const auto b = static_cast<std::size_t>(d(i, j) / hi * static_cast<double>(bins));
      ++h.counts[std::min(b, bins - 1)];
    }
  }
  const bool defined = std::isfinite(max_intra) && std::isfinite(min_inter);
  out.gap = defined ? min_inter - max_intra : std::numeric_limits<double>::quiet_NaN();
  return out;
}

}  // namespace

Exp1Result run_exp1(const ExperimentConfig& config) {
  config.validate();
  const std::size_t n = config.items.front();
  const double p = config.p_values.front();
  struct Cell {
    std::vector<Exp1Histogram> histograms;
    std::vector<Exp1Point> points;
    Exp1Summary summary;
  };
  std::vector<Cell> cells(config.noise.size());
  parallel_for(cells.size(), config.threads, [&](std::size_t job) {
    const double sigma = config.noise[job];
    const Seed seed = trial_seed(config.seed, n, 0);
    const auto samples = draw_trial(config, n, sigma, seed);
    const auto masked = mask(samples, p, value_seed(seed, p, StreamTag::kMask));
    const ObservationMatrix obs = ObservationMatrix::from_samples(masked);
    const SvdResult svd = compute_svd(obs.values());
    const double t1 = select_threshold(svd, config.rank).threshold;
    const HsvtEstimate est = hsvt(obs, svd, t1);
    const Eigen::MatrixXd after =
        est.kept_rank > 0 ? est.scores : Eigen::MatrixXd::Zero(obs.rows(), 1).eval();
    const ClusteringResult cl = single_linkage_auto(after);

    std::vector<std::size_t> truth;
    for (const auto& s : masked) truth.push_back(s.true_label);
    const Misclassification mc = misclassification_rate(cl.labels, truth);

    Cell& cell = cells[job];
    DistanceStats before_stats = distance_stats(obs.values(), truth, sigma, "before", config.bins);
    DistanceStats after_stats = distance_stats(after, truth, sigma, "after", config.bins);
    for (auto* stats : {&before_stats, &after_stats}) {
      for (auto& h : stats->histograms) cell.histograms.push_back(std::move(h));
    }
    for (Eigen::Index i = 0; i < obs.rows(); ++i) {
      Exp1Point pt;
      pt.sigma = sigma;
      pt.row = static_cast<std::size_t>(i);
      pt.true_label = truth[pt.row];
      pt.pred_label = cl.labels[pt.row];
      pt.pc1 = svd.u(i, 0) * svd.singular_values(0);
      pt.pc2 = svd.size() > 1 ? svd.u(i, 1) * svd.singular_values(1) : 0.0;
      cell.points.push_back(pt);
    }
    Exp1Summary& s = cell.summary;
    s.sigma = sigma;
    s.n = n;
    s.k = config.components;
    s.num_rows = masked.size();
    s.p = p;
    s.risk = mc.risk;
    s.k_hat = cl.k_hat;
    s.kept_rank = est.kept_rank;
    s.t1 = t1;
    s.t2 = cl.threshold_used;
    s.gap_before = before_stats.gap;
    s.gap_after = after_stats.gap;
  });
  Exp1Result out;
  for (auto& cell : cells) {
    for (auto& h : cell.histograms) out.histograms.push_back(std::move(h));
    for (auto& pt : cell.points) out.points.push_back(pt);
    out.summaries.push_back(cell.summary);
  }
  return out;
}

std::vector<Exp2Row> run_exp2(const ExperimentConfig& config) {
  config.validate();
  const std::size_t per_n = config.noise.size() * config.trials;
  std::vector<std::vector<Exp2Row>> cells(config.items.size() * per_n);
  parallel_for(cells.size(), config.threads, [&](std::size_t job) {
    const std::size_t n = config.items[job / per_n];
    const double noise = config.noise[(job % per_n) / config.trials];
    const std::size_t trial = job % config.trials;
    const Seed seed = trial_seed(config.seed, n, trial);
    const auto samples = draw_trial(config, n, noise, seed);
    PipelineOptions options;
    options.rank_hint = config.rank;
    for (double p : config.p_values) {
      const auto masked = mask(samples, p, value_seed(seed, p, StreamTag::kMask));
      const PipelineResult r = run_pipeline(masked, options);
      Exp2Row row;
      row.n = n;
      row.k = config.components;
      row.noise = noise;
      row.p = p;
      row.trial = trial;
      row.risk = r.evaluation.risk;
      row.k_hat = r.clustering.k_hat;
      row.p_hat = r.estimate.p_hat;
      row.t1 = r.estimate.threshold_used;
      row.t2 = r.clustering.threshold_used;
      cells[job].push_back(row);
    }
  });
  // Grid order is n, noise, trial, p.
  std::vector<Exp2Row> out;
  for (auto& cell : cells) out.insert(out.end(), cell.begin(), cell.end());
  return out;
}

std::vector<Exp3Row> run_exp3(const ExperimentConfig& config) {
  config.validate();
  const std::size_t per_family = config.items.size() * config.noise.size();
  std::vector<Exp3Row> rows(config.families.size() * per_family);
  parallel_for(rows.size(), config.threads, [&](std::size_t job) {
    const Family family = config.families[job / per_family];
    const std::size_t n = config.items[(job % per_family) / config.noise.size()];
    const double noise = config.noise[job % config.noise.size()];
    std::vector<double> taus;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const Seed seed = trial_seed(config.seed, n, trial);
      const ComponentSpec comp = make_component(family, n, noise, seed, 0);
      TauOptions options;
      options.directions = config.directions;
      taus.push_back(empirical_tau(comp, config.samples, seed, options));
    }
    Exp3Row& row = rows[job];
    row.family = family;
    row.n = n;
    row.noise = noise;
    row.trials = taus.size();
    row.tau_mean = std::accumulate(taus.begin(), taus.end(), 0.0) / static_cast<double>(taus.size());
    double ss = 0.0;
    for (double t : taus) ss += (t - row.tau_mean) * (t - row.tau_mean);
    row.tau_sd = taus.size() > 1 ? std::sqrt(ss / static_cast<double>(taus.size() - 1)) : 0.0;
  });
  return rows;
}

std::vector<Exp3Slope> fit_exp3_slopes(const std::vector<Exp3Row>& rows) {
  std::vector<Exp3Slope> out;
  std::vector<bool> used(rows.size(), false);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (used[i]) continue;
    std::vector<double> xs, ys;
    for (std::size_t j = i; j < rows.size(); ++j) {
      if (rows[j].family != rows[i].family || rows[j].noise != rows[i].noise) continue;
      used[j] = true;
      if (rows[j].tau_mean > 0.0) {
        xs.push_back(std::log(static_cast<double>(rows[j].n)));
        ys.push_back(std::log(rows[j].tau_mean));
      }
    }
    Exp3Slope s;
    s.family = rows[i].family;
    s.noise = rows[i].noise;
    s.slope = std::numeric_limits<double>::quiet_NaN();
    s.intercept = std::numeric_limits<double>::quiet_NaN();
    if (xs.size() >= 2) {
      const double k = static_cast<double>(xs.size());
      const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / k;
      const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / k;
      double sxy = 0.0, sxx = 0.0;
      for (std::size_t t = 0; t < xs.size(); ++t) {
        sxy += (xs[t] - mx) * (ys[t] - my);
        sxx += (xs[t] - mx) * (xs[t] - mx);
      }
      if (sxx > 0.0) {
        s.slope = sxy / sxx;
        s.intercept = my - s.slope * mx;
      }
    }
    out.push_back(s);
  }
  return out;
}

namespace {

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError(tmp.string(), "cannot open for writing");
    out << content;
    out.flush();
    if (!out) throw IoError(tmp.string(), "write failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError(path.string(), "rename failed: " + ec.message());
}

std::string exp1_distances_csv(const Exp1Result& r) {
  std::ostringstream out;
  out << "sigma,stage,pair_type,bin_lo,bin_hi,count\n";
  for (const auto& h : r.histograms) {
    for (std::size_t b = 0; b < h.counts.size(); ++b) {
      out << format_real(h.sigma) << ',' << h.stage << ',' << h.pair_type << ',' << format_real(h.edges[b])
          << ',' << format_real(h.edges[b + 1]) << ',' << h.counts[b] << '\n';
    }
  }
  return out.str();
}

std::string exp1_projection_csv(const Exp1Result& r) {
  std::ostringstream out;
  out << "sigma,row,true_label,pred_label,pc1,pc2\n";
  for (const auto& p : r.points) {
    out << format_real(p.sigma) << ',' << p.row << ',' << p.true_label << ',' << p.pred_label << ','
        << format_real(p.pc1) << ',' << format_real(p.pc2) << '\n';
  }
  return out.str();
}

std::string exp1_summary_csv(const Exp1Result& r) {
  std::ostringstream out;
  out << "sigma,n,k,N,p,risk,k_hat,kept_rank,t1,t2,gap_before,gap_after\n";
  for (const auto& s : r.summaries) {
    out << format_real(s.sigma) << ',' << s.n << ',' << s.k << ',' << s.num_rows << ',' << format_real(s.p)
        << ',' << format_real(s.risk) << ',' << s.k_hat << ',' << s.kept_rank << ',' << format_real(s.t1) << ','
        << format_real(s.t2) << ',' << format_real(s.gap_before) << ',' << format_real(s.gap_after) << '\n';
  }
  return out.str();
}

std::string exp2_risk_csv(const std::vector<Exp2Row>& rows) {
  std::ostringstream out;
  out << "n,k,sigma_or_beta,p,trial,risk,k_hat,p_hat,t1,t2\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.k << ',' << format_real(r.noise) << ',' << format_real(r.p) << ',' << r.trial << ','
        << format_real(r.risk) << ',' << r.k_hat << ',' << format_real(r.p_hat) << ',' << format_real(r.t1) << ','
        << format_real(r.t2) << '\n';
  }
  return out.str();
}

std::string exp2_summary_csv(const ExperimentConfig& c, const std::vector<Exp2Row>& rows) {
  std::ostringstream out;
  out << "n,k,sigma_or_beta,p,trials,risk_mean,risk_sd,k_hat_mean\n";
  for (std::size_t n : c.items) {
    for (double noise : c.noise) {
      for (double p : c.p_values) {
        std::vector<const Exp2Row*> cell;
        for (const auto& r : rows) {
          if (r.n == n && r.noise == noise && r.p == p) cell.push_back(&r);
        }
        const double count = static_cast<double>(cell.size());
        double mean = 0.0, k_mean = 0.0;
        for (const auto* r : cell) {
          mean += r->risk / count;
          k_mean += static_cast<double>(r->k_hat) / count;
        }
        double ss = 0.0;
        for (const auto* r : cell) ss += (r->risk - mean) * (r->risk - mean);
        const double sd = cell.size() > 1 ? std::sqrt(ss / (count - 1.0)) : 0.0;
        out << n << ',' << c.components << ',' << format_real(noise) << ',' << format_real(p) << ','
            << cell.size() << ',' << format_real(mean) << ',' << format_real(sd) << ',' << format_real(k_mean)
            << '\n';
      }
    }
  }
  return out.str();
}

std::string exp3_tau_csv(const std::vector<Exp3Row>& rows) {
  std::ostringstream out;
  out << "family,n,noise,trials,tau_hat_mean,tau_hat_sd,log_n,log_tau\n";
  for (const auto& r : rows) {
    out << to_string(r.family) << ',' << r.n << ',' << format_real(r.noise) << ',' << r.trials << ','
        << format_real(r.tau_mean) << ',' << format_real(r.tau_sd) << ','
        << format_real(std::log(static_cast<double>(r.n))) << ',' << format_real(std::log(r.tau_mean)) << '\n';
  }
  return out.str();
}

std::string exp3_slopes_csv(const std::vector<Exp3Slope>& slopes) {
  std::ostringstream out;
  out << "family,noise,slope,intercept\n";
  for (const auto& s : slopes) {
    out << to_string(s.family) << ',' << format_real(s.noise) << ',' << format_real(s.slope) << ','
        << format_real(s.intercept) << '\n';
  }
  return out.str();
}

}  // namespace

std::vector<std::string> run_experiment(const ExperimentConfig& config, const std::string& out_dir) {
  config.validate();
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(out_dir, "cannot create directory: " + ec.message());

  std::vector<std::pair<std::string, std::string>> files;
  switch (config.id) {
    case ExperimentId::kExp1: {
      const Exp1Result r = run_exp1(config);
      files = {{"exp1_distances.csv", exp1_distances_csv(r)},
               {"exp1_projection.csv", exp1_projection_csv(r)},
               {"exp1_summary.csv", exp1_summary_csv(r)}};
      break;
    }
    case ExperimentId::kExp2: {
      const auto rows = run_exp2(config);
      files = {{"exp2_risk.csv", exp2_risk_csv(rows)}, {"exp2_summary.csv", exp2_summary_csv(config, rows)}};
      break;
    }
    case ExperimentId::kExp3: {
      const auto rows = run_exp3(config);
      files = {{"exp3_tau.csv", exp3_tau_csv(rows)}, {"exp3_slopes.csv", exp3_slopes_csv(fit_exp3_slopes(rows))}};
      break;
    }
  }
  std::vector<std::string> written;
  for (const auto& [name, content] : files) {
    const auto path = dir / name;
    write_atomic(path, content);
    written.push_back(path.string());
  }
  return written;
}

}  // namespace rankmix
