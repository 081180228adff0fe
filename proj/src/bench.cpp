#include "sparsepresence/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

#include "json.hpp"
#include "sparsepresence/cpa.hpp"
#include "sparsepresence/errors.hpp"
#include "sparsepresence/evaluation.hpp"
#include "sparsepresence/icpa.hpp"
#include "sparsepresence/io.hpp"
#include "sparsepresence/rng.hpp"

namespace spres {

namespace {

using nlohmann::ordered_json;

const std::vector<std::string> kKnownAlgorithms = {"cpa", "icpa", "mbmp",
                                                   "mfocuss"};

int worker_budget(int n_tasks) {
  int budget = static_cast<int>(std::thread::hardware_concurrency());
  if (budget < 1) budget = 1;
  if (const char* env = std::getenv("SP_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 1024)
      budget = static_cast<int>(v);
  }
  return std::min(budget, n_tasks);
}

// Runs fn(0..n_tasks-1) on up to SP_THREADS workers. Tasks own their output
// slots, so scheduling order cannot change results. The first exception is
// rethrown after all workers finish.
void parallel_tasks(int n_tasks, const std::function<void(int)>& fn) {
  const int workers = worker_budget(n_tasks);
  if (workers <= 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_tasks) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// ---- configuration ----

void validate_config(const ExperimentConfig& c) {
  if (c.n_dims < 1) throw ArgumentError("config: n_dims must be positive");
  if (c.n_atoms < 2) throw ArgumentError("config: n_atoms must be at least 2");
  if (c.n_steps < 1) throw ArgumentError("config: n_steps must be positive");
  if (c.k_values.empty()) throw ArgumentError("config: k_values is empty");
  for (int k : c.k_values)
    if (k < 1 || k >= c.n_atoms)
      throw ArgumentError("config: k value " + std::to_string(k) +
                          " outside [1, n_atoms)");
  if (!(c.noise_ratio >= 0.0))
    throw ArgumentError("config: noise_ratio must be >= 0");
  if (c.novel_std && !(*c.novel_std > 0.0))
    throw ArgumentError("config: novel_std must be positive when set");
  if (!(c.cpa_lambda > 0.0))
    throw ArgumentError("config: cpa_lambda must be positive");
  if (c.mbmp_max_iters < 1)
    throw ArgumentError("config: mbmp_max_iters must be positive");
  if (!(c.mfocuss.lambda > 0.0) || !(c.mfocuss.p_norm > 0.0) ||
      c.mfocuss.p_norm > 1.0 || !(c.mfocuss.epsilon > 0.0) ||
      !(c.mfocuss.prune_gamma > 0.0) || c.mfocuss.max_iters < 1)
    throw ArgumentError("config: invalid mfocuss parameters");
  if (c.n_trials < 1)
    throw ArgumentError("config: n_trials must be positive");
  if (c.algorithms.empty())
    throw ArgumentError("config: algorithms is empty");
  for (const auto& a : c.algorithms) {
    if (std::find(kKnownAlgorithms.begin(), kKnownAlgorithms.end(), a) ==
        kKnownAlgorithms.end())
      throw ArgumentError("config: unknown algorithm '" + a + "'");
    if (std::count(c.algorithms.begin(), c.algorithms.end(), a) != 1)
      throw ArgumentError("config: duplicate algorithm '" + a + "'");
  }
}

template <typename T>
T get_number(const ordered_json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number())
      throw ArgumentError("config: " + key + " must be a number");
    return v.get<double>();
  } else {
    if (!v.is_number_integer())
      throw ArgumentError("config: " + key + " must be an integer");
    const std::int64_t raw = v.get<std::int64_t>();
    if (raw < static_cast<std::int64_t>(std::numeric_limits<T>::min()) ||
        raw > static_cast<std::int64_t>(std::numeric_limits<T>::max()))
      throw ArgumentError("config: " + key + " out of range");
    return static_cast<T>(raw);
  }
}

}  // namespace

ExperimentKind experiment_kind_from_name(const std::string& name) {
  if (name == "complexity") return ExperimentKind::complexity;
  if (name == "novel") return ExperimentKind::novel;
  if (name == "masking") return ExperimentKind::masking;
  if (name == "lambda-sweep") return ExperimentKind::lambda_sweep;
  throw ArgumentError("unknown experiment '" + name +
                      "' (expected complexity, novel, masking, lambda-sweep)");
}

std::string experiment_kind_name(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::complexity: return "complexity";
    case ExperimentKind::novel: return "novel";
    case ExperimentKind::masking: return "masking";
    case ExperimentKind::lambda_sweep: return "lambda-sweep";
  }
  throw ArgumentError("unknown experiment kind");
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  switch (kind) {
    case ExperimentKind::complexity:
      break;
    case ExperimentKind::novel:
      c.k_values = {1};
      break;
    case ExperimentKind::masking:
      c.k_values = {2};
      c.novel_std = 10.0;
      break;
    case ExperimentKind::lambda_sweep:
      c.k_values = {2};
      c.novel_std = 10.0;
      c.algorithms = {"mfocuss"};
      break;
  }
  return c;
}

ExperimentConfig config_from_json(ExperimentKind kind,
                                  const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("config: JSON parse failure: ") + e.what());
  }
  if (!j.is_object()) throw ArgumentError("config: JSON root must be an object");

  static const std::vector<std::string> known_keys = {
      "n_dims",      "n_atoms",        "n_steps",  "k_values",
      "noise_ratio", "novel_std",      "cpa_lambda", "mbmp_max_iters",
      "mfocuss",     "n_trials",       "base_seed",  "algorithms"};
  for (const auto& item : j.items())
    if (std::find(known_keys.begin(), known_keys.end(), item.key()) ==
        known_keys.end())
      throw ArgumentError("config: unknown key '" + item.key() + "'");

  ExperimentConfig c = default_config(kind);
  c.n_dims = get_number<int>(j, "n_dims", c.n_dims);
  c.n_atoms = get_number<int>(j, "n_atoms", c.n_atoms);
  c.n_steps = get_number<int>(j, "n_steps", c.n_steps);
  if (j.contains("k_values")) {
    if (!j.at("k_values").is_array())
      throw ArgumentError("config: k_values must be an array");
    c.k_values.clear();
    for (const auto& v : j.at("k_values")) {
      if (!v.is_number_integer())
        throw ArgumentError("config: k_values entries must be integers");
      c.k_values.push_back(v.get<int>());
    }
  }
  c.noise_ratio = get_number<double>(j, "noise_ratio", c.noise_ratio);
  if (j.contains("novel_std")) {
    const auto& v = j.at("novel_std");
    if (v.is_null()) {
      c.novel_std.reset();
    } else if (v.is_number()) {
      const double s = v.get<double>();
      if (s < 0.0) throw ArgumentError("config: novel_std must be >= 0");
      if (s == 0.0)
        c.novel_std.reset();
      else
        c.novel_std = s;
    } else {
      throw ArgumentError("config: novel_std must be a number or null");
    }
  }
  c.cpa_lambda = get_number<double>(j, "cpa_lambda", c.cpa_lambda);
  c.mbmp_max_iters = get_number<int>(j, "mbmp_max_iters", c.mbmp_max_iters);
  if (j.contains("mfocuss")) {
    const auto& sub = j.at("mfocuss");
    if (!sub.is_object())
      throw ArgumentError("config: mfocuss must be an object");
    static const std::vector<std::string> sub_keys = {
        "lambda", "p_norm", "epsilon", "prune_gamma", "max_iters"};
    for (const auto& item : sub.items())
      if (std::find(sub_keys.begin(), sub_keys.end(), item.key()) ==
          sub_keys.end())
        throw ArgumentError("config: unknown key 'mfocuss." + item.key() + "'");
    c.mfocuss.lambda = get_number<double>(sub, "lambda", c.mfocuss.lambda);
    c.mfocuss.p_norm = get_number<double>(sub, "p_norm", c.mfocuss.p_norm);
    c.mfocuss.epsilon = get_number<double>(sub, "epsilon", c.mfocuss.epsilon);
    c.mfocuss.prune_gamma =
        get_number<double>(sub, "prune_gamma", c.mfocuss.prune_gamma);
    c.mfocuss.max_iters =
        get_number<int>(sub, "max_iters", c.mfocuss.max_iters);
  }
  c.n_trials = get_number<int>(j, "n_trials", c.n_trials);
  if (j.contains("base_seed")) {
    const auto& v = j.at("base_seed");
    if (!v.is_number_integer() ||
        (!v.is_number_unsigned() && v.get<std::int64_t>() < 0))
      throw ArgumentError("config: base_seed must be a non-negative integer");
    c.base_seed = v.get<std::uint64_t>();
  }
  if (j.contains("algorithms")) {
    if (!j.at("algorithms").is_array())
      throw ArgumentError("config: algorithms must be an array");
    c.algorithms.clear();
    for (const auto& v : j.at("algorithms")) {
      if (!v.is_string())
        throw ArgumentError("config: algorithms entries must be strings");
      c.algorithms.push_back(v.get<std::string>());
    }
  }
  validate_config(c);
  return c;
}

std::string config_to_json(const ExperimentConfig& c) {
  ordered_json j;
  j["n_dims"] = c.n_dims;
  j["n_atoms"] = c.n_atoms;
  j["n_steps"] = c.n_steps;
  j["k_values"] = c.k_values;
  j["noise_ratio"] = c.noise_ratio;
  if (c.novel_std)
    j["novel_std"] = *c.novel_std;
  else
    j["novel_std"] = nullptr;
  j["cpa_lambda"] = c.cpa_lambda;
  j["mbmp_max_iters"] = c.mbmp_max_iters;
  j["mfocuss"] = {{"lambda", c.mfocuss.lambda},
                  {"p_norm", c.mfocuss.p_norm},
                  {"epsilon", c.mfocuss.epsilon},
                  {"prune_gamma", c.mfocuss.prune_gamma},
                  {"max_iters", c.mfocuss.max_iters}};
  j["n_trials"] = c.n_trials;
  j["base_seed"] = c.base_seed;
  j["algorithms"] = c.algorithms;
  return j.dump(2);
}

namespace {

// ---- trial execution ----

struct TrialData {
  Dictionary dict;
  ActiveSet active;
  ObservationSet obs;
};

// Synthesis pipeline shared by every experiment: sample support, draw
// amplitudes, optionally add the novel contribution, then noise over the
// combined record. Every stochastic stage has its own substream of the
// trial seed, so conditions that share a stage see identical draws.
TrialData make_trial(const ExperimentConfig& cfg, int k,
                     std::optional<double> novel_std, std::uint64_t tseed) {
  Dictionary dict = Dictionary::generate(cfg.n_dims, cfg.n_atoms, tseed);
  ActiveSet active = ActiveSet::sample(k, cfg.n_atoms, tseed);
  ObservationSet obs =
      synthesize(dict, active, cfg.n_steps, tseed, 1.0).observations;
  if (novel_std) {
    const NovelAtomSpec novel{make_novel_atom(cfg.n_dims, tseed), *novel_std};
    obs = inject_novel_atom(obs, novel, tseed);
  }
  if (cfg.noise_ratio > 0.0) obs = add_noise(obs, cfg.noise_ratio, tseed);
  return TrialData{std::move(dict), std::move(active), std::move(obs)};
}

Eigen::VectorXd algo_scores(const std::string& algo,
                            const ExperimentConfig& cfg,
                            const Dictionary& dict, const ObservationSet& obs,
                            const MfocussParams& mfocuss) {
  if (algo == "cpa")
    return solve_cpa_regularized(dict, obs, cfg.cpa_lambda).theta;
  if (algo == "icpa") return solve_icpa(dict, obs, cfg.cpa_lambda).theta;
  if (algo == "mbmp")
    return atom_scores(solve_mbmp(dict, obs, cfg.mbmp_max_iters));
  if (algo == "mfocuss")
    return atom_scores(solve_mfocuss(dict, obs, mfocuss));
  throw ArgumentError("unknown algorithm '" + algo + "'");
}

std::optional<double> algo_lambda(const std::string& algo,
                                  const ExperimentConfig& cfg,
                                  const MfocussParams& mfocuss) {
  if (algo == "cpa" || algo == "icpa") return cfg.cpa_lambda;
  if (algo == "mfocuss") return mfocuss.lambda;
  return std::nullopt;
}

struct DetectionCondition {
  int k;
  std::optional<double> novel_std;
  MfocussParams mfocuss;
};

std::vector<ResultRow> detection_trial(const ExperimentConfig& cfg,
                                       const std::string& experiment,
                                       const DetectionCondition& cond,
                                       int trial) {
  const std::uint64_t tseed = cfg.base_seed + static_cast<std::uint64_t>(trial);
  const TrialData data = make_trial(cfg, cond.k, cond.novel_std, tseed);
  std::vector<ResultRow> rows;
  rows.reserve(cfg.algorithms.size());
  for (const auto& algo : cfg.algorithms) {
    const Eigen::VectorXd scores =
        algo_scores(algo, cfg, data.dict, data.obs, cond.mfocuss);
    const PRFResult prf = best_threshold_f(scores, data.active);
    rows.push_back(ResultRow{experiment, algo, cond.k, cond.novel_std,
                             algo_lambda(algo, cfg, cond.mfocuss), tseed,
                             prf.precision, prf.recall, prf.f_measure,
                             prf.threshold});
  }
  return rows;
}

std::vector<ResultRow> run_detection_grid(
    const ExperimentConfig& cfg, const std::string& experiment,
    const std::vector<DetectionCondition>& conditions) {
  const int n_tasks = static_cast<int>(conditions.size()) * cfg.n_trials;
  std::vector<std::vector<ResultRow>> slots(
      static_cast<std::size_t>(n_tasks));
  parallel_tasks(n_tasks, [&](int task) {
    const int cond = task / cfg.n_trials;
    const int trial = task % cfg.n_trials;
    slots[static_cast<std::size_t>(task)] = detection_trial(
        cfg, experiment, conditions[static_cast<std::size_t>(cond)], trial);
  });
  std::vector<ResultRow> rows;
  for (auto& slot : slots)
    rows.insert(rows.end(), slot.begin(), slot.end());
  return rows;
}

// ---- file emission ----

std::string opt_cell(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string();
}

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<ResultRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << "experiment,algo,k,novel_std,lambda,seed,precision,recall,f,"
         "threshold\n";
  for (const auto& r : rows)
    out << r.experiment << ',' << r.algo << ',' << r.k << ','
        << opt_cell(r.novel_std) << ',' << opt_cell(r.lambda) << ',' << r.seed
        << ',' << format_double(r.precision) << ',' << format_double(r.recall)
        << ',' << format_double(r.f) << ',' << format_double(r.threshold)
        << '\n';
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

void write_density_csv(const std::filesystem::path& path,
                       const std::vector<DensityRow>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError(path.string() + ": cannot open for writing");
  out << "experiment,algo,condition,novel_std,seed,support_fraction,"
         "peak_score,l1_l2_ratio\n";
  for (const auto& r : rows)
    out << r.experiment << ',' << r.algo << ',' << r.condition << ','
        << opt_cell(r.novel_std) << ',' << r.seed << ','
        << format_double(r.support_fraction) << ','
        << format_double(r.peak_score) << ','
        << format_double(r.l1_l2_ratio) << '\n';
  out.close();
  if (!out) throw IoError(path.string() + ": write failed");
}

ordered_json protocol_json() {
  return ordered_json{{"fresh_dictionary_per_trial", true},
                      {"noise_std_convention", "global_over_record"},
                      {"trial_seed", "base_seed + trial_index"}};
}

ordered_json aggregate_result_rows(const std::vector<ResultRow>& rows) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<double>> groups;
  std::map<std::string, const ResultRow*> reps;
  for (const auto& r : rows) {
    const std::string key = r.algo + "|" + std::to_string(r.k) + "|" +
                            opt_cell(r.novel_std) + "|" + opt_cell(r.lambda);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(r.f);
    reps.emplace(key, &r);
  }
  ordered_json arr = ordered_json::array();
  for (const auto& key : order) {
    const ResultRow& rep = *reps.at(key);
    const TrialStats stats = aggregate_trials(groups.at(key));
    ordered_json entry;
    entry["algo"] = rep.algo;
    entry["k"] = rep.k;
    entry["novel_std"] =
        rep.novel_std ? ordered_json(*rep.novel_std) : ordered_json(nullptr);
    entry["lambda"] =
        rep.lambda ? ordered_json(*rep.lambda) : ordered_json(nullptr);
    entry["mean_f"] = stats.mean;
    entry["std_f"] = stats.stddev;
    entry["n"] = stats.n;
    arr.push_back(entry);
  }
  return arr;
}

ordered_json aggregate_density_rows(const std::vector<DensityRow>& rows) {
  std::vector<std::string> order;
  struct Group {
    std::vector<double> support, peak, ratio;
    const DensityRow* rep = nullptr;
  };
  std::map<std::string, Group> groups;
  for (const auto& r : rows) {
    const std::string key =
        r.algo + "|" + r.condition + "|" + opt_cell(r.novel_std);
    if (!groups.count(key)) order.push_back(key);
    Group& g = groups[key];
    if (!g.rep) g.rep = &r;
    g.support.push_back(r.support_fraction);
    g.peak.push_back(r.peak_score);
    g.ratio.push_back(r.l1_l2_ratio);
  }
  ordered_json arr = ordered_json::array();
  for (const auto& key : order) {
    const Group& g = groups.at(key);
    ordered_json entry;
    entry["algo"] = g.rep->algo;
    entry["condition"] = g.rep->condition;
    entry["novel_std"] = g.rep->novel_std ? ordered_json(*g.rep->novel_std)
                                          : ordered_json(nullptr);
    const TrialStats support = aggregate_trials(g.support);
    const TrialStats peak = aggregate_trials(g.peak);
    const TrialStats ratio = aggregate_trials(g.ratio);
    entry["mean_support_fraction"] = support.mean;
    entry["std_support_fraction"] = support.stddev;
    entry["mean_peak_score"] = peak.mean;
    entry["std_peak_score"] = peak.stddev;
    entry["mean_l1_l2_ratio"] = ratio.mean;
    entry["std_l1_l2_ratio"] = ratio.stddev;
    entry["n"] = support.n;
    arr.push_back(entry);
  }
  return arr;
}

BenchOutput emit(const std::string& experiment, const ExperimentConfig& cfg,
                 const std::filesystem::path& out_dir,
                 std::vector<ResultRow> rows,
                 std::vector<DensityRow> density_rows) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec)
    throw IoError(out_dir.string() + ": cannot create output directory");

  BenchOutput out;
  out.rows = std::move(rows);
  out.density_rows = std::move(density_rows);

  ordered_json summary;
  summary["experiment"] = experiment;
  summary["config"] = ordered_json::parse(config_to_json(cfg));
  summary["protocol"] = protocol_json();
  if (!out.rows.empty()) {
    out.results_csv = out_dir / "results.csv";
    write_results_csv(out.results_csv, out.rows);
    summary["conditions"] = aggregate_result_rows(out.rows);
  }
  if (!out.density_rows.empty()) {
    out.density_csv = out_dir / "density.csv";
    write_density_csv(out.density_csv, out.density_rows);
    summary["conditions"] = aggregate_density_rows(out.density_rows);
  }

  out.summary_json = out_dir / "summary.json";
  std::ofstream js(out.summary_json);
  if (!js)
    throw IoError(out.summary_json.string() + ": cannot open for writing");
  js << summary.dump(2) << '\n';
  js.close();
  if (!js) throw IoError(out.summary_json.string() + ": write failed");
  return out;
}

}  // namespace

BenchOutput run_complexity_sweep(const ExperimentConfig& config,
                                 const std::filesystem::path& out_dir) {
  validate_config(config);
  std::vector<DetectionCondition> conditions;
  for (int k : config.k_values)
    conditions.push_back(DetectionCondition{k, std::nullopt, config.mfocuss});
  return emit("complexity", config, out_dir,
              run_detection_grid(config, "complexity", conditions), {});
}

BenchOutput run_masking_robustness(const ExperimentConfig& config,
                                   const std::filesystem::path& out_dir) {
  validate_config(config);
  if (!config.novel_std)
    throw ArgumentError("masking: novel_std is required");
  std::vector<DetectionCondition> conditions;
  for (int k : config.k_values)
    conditions.push_back(DetectionCondition{k, std::nullopt, config.mfocuss});
  for (int k : config.k_values)
    conditions.push_back(
        DetectionCondition{k, config.novel_std, config.mfocuss});
  return emit("masking", config, out_dir,
              run_detection_grid(config, "masking", conditions), {});
}

BenchOutput run_lambda_sweep(const ExperimentConfig& config,
                             const std::filesystem::path& out_dir) {
  validate_config(config);
  if (!config.novel_std)
    throw ArgumentError("lambda-sweep: novel_std is required");
  static const double kLambdaGrid[] = {1e-7, 1e-6, 1e-5, 1e-4,
                                       1e-3, 1e-2, 1e-1};
  ExperimentConfig cfg = config;
  cfg.algorithms = {"mfocuss"};
  const int k = cfg.k_values.front();
  std::vector<DetectionCondition> conditions;
  for (double lambda : kLambdaGrid) {
    MfocussParams params = cfg.mfocuss;
    params.lambda = lambda;
    conditions.push_back(DetectionCondition{k, std::nullopt, params});
    conditions.push_back(DetectionCondition{k, cfg.novel_std, params});
  }
  return emit("lambda-sweep", cfg, out_dir,
              run_detection_grid(cfg, "lambda-sweep", conditions), {});
}

BenchOutput run_novel_representation(const ExperimentConfig& config,
                                     const std::filesystem::path& out_dir) {
  validate_config(config);
  static const double kNovelGrid[] = {1.0, 10.0};
  const int k = config.k_values.front();

  std::vector<std::vector<DensityRow>> slots(
      static_cast<std::size_t>(config.n_trials));
  parallel_tasks(config.n_trials, [&](int trial) {
    const std::uint64_t tseed =
        config.base_seed + static_cast<std::uint64_t>(trial);
    std::vector<DensityRow> rows;

    // Known-atom condition: standard synthesis at amplitude std 1.
    const TrialData known = make_trial(config, k, std::nullopt, tseed);
    for (const auto& algo : config.algorithms) {
      const Eigen::VectorXd scores =
          algo_scores(algo, config, known.dict, known.obs, config.mfocuss);
      const DensityReport d = density_report(scores);
      rows.push_back(DensityRow{"novel", algo, "known", std::nullopt, tseed,
                                d.support_fraction, d.peak_score,
                                d.l1_l2_ratio});
    }

    // Novel-only conditions: same dictionary, record is an out-of-dictionary
    // direction at amplitude stds 1 and 10 (same direction and unit draws,
    // so the two differ only by scale) plus noise.
    const Dictionary& dict = known.dict;
    const Eigen::VectorXd direction =
        make_novel_atom(config.n_dims, tseed);
    for (double novel_std : kNovelGrid) {
      ObservationSet obs(Eigen::MatrixXd::Zero(config.n_dims, config.n_steps));
      obs = inject_novel_atom(obs, NovelAtomSpec{direction, novel_std}, tseed);
      if (config.noise_ratio > 0.0)
        obs = add_noise(obs, config.noise_ratio, tseed);
      for (const auto& algo : config.algorithms) {
        const Eigen::VectorXd scores =
            algo_scores(algo, config, dict, obs, config.mfocuss);
        const DensityReport d = density_report(scores);
        rows.push_back(DensityRow{"novel", algo, "novel", novel_std, tseed,
                                  d.support_fraction, d.peak_score,
                                  d.l1_l2_ratio});
      }
    }
    slots[static_cast<std::size_t>(trial)] = std::move(rows);
  });

  std::vector<DensityRow> density_rows;
  for (auto& slot : slots)
    density_rows.insert(density_rows.end(), slot.begin(), slot.end());
  return emit("novel", config, out_dir, {}, std::move(density_rows));
}

BenchOutput run_experiment(ExperimentKind kind, const ExperimentConfig& config,
                           const std::filesystem::path& out_dir) {
  switch (kind) {
    case ExperimentKind::complexity:
      return run_complexity_sweep(config, out_dir);
    case ExperimentKind::novel:
      return run_novel_representation(config, out_dir);
    case ExperimentKind::masking:
      return run_masking_robustness(config, out_dir);
    case ExperimentKind::lambda_sweep:
      return run_lambda_sweep(config, out_dir);
  }
  throw ArgumentError("unknown experiment kind");
}

}  // namespace spres
