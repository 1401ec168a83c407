/*
 * Copyright 2026 The olbi Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "olbi/cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "olbi/errors.hpp"
#include "olbi/harness.hpp"
#include "olbi/theory.hpp"

namespace olbi::cli {
namespace {

using Json = nlohmann::ordered_json;

enum class Format { kCsv, kJson };

// Raw flag values with their defaults.
struct Flags {
  std::string algo = "olbi";
  std::int64_t n = 1000;
  std::int64_t k0 = 100;
  double sigma_x2 = 1.0;
  double snr_db = 20.0;
  double sigma_e2 = 1.0;
  std::string input = "iid";
  double delta = 8e-4;
  double gamma = 0.5;
  double rho = 0.0;
  double eps = 0.0;
  double kappa = 0.0;
  double alpha = 0.0;
  std::int64_t steps = 0;
  std::int64_t trials = 100;
  std::int64_t sample_every = 10;
  std::int64_t steady_window = 0;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::string output;
  std::string format = "csv";
  // sweep
  std::string param;
  std::vector<double> values;
  std::string range;
  // theory
  bool curve = false;
  std::int64_t horizon = 0;
};

struct Options {
  CLI::Option* gamma = nullptr;
  CLI::Option* rho = nullptr;
  CLI::Option* eps = nullptr;
  CLI::Option* kappa = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* sigma_e2 = nullptr;
  CLI::Option* horizon = nullptr;
};

// Resolved configuration, in output order, for the `#` header and the JSON
// "config" object.
Json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

// Ordered key/value pairs written as "# key=value" lines or a JSON object.
class ConfigRecord {
 public:
  void add(std::string key, std::string value) {
    Json j = value.empty() ? Json(nullptr) : Json(value);
    entries_.push_back({std::move(key), std::move(value), std::move(j)});
  }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
  void add(std::string key, double v) { entries_.push_back({std::move(key), format_number(v), json_number(v)}); }
  void add(std::string key, const std::optional<double>& v) {
    if (v) {
      add(std::move(key), *v);
    } else {
      add(std::move(key), std::string());
    }
  }
  void add(std::string key, bool v) { entries_.push_back({std::move(key), v ? "true" : "false", v}); }
  void add(std::string key, std::int64_t v) { entries_.push_back({std::move(key), std::to_string(v), v}); }
  void add(std::string key, std::uint64_t v) { entries_.push_back({std::move(key), std::to_string(v), v}); }

  void write_comments(std::ostream& os) const {
    for (const auto& e : entries_) os << "# " << e.key << '=' << e.text << '\n';
  }

  Json to_json() const {
    Json j = Json::object();
    for (const auto& e : entries_) j[e.key] = e.json;
    return j;
  }

 private:
  struct Entry {
    std::string key;
    std::string text;
    Json json;
  };
  std::vector<Entry> entries_;
};


Json json_number(const std::optional<double>& v) { return v ? json_number(*v) : Json(nullptr); }

double to_db(double v) { return 10.0 * std::log10(v); }

std::string format_optional(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

void add_output_flags(CLI::App* sub, Flags& f) {
  sub->add_option("-o,--output", f.output, "Output file");
  sub->add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void add_run_flags(CLI::App* sub, Flags& f, Options& o) {
  sub->add_option("--algo", f.algo, "lms, olbi, za, rza or l0")
      ->check(CLI::IsMember({"lms", "olbi", "za", "rza", "l0"}));
  sub->add_option("--n", f.n, "Filter length");
  sub->add_option("--k0", f.k0, "Nonzero count of the true system");
  sub->add_option("--sigma-x2", f.sigma_x2, "Input power");
  auto* snr = sub->add_option("--snr-db", f.snr_db, "Output SNR in dB (default 20)");
  o.sigma_e2 = sub->add_option("--sigma-e2", f.sigma_e2, "Noise power, instead of --snr-db");
  snr->excludes(o.sigma_e2);
  sub->add_option("--input", f.input, "iid or tdl (tapped delay line)")
      ->check(CLI::IsMember({"iid", "tdl"}));
  sub->add_option("--delta", f.delta, "Step size");
  o.gamma = sub->add_option("--gamma", f.gamma, "OLBI threshold (default 0.5)");
  o.rho = sub->add_option("--rho", f.rho, "ZA/RZA attraction strength");
  o.eps = sub->add_option("--eps", f.eps, "RZA shape");
  o.kappa = sub->add_option("--kappa", f.kappa, "l0 attraction strength");
  o.alpha = sub->add_option("--alpha", f.alpha, "l0 shape");
  sub->add_option("--steps", f.steps, "Iterations per trial (0 = automatic)");
  sub->add_option("--trials", f.trials, "Monte Carlo trials");
  sub->add_option("--sample-every", f.sample_every, "Trajectory stride");
  sub->add_option("--steady-window", f.steady_window, "Tail window in samples (0 = last 10%)");
  sub->add_option("--seed", f.seed, "Master seed");
  sub->add_option("--threads", f.threads, "Worker threads (0 = auto)");
  add_output_flags(sub, f);
}

void reject_if(bool given, const std::string& flag, const std::string& algo) {
  if (given) throw ParameterError(flag, "not used by --algo " + algo);
}

void require_given(const CLI::Option* opt, const std::string& flag, const std::string& algo) {
  if (opt->count() == 0) throw ParameterError(flag, "required by --algo " + algo);
}

AlgoParams algo_params(const Flags& f, const Options& o) {
  const auto algo = parse_algorithm(f.algo);
  if (!algo) throw ParameterError("algo", "unknown algorithm");
  const bool gamma = o.gamma->count() > 0, rho = o.rho->count() > 0, eps = o.eps->count() > 0,
             kappa = o.kappa->count() > 0, alpha = o.alpha->count() > 0;
  switch (*algo) {
    case Algorithm::kLms:
      reject_if(gamma, "--gamma", f.algo);
      reject_if(rho, "--rho", f.algo);
      reject_if(eps, "--eps", f.algo);
      reject_if(kappa, "--kappa", f.algo);
      reject_if(alpha, "--alpha", f.algo);
      return AlgoParams::lms(f.delta);
    case Algorithm::kOlbi:
      reject_if(rho, "--rho", f.algo);
      reject_if(eps, "--eps", f.algo);
      reject_if(kappa, "--kappa", f.algo);
      reject_if(alpha, "--alpha", f.algo);
      return AlgoParams::olbi(f.delta, f.gamma);
    case Algorithm::kZa:
      reject_if(gamma, "--gamma", f.algo);
      reject_if(eps, "--eps", f.algo);
      reject_if(kappa, "--kappa", f.algo);
      reject_if(alpha, "--alpha", f.algo);
      require_given(o.rho, "--rho", f.algo);
      return AlgoParams::za(f.delta, f.rho);
    case Algorithm::kRza:
      reject_if(gamma, "--gamma", f.algo);
      reject_if(kappa, "--kappa", f.algo);
      reject_if(alpha, "--alpha", f.algo);
      require_given(o.rho, "--rho", f.algo);
      require_given(o.eps, "--eps", f.algo);
      return AlgoParams::rza(f.delta, f.rho, f.eps);
    case Algorithm::kL0:
      reject_if(gamma, "--gamma", f.algo);
      reject_if(rho, "--rho", f.algo);
      reject_if(eps, "--eps", f.algo);
      require_given(o.kappa, "--kappa", f.algo);
      require_given(o.alpha, "--alpha", f.algo);
      return AlgoParams::l0(f.delta, f.kappa, f.alpha);
  }
  throw ParameterError("algo", "unknown algorithm");
}

RunSpec run_spec(const Flags& f, const Options& o) {
  RunSpec spec;
  spec.algo = algo_params(f, o);
  spec.scenario.n = f.n;
  spec.scenario.k0 = f.k0;
  spec.scenario.sigma_x2 = f.sigma_x2;
  if (o.sigma_e2->count() > 0) {
    spec.scenario.snr_db.reset();
    spec.scenario.sigma_e2 = f.sigma_e2;
  } else {
    spec.scenario.snr_db = f.snr_db;
  }
  spec.scenario.input_mode = *parse_input_mode(f.input);
  spec.steps = f.steps;
  spec.trials = f.trials;
  spec.sample_every = f.sample_every;
  spec.steady_window = f.steady_window;
  spec.master_seed = f.seed;
  spec.threads = f.threads;
  spec.validate();
  return spec;
}

void record_algo(ConfigRecord& rec, const AlgoParams& a, std::optional<SweepParam> swept = {}) {
  rec.add("algo", std::string(to_string(a.algo)));
  if (swept != SweepParam::kDelta) rec.add("delta", a.delta);
  switch (a.algo) {
    case Algorithm::kLms: break;
    case Algorithm::kOlbi:
      if (swept != SweepParam::kGamma) rec.add("gamma", a.gamma);
      break;
    case Algorithm::kZa: rec.add("rho", a.rho); break;
    case Algorithm::kRza:
      rec.add("rho", a.rho);
      rec.add("eps", a.eps);
      break;
    case Algorithm::kL0:
      rec.add("kappa", a.kappa);
      rec.add("alpha", a.alpha);
      break;
  }
}

// Everything needed to reproduce a run; thread count is omitted because it
// does not affect results.
ConfigRecord record_run(const std::string& command, const ResolvedRun& run) {
  ConfigRecord rec;
  rec.add("command", command);
  record_algo(rec, run.spec.algo);
  rec.add("n", run.scenario.n);
  rec.add("k0", run.scenario.k0);
  rec.add("sigma_x2", run.scenario.sigma_x2);
  rec.add("snr_db", run.scenario.snr_db);
  rec.add("sigma_e2", run.scenario.sigma_e2);
  rec.add("input", std::string(to_string(run.scenario.input_mode)));
  rec.add("steps", run.steps);
  rec.add("trials", run.spec.trials);
  rec.add("sample_every", run.spec.sample_every);
  rec.add("steady_window", run.steady_window);
  rec.add("seed", static_cast<std::uint64_t>(run.spec.master_seed));
  return rec;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> csv_rows;
  std::vector<std::vector<Json>> json_rows;
};

void write_table(std::ostream& os, Format format, const ConfigRecord& config,
                 const ConfigRecord& summary, const Table& table) {
  if (format == Format::kCsv) {
    os << "# olbi\n";
    config.write_comments(os);
    summary.write_comments(os);
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      os << (c ? "," : "") << table.columns[c];
    }
    os << '\n';
    for (const auto& row : table.csv_rows) {
      for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
      os << '\n';
    }
    return;
  }
  Json doc = Json::object();
  doc["config"] = config.to_json();
  doc["summary"] = summary.to_json();
  Json rows = Json::array();
  for (const auto& row : table.json_rows) {
    Json obj = Json::object();
    for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = row[c];
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << '\n';
}

// Destination stream for a subcommand, honoring OLBI_OUTPUT_DIR.
class Sink {
 public:
  Sink(const std::string& output, const std::string& command, Format format, std::ostream& out)
      : out_(&out) {
    std::filesystem::path path(output);
    const char* dir = std::getenv("OLBI_OUTPUT_DIR");
    if (path.empty() && dir && *dir) {
      path = std::string(command) + (format == Format::kCsv ? ".csv" : ".json");
    }
    if (path.empty()) return;
    if (path.is_relative() && dir && *dir) path = std::filesystem::path(dir) / path;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw ParameterError("output", "cannot open " + path.string());
  }

  std::ostream& stream() { return file_.is_open() ? file_ : *out_; }

 private:
  std::ostream* out_;
  std::ofstream file_;
};

Format parse_format(const std::string& s) { return s == "json" ? Format::kJson : Format::kCsv; }

int cmd_run(const Flags& f, const Options& o, std::ostream& out) {
  const ResolvedRun run = resolve(run_spec(f, o));
  const MsdTrajectory traj = run_experiment(run);
  const SteadyStateEstimate est = steady_state_msd(traj, run.spec);
  const auto theory = theory_trajectory(run.spec.algo, traj.scenario, traj.steps_sampled);

  ConfigRecord summary;
  summary.add("steady_msd_sim", est.value);
  summary.add("steady_msd_theory", steady_state_theory(run.spec.algo, traj.scenario));
  summary.add("transient_contaminated", est.transient_contaminated);
  summary.add("trials_used", traj.trials_used);
  summary.add("diverged_trials", traj.diverged_trials);
  summary.add("final_sparsity_mean", traj.final_sparsity_mean);

  Table table;
  table.columns = {"step", "msd", "msd_db", "theory_msd", "theory_msd_db"};
  for (std::size_t j = 0; j < traj.msd.size(); ++j) {
    std::optional<double> th;
    if (theory) th = (*theory)[j];
    const std::optional<double> th_db = th ? std::optional<double>(to_db(*th)) : std::nullopt;
    table.csv_rows.push_back({std::to_string(traj.steps_sampled[j]), format_number(traj.msd[j]),
                              format_number(traj.msd_db[j]), format_optional(th),
                              format_optional(th_db)});
    table.json_rows.push_back({traj.steps_sampled[j], json_number(traj.msd[j]),
                               json_number(traj.msd_db[j]), json_number(th), json_number(th_db)});
  }
  const Format format = parse_format(f.format);
  Sink sink(f.output, "run", format, out);
  write_table(sink.stream(), format, record_run("run", run), summary, table);
  return kExitOk;
}

int cmd_trajectory(const Flags& f, const Options& o, std::ostream& out) {
  const ResolvedRun run = resolve(run_spec(f, o));
  Table table;
  table.columns = {"trial", "step", "sq_misalignment", "diverged"};
  ConfigRecord summary;
  std::int64_t diverged = 0;
  for (std::int64_t t = 0; t < run.spec.trials; ++t) {
    const TrialRecord rec = run_trial(run, t);
    diverged += rec.diverged ? 1 : 0;
    for (std::size_t j = 0; j < rec.sq_misalignment.size(); ++j) {
      const auto step = static_cast<std::int64_t>(j) * run.spec.sample_every;
      const std::string flag = rec.diverged ? "1" : "0";
      table.csv_rows.push_back({std::to_string(t), std::to_string(step),
                                format_number(rec.sq_misalignment[j]), flag});
      table.json_rows.push_back({t, step, json_number(rec.sq_misalignment[j]), rec.diverged});
    }
  }
  summary.add("diverged_trials", diverged);
  const Format format = parse_format(f.format);
  Sink sink(f.output, "trajectory", format, out);
  write_table(sink.stream(), format, record_run("trajectory", run), summary, table);
  return diverged == run.spec.trials ? kExitDiverged : kExitOk;
}

std::vector<double> sweep_values(const Flags& f) {
  if (!f.values.empty() && !f.range.empty()) {
    throw ParameterError("--values", "give either --values or --range, not both");
  }
  if (!f.values.empty()) return f.values;
  if (f.range.empty()) throw ParameterError("--values", "a sweep needs --values or --range");
  std::vector<double> parts;
  std::stringstream ss(f.range);
  for (std::string item; std::getline(ss, item, ':');) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("--range", "expected start:stop:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0]) {
    throw ParameterError("--range", "expected start:stop:step with step > 0 and stop >= start");
  }
  const auto count = static_cast<std::int64_t>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9)) + 1;
  std::vector<double> values;
  for (std::int64_t i = 0; i < count; ++i) values.push_back(parts[0] + static_cast<double>(i) * parts[2]);
  return values;
}

int cmd_sweep(const Flags& f, const Options& o, std::ostream& out) {
  const RunSpec spec = run_spec(f, o);
  const auto param = parse_sweep_param(f.param);
  if (!param) throw ParameterError("--param", "must be one of delta, gamma, k0, snr_db");
  const std::vector<double> values = sweep_values(f);
  for (double v : values) with_param(spec, *param, v);
  const SweepResult result = sweep(spec, *param, values);

  ConfigRecord config;
  config.add("command", std::string("sweep"));
  config.add("param", std::string(to_string(*param)));
  std::string joined;
  for (double v : values) joined += (joined.empty() ? "" : ";") + format_number(v);
  config.add("values", joined);
  record_algo(config, spec.algo, *param);
  // the swept parameter's template value is not used
  config.add("n", spec.scenario.n);
  if (*param != SweepParam::kK0) config.add("k0", spec.scenario.k0);
  config.add("sigma_x2", spec.scenario.sigma_x2);
  if (*param != SweepParam::kSnrDb) {
    config.add("snr_db", spec.scenario.snr_db);
    if (!spec.scenario.snr_db) config.add("sigma_e2", spec.scenario.sigma_e2);
  }
  config.add("input", std::string(to_string(spec.scenario.input_mode)));
  config.add("steps", spec.steps);
  config.add("trials", spec.trials);
  config.add("sample_every", spec.sample_every);
  config.add("steady_window", spec.steady_window);
  config.add("seed", static_cast<std::uint64_t>(spec.master_seed));

  Table table;
  table.columns = {"param_value",        "steady_msd_sim", "steady_msd_sim_db",
                   "steady_msd_theory", "steady_msd_theory_db", "mean_sparsity",
                   "diverged_trials"};
  bool all_diverged = true;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double sim = result.steady_msd_sim[i];
    const auto& th = result.steady_msd_theory[i];
    const std::optional<double> th_db = th ? std::optional<double>(to_db(*th)) : std::nullopt;
    all_diverged = all_diverged && result.diverged_trials[i] == spec.trials;
    table.csv_rows.push_back({format_number(values[i]), format_number(sim),
                              format_number(to_db(sim)), format_optional(th),
                              format_optional(th_db), format_number(result.sparsity_sim[i]),
                              std::to_string(result.diverged_trials[i])});
    table.json_rows.push_back({values[i], json_number(sim), json_number(to_db(sim)),
                               json_number(th), json_number(th_db),
                               json_number(result.sparsity_sim[i]), result.diverged_trials[i]});
  }
  const Format format = parse_format(f.format);
  Sink sink(f.output, "sweep", format, out);
  write_table(sink.stream(), format, config, ConfigRecord{}, table);
  return all_diverged ? kExitDiverged : kExitOk;
}

int cmd_theory(const Flags& f, const Options& o, std::ostream& out) {
  if (!f.curve) {
    if (o.gamma->count() > 0) throw ParameterError("--gamma", "only used with --curve");
    if (o.horizon->count() > 0) throw ParameterError("--horizon", "only used with --curve");
  }
  const theory::SystemStats stats{f.n, f.k0, f.sigma_x2, f.sigma_e2};
  stats.validate();
  const double olbi_bound = theory::olbi_ms_stability_bound(stats);
  const double lms_bound = theory::lms_ms_stability_bound(stats);
  const double olbi = theory::olbi_steady_state_msd(f.delta, stats);
  std::optional<double> lms;
  if (f.delta < lms_bound) lms = theory::lms_steady_state_msd(f.delta, stats);

  ConfigRecord config;
  config.add("command", std::string("theory"));
  config.add("n", f.n);
  config.add("k0", f.k0);
  config.add("sigma_x2", f.sigma_x2);
  config.add("sigma_e2", f.sigma_e2);
  config.add("delta", f.delta);

  std::vector<std::pair<std::string, std::optional<double>>> quantities = {
      {"lms_mean_stability_bound", theory::white_input_mean_stability_bound(f.sigma_x2)},
      {"olbi_ms_stability_bound", olbi_bound},
      {"lms_ms_stability_bound", lms_bound},
      {"olbi_steady_state_msd", olbi},
      {"olbi_steady_state_msd_db", to_db(olbi)},
      {"lms_steady_state_msd", lms},
      {"lms_steady_state_msd_db", lms ? std::optional<double>(to_db(*lms)) : std::nullopt},
      {"msd_ratio_small_delta", theory::msd_ratio_small_delta(stats)},
      {"msd_ratio", lms && *lms > 0.0 ? std::optional<double>(olbi / *lms) : std::nullopt},
  };

  const Format format = parse_format(f.format);
  Table table;
  ConfigRecord summary;
  if (!f.curve) {
    table.columns = {"quantity", "value"};
    for (const auto& [name, value] : quantities) {
      table.csv_rows.push_back({name, format_optional(value)});
      table.json_rows.push_back({name, json_number(value)});
    }
  } else {
    ScenarioConfig sc;
    sc.n = f.n;
    sc.k0 = f.k0;
    sc.sigma_x2 = f.sigma_x2;
    sc.snr_db.reset();
    sc.sigma_e2 = f.sigma_e2;
    RunSpec spec;
    spec.scenario = sc;
    spec.algo = AlgoParams::olbi(f.delta, f.gamma);
    spec.sample_every = f.sample_every;
    spec.master_seed = f.seed;
    spec.validate();
    const ResolvedRun run = resolve(spec);
    const std::int64_t horizon = f.horizon > 0 ? f.horizon : run.steps;
    const auto curve = theory::instantaneous_msd_curve(run.scenario.w_star, f.delta, f.gamma,
                                                       run.scenario.stats(), 1);
    config.add("gamma", f.gamma);
    config.add("seed", f.seed);
    config.add("horizon", horizon);
    config.add("sample_every", f.sample_every);
    for (const auto& [name, value] : quantities) summary.add(name, value);
    std::string crossings;
    for (double t : curve.crossing_times) crossings += (crossings.empty() ? "" : ";") + format_number(t);
    summary.add("crossing_times", crossings);
    table.columns = {"step", "theory_msd", "theory_msd_db"};
    for (std::int64_t t = 0; t <= horizon; t += f.sample_every) {
      const double d = curve.at(t);
      table.csv_rows.push_back({std::to_string(t), format_number(d), format_number(to_db(d))});
      table.json_rows.push_back({t, json_number(d), json_number(to_db(d))});
    }
  }
  Sink sink(f.output, "theory", format, out);
  write_table(sink.stream(), format, config, summary, table);
  return kExitOk;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return {};
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sparse adaptive filtering experiments (OLBI and the LMS family)", "olbi"};
  app.require_subcommand(1);
  Flags f;
  Options run_o, traj_o, sweep_o, theory_o;

  auto* run_cmd = app.add_subcommand("run", "Averaged MSD trajectory with theory overlay");
  add_run_flags(run_cmd, f, run_o);
  auto* traj_cmd = app.add_subcommand("trajectory", "Per-trial squared misalignment");
  add_run_flags(traj_cmd, f, traj_o);
  auto* sweep_cmd = app.add_subcommand("sweep", "Steady-state MSD against one parameter");
  add_run_flags(sweep_cmd, f, sweep_o);
  sweep_cmd->add_option("--param", f.param, "delta, gamma, k0 or snr_db")->required();
  sweep_cmd->add_option("--values", f.values, "Comma-separated values")->delimiter(',');
  sweep_cmd->add_option("--range", f.range, "start:stop:step (inclusive)");

  auto* theory_cmd = app.add_subcommand("theory", "Closed-form bounds and MSD predictions");
  theory_cmd->add_option("--n", f.n, "Filter length");
  theory_cmd->add_option("--k0", f.k0, "Nonzero count of the true system");
  theory_cmd->add_option("--sigma-x2", f.sigma_x2, "Input power");
  theory_o.sigma_e2 = theory_cmd->add_option("--sigma-e2", f.sigma_e2, "Noise power (default 1)");
  theory_cmd->add_option("--delta", f.delta, "Step size");
  theory_cmd->add_flag("--curve", f.curve, "Emit the instantaneous MSD prediction");
  theory_o.gamma = theory_cmd->add_option("--gamma", f.gamma, "Threshold for --curve");
  theory_o.horizon = theory_cmd->add_option("--horizon", f.horizon, "Last step for --curve");
  theory_cmd->add_option("--seed", f.seed, "Seed drawing the true system for --curve");
  theory_cmd->add_option("--sample-every", f.sample_every, "Stride for --curve");
  add_output_flags(theory_cmd, f);

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "olbi: " << e.what() << '\n';
    return kExitConfig;
  }

  try {
    if (*run_cmd) return cmd_run(f, run_o, out);
    if (*traj_cmd) return cmd_trajectory(f, traj_o, out);
    if (*sweep_cmd) return cmd_sweep(f, sweep_o, out);
    if (*theory_cmd) return cmd_theory(f, theory_o, out);
  } catch (const AllTrialsDivergedError& e) {
    err << "olbi: " << e.what() << '\n';
    return kExitDiverged;
  } catch (const std::exception& e) {
    err << "olbi: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}

}  // namespace olbi::cli
