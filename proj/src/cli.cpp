#include "tagcoop/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "tagcoop/config.hpp"
#include "tagcoop/experiments.hpp"
#include "tagcoop/output.hpp"

namespace fs = std::filesystem;

namespace tagcoop {

namespace {

struct CommonOptions {
  std::string config_path;
  std::vector<std::string> settings;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> runs;
  std::optional<std::uint32_t> steps;
  std::string out_dir;
  unsigned parallel = 1;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "key = value config file");
  cmd->add_option("--set", opts.settings, "override one key, e.g. --set m=4");
  cmd->add_option("--seed", opts.seed, "master seed");
  cmd->add_option("--runs", opts.runs, "independent runs per configuration");
  cmd->add_option("--steps", opts.steps, "timesteps per run");
  cmd->add_option("--out", opts.out_dir, std::string("artifact directory (default $") +
                                             kOutDirEnv + " or ./results)");
  cmd->add_option("--parallel", opts.parallel, "worker threads (results do not depend on it)")
      ->check(CLI::PositiveNumber);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

SimConfig resolve_config(const CommonOptions& opts) {
  SimConfig config;
  if (!opts.config_path.empty()) {
    try {
      config = parse_config(read_file(opts.config_path));
    } catch (const ParseError& e) {
      throw ParseError(e.line(), opts.config_path + ": " + e.what());
    }
  }
  for (const auto& s : opts.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + s + "'");
    apply_setting(config, s.substr(0, eq), s.substr(eq + 1));
  }
  if (opts.seed) config.seed = *opts.seed;
  if (opts.runs) config.runs = *opts.runs;
  if (opts.steps) config.steps = *opts.steps;
  config.validate();
  return config;
}

fs::path resolve_out_dir(const CommonOptions& opts) {
  fs::path dir = "results";
  if (!opts.out_dir.empty()) {
    dir = opts.out_dir;
  } else if (const char* env = std::getenv(kOutDirEnv); env && *env) {
    dir = env;
  }
  fs::create_directories(dir);
  return dir;
}

class ArtifactWriter {
 public:
  explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir)) {}

  template <class Fn>
  void write(const std::string& name, Fn&& fn) {
    const fs::path path = dir_ / name;
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot write " + path.string());
    fn(file);
    file.flush();
    if (!file) throw std::runtime_error("write failed for " + path.string());
    names_.push_back(name);
  }

  void manifest(const std::string& name, RunManifest manifest) {
    manifest.artifacts = names_;
    const auto text = to_json(manifest).dump(2) + "\n";
    write(name, [&](std::ostream& o) { o << text; });
  }

  const fs::path& dir() const { return dir_; }

 private:
  fs::path dir_;
  std::vector<std::string> names_;
};

std::string describe(const std::optional<AggregateStat>& stat) {
  if (!stat) return "n/a";
  return format_number(stat->mean) + " +/- " + format_number(stat->ci_halfwidth);
}

void emit_timeseries(const std::string& name, const TimeseriesResult& result,
                     const ExperimentOptions& xopts, ArtifactWriter& writer, std::ostream& out) {
  writer.write(name + ".csv", [&](std::ostream& o) { write_timeseries_csv(o, result); });
  writer.write(name + "_runs.csv", [&](std::ostream& o) { write_run_summaries_csv(o, result); });
  RunManifest manifest;
  manifest.experiment = name;
  manifest.config = result.config;
  manifest.window = xopts.window;
  writer.manifest(name + ".manifest.json", manifest);
  out << name << ": stabilized ingroup " << describe(result.stabilized_ingroup)
      << ", outgroup " << describe(result.stabilized_outgroup) << ", overall "
      << describe(result.stabilized_overall) << '\n'
      << "wrote " << (writer.dir() / (name + ".csv")).string() << '\n';
}

void emit_sweep(const std::string& name, const SweepResult& result, const SimConfig& base,
                const ExperimentOptions& xopts, ArtifactWriter& writer, std::ostream& out) {
  writer.write(name + ".csv", [&](std::ostream& o) { write_sweep_csv(o, result); });
  writer.write(name + "_runs.csv", [&](std::ostream& o) { write_run_summaries_csv(o, result); });
  RunManifest manifest;
  manifest.experiment = name;
  manifest.config = base;
  manifest.window = xopts.window;
  manifest.sweep_parameter = result.parameter;
  for (const auto& p : result.points) manifest.sweep_values.push_back(p.value);
  writer.manifest(name + ".manifest.json", manifest);
  for (const auto& p : result.points) {
    out << name << ' ' << to_string(result.parameter) << '=' << format_number(p.value)
        << ": ingroup " << describe(p.ingroup) << ", outgroup " << describe(p.outgroup) << '\n';
  }
  out << "wrote " << (writer.dir() / (name + ".csv")).string() << '\n';
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || item.find_first_not_of(" \t", used) != std::string::npos) {
      throw ConfigError("invalid sweep value '" + item + "'");
    }
    values.push_back(v);
  }
  if (values.empty()) throw ConfigError("--values needs at least one value");
  return values;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prisoner's dilemma on random regular graphs with Bayesian agents and group tags",
               "tagcoop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonOptions opts;

  auto* run_cmd = app.add_subcommand("run", "simulate one configuration");
  add_common(run_cmd, opts);
  std::optional<std::uint64_t> log_run;
  run_cmd->add_option("--log-run", log_run, "also export the interaction log of this run index");

  auto* figure_cmd = app.add_subcommand("figure", "reproduce one of the five canned experiments");
  add_common(figure_cmd, opts);
  int figure = 0;
  figure_cmd->add_option("number", figure, "1-5")->required()->check(CLI::Range(1, 5));

  auto* sweep_cmd = app.add_subcommand("sweep", "stabilized rates across one parameter");
  add_common(sweep_cmd, opts);
  std::string sweep_param;
  std::string sweep_values;
  sweep_cmd->add_option("param", sweep_param, "b_over_c | m | r | epsilon | bias")->required();
  sweep_cmd->add_option("--values", sweep_values, "comma-separated values (default grid otherwise)");

  auto* graph_cmd = app.add_subcommand("validate-graph", "generate a graph and check it");
  add_common(graph_cmd, opts);
  std::string export_path;
  graph_cmd->add_option("--export", export_path, "write the edge list here");

  if (!args.empty() && !args.front().starts_with("-") && !app.get_subcommand_no_throw(args.front())) {
    err << "tagcoop: unknown subcommand '" << args.front()
        << "' (expected run, figure, sweep or validate-graph)\n";
    return 2;
  }

  // CLI11 wants argv order reversed when given a vector.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForVersion" ? std::string(kToolVersion) + "\n" : app.help());
      return 0;
    }
    err << "tagcoop: " << e.what() << '\n';
    return 2;
  }

  try {
    const SimConfig config = resolve_config(opts);
    ExperimentOptions xopts;
    xopts.parallel = opts.parallel;

    if (*graph_cmd) {
      Rng rng(derive_run_seed(config.seed, 0));
      const auto graph = generate_regular_graph(config.n, config.r, rng);
      const auto violations = validate_graph(graph);
      for (const auto& v : violations) err << "violation: " << v.description << '\n';
      if (!export_path.empty()) {
        std::ofstream file(export_path, std::ios::binary | std::ios::trunc);
        if (!file) throw std::runtime_error("cannot write " + export_path);
        write_edge_list(file, graph);
      }
      out << (violations.empty() ? "ok" : "invalid") << ": n=" << graph.n() << " r=" << graph.r()
          << " edges=" << graph.edges().size() << '\n';
      return violations.empty() ? 0 : 1;
    }

    ArtifactWriter writer(resolve_out_dir(opts));

    if (*run_cmd) {
      if (log_run && *log_run >= config.runs) {
        throw ConfigError("--log-run must be below runs (" + std::to_string(config.runs) + ")");
      }
      const auto result = run_timeseries(config, xopts);
      if (log_run) {
        writer.write("run_interactions_" + std::to_string(*log_run) + ".csv", [&](std::ostream& o) {
          write_interaction_log_header(o);
          run_simulation(config, *log_run,
                         [&](std::span<const InteractionRecord> recs) { write_interaction_log(o, recs); });
        });
      }
      emit_timeseries("run", result, xopts, writer, out);
      return 0;
    }

    if (*figure_cmd) {
      const std::string name = "figure" + std::to_string(figure);
      switch (figure) {
        case 1:
        case 2:
          emit_timeseries(name, experiment_baseline(figure == 2, xopts, config), xopts, writer, out);
          break;
        case 3: {
          SimConfig base = config;
          base.bias = true;
          emit_sweep(name, sweep_bc(default_sweep_values(SweepParam::kBOverC), xopts, base), base,
                     xopts, writer, out);
          break;
        }
        case 4: {
          SimConfig base = config;
          base.bias = true;
          emit_sweep(name, sweep_groups(default_sweep_values(SweepParam::kM), xopts, base), base,
                     xopts, writer, out);
          break;
        }
        default: {
          SimConfig base = config;
          base.bias = true;
          base.m = 20;
          emit_sweep(name, sweep_degree(default_sweep_values(SweepParam::kR), 20, xopts, base),
                     base, xopts, writer, out);
          break;
        }
      }
      return 0;
    }

    const SweepParam param = parse_sweep_param(sweep_param);
    SweepSpec spec{config, param,
                   sweep_values.empty() ? default_sweep_values(param) : parse_values(sweep_values),
                   config.runs};
    emit_sweep("sweep_" + sweep_param, run_sweep(spec, xopts), config, xopts, writer, out);
    return 0;
  } catch (const std::exception& e) {
    err << "tagcoop: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace tagcoop
