#include "omin/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "omin/bench.hpp"
#include "omin/dot.hpp"
#include "omin/message_file.hpp"
#include "omin/report.hpp"

namespace omin::cli {

namespace {

struct Options {
  // shared
  std::string file;
  std::optional<std::uint32_t> size;
  std::optional<std::string> format;

  // route
  std::uint32_t src = 0;
  std::uint32_t dst = 0;

  // schedule
  std::string algo;
  std::string mode = "paper";

  // bench
  std::vector<std::uint32_t> sizes;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> algos;
  std::optional<std::string> bench_mode;
  std::optional<unsigned> threads;
  std::string config;
  std::string output;
  bool no_timing = false;
};

MessageSet load(const Options& opt, std::uint32_t min_size) {
  LoadOptions lo;
  lo.size = opt.size;
  lo.min_size = min_size;
  if (opt.file == "-") return load_messages(std::cin, lo).messages;
  return load_messages(std::filesystem::path(opt.file), lo).messages;
}

ReportFormat format_of(const Options& opt, std::string_view fallback) {
  const std::string name = opt.format.value_or(std::string(fallback));
  auto f = parse_format(name);
  if (!f) throw InputError(fmt::format("unknown format '{}'", name));
  return *f;
}

ResolutionMode mode_of(std::string_view name) {
  auto m = parse_mode(name);
  if (!m) throw InputError(fmt::format("unknown mode '{}'", name));
  return *m;
}

Algorithm algorithm_of(std::string_view name) {
  auto a = parse_algorithm(name);
  if (!a) throw InputError(fmt::format("unknown algorithm '{}'", name));
  return *a;
}

int run_route(const Options& opt, std::ostream& out) {
  const auto cfg = NetworkConfig::from_size(opt.size.value_or(8));
  const Address s{opt.src}, d{opt.dst};
  cfg.check(s);
  cfg.check(d);
  if (format_of(opt, "text") == ReportFormat::json) {
    out << path_json(s, d, cfg).dump(2) << '\n';
  } else {
    out << path_text(s, d, cfg);
  }
  return kExitOk;
}

int run_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto ms = load(opt, 4);
  const auto analysis = analyze_messages(ms);
  if (format_of(opt, "json") == ReportFormat::json) {
    out << analysis_json(ms, analysis).dump(2) << '\n';
  } else {
    out << analysis_text(ms, analysis);
  }
  if (!analysis.consistent()) {
    err << "window and path conflict analyses disagree\n";
    return kExitInternal;
  }
  return kExitOk;
}

int run_schedule(const Options& opt, std::ostream& out) {
  const auto algo = algorithm_of(opt.algo);
  const bool two_pass = algo == Algorithm::address_selection ||
                        algo == Algorithm::route_selection;
  const auto ms = load(opt, two_pass ? 8 : 4);
  const auto schedule = run_algorithm(ms, algo, mode_of(opt.mode));
  out << emit_report(schedule, format_of(opt, "json"));
  return kExitOk;
}

BenchmarkConfig bench_config(const Options& opt) {
  BenchmarkConfig cfg;
  if (const char* env = std::getenv("OMIN_SEED"); env && *env) {
    try {
      cfg.seed = std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(fmt::format("OMIN_SEED='{}' is not an integer", env));
    }
  }
  if (!opt.config.empty()) {
    std::ifstream in(opt.config);
    if (!in) throw InputError(fmt::format("cannot read '{}'", opt.config));
    Json j;
    try {
      j = Json::parse(in);
      if (j.contains("sizes")) cfg.sizes = j.at("sizes").get<std::vector<std::uint32_t>>();
      if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
      if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
      if (j.contains("algorithms")) {
        cfg.algorithms.clear();
        for (const auto& name : j.at("algorithms")) {
          cfg.algorithms.push_back(algorithm_of(name.get<std::string>()));
        }
      }
      if (j.contains("mode")) cfg.mode = mode_of(j.at("mode").get<std::string>());
      if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
      if (j.contains("timing")) cfg.record_timing = j.at("timing").get<bool>();
    } catch (const Json::exception& e) {
      throw InputError(fmt::format("bad bench config '{}': {}", opt.config, e.what()));
    }
  }
  if (!opt.sizes.empty()) cfg.sizes = opt.sizes;
  if (opt.trials) cfg.trials = *opt.trials;
  if (opt.seed) cfg.seed = *opt.seed;
  if (!opt.algos.empty()) {
    cfg.algorithms.clear();
    for (const auto& a : opt.algos) cfg.algorithms.push_back(algorithm_of(a));
  }
  if (opt.bench_mode) cfg.mode = mode_of(*opt.bench_mode);
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.no_timing) cfg.record_timing = false;
  cfg.validate();
  return cfg;
}

int run_bench(const Options& opt, std::ostream& out) {
  const auto csv = to_csv(run_suite(bench_config(opt)));
  if (opt.output.empty()) {
    out << csv;
  } else {
    std::ofstream file(opt.output, std::ios::binary);
    if (!file) throw InputError(fmt::format("cannot write '{}'", opt.output));
    file << csv;
  }
  return kExitOk;
}

int run_dot(const Options& opt, std::ostream& out) {
  out << network_dot(load(opt, 4));
  return kExitOk;
}

}  // namespace

int dispatch(std::span<const std::string> args, std::ostream& out,
             std::ostream& err) {
  CLI::App app{"Optical omega network conflict analysis and pass scheduling",
               "omin"};
  app.require_subcommand(1);
  Options opt;

  auto* route = app.add_subcommand("route", "Print the path of one message");
  route->add_option("--src", opt.src, "Source address")->required();
  route->add_option("--dst", opt.dst, "Destination address")->required();
  route->add_option("--size", opt.size, "Network size N (default 8)");
  route->add_option("--format", opt.format, "text|json (default text)");

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Switch and link conflicts of a message file");
  analyze_cmd->add_option("file", opt.file, "Message file ('-' for stdin)")->required();
  analyze_cmd->add_option("--size", opt.size, "Network size N");
  analyze_cmd->add_option("--format", opt.format, "json|text (default json)");

  auto* schedule = app.add_subcommand("schedule", "Split a message file into passes");
  schedule->add_option("file", opt.file, "Message file ('-' for stdin)")->required();
  schedule->add_option("--algo", opt.algo,
                       "wm|heur-asc|heur-desc|heur-min|heur-max|asa|rsa")
      ->required();
  schedule->add_option("--mode", opt.mode, "paper|strict (default paper)");
  schedule->add_option("--size", opt.size, "Network size N");
  schedule->add_option("--format", opt.format, "json|text|csv (default json)");

  auto* bench = app.add_subcommand("bench", "Run the algorithms on random permutations");
  bench->add_option("--sizes", opt.sizes, "Network sizes, e.g. 8,16,32")->delimiter(',');
  bench->add_option("--trials", opt.trials, "Trials per size");
  bench->add_option("--seed", opt.seed, "Base seed (default $OMIN_SEED or 0)");
  bench->add_option("--algos", opt.algos, "Algorithms (default all)")->delimiter(',');
  bench->add_option("--mode", opt.bench_mode, "paper|strict (default paper)");
  bench->add_option("--threads", opt.threads, "Worker threads");
  bench->add_option("--config", opt.config, "JSON config file");
  bench->add_option("--output", opt.output, "Write CSV here instead of stdout");
  bench->add_flag("--no-timing", opt.no_timing, "Write 0 in the micros column");

  auto* dot = app.add_subcommand("dot", "Graphviz diagram with conflicts marked");
  dot->add_option("file", opt.file, "Message file ('-' for stdin)")->required();
  dot->add_option("--size", opt.size, "Network size N");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kExitInput;
  }

  try {
    if (*route) return run_route(opt, out);
    if (*analyze_cmd) return run_analyze(opt, out, err);
    if (*schedule) return run_schedule(opt, out);
    if (*bench) return run_bench(opt, out);
    if (*dot) return run_dot(opt, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  err << app.help();
  return kExitInput;
}

}  // namespace omin::cli
