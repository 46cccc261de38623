// Benchmark harness: runs a set of nonsmooth test problems under one
// algorithm / tolerance-schedule configuration and reports per-problem step
// and oracle-call counts, plus machine-readable step traces.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <string>
#include <vector>

#include "nsbundle/bench.hpp"
#include "nsbundle/trace.hpp"

namespace {

// A JSON config file mirrors the long flags: {"problems": "all", "e0": 0.01}.
// Entries turn into arguments injected ahead of the command line, so explicit
// flags win.
std::vector<std::string> config_args(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw CLI::FileError(path.string());
  std::vector<std::string> args;
  if (path.extension() == ".json") {
    nlohmann::json doc = nlohmann::json::parse(in);
    for (const auto& [key, value] : doc.items()) {
      args.push_back("--" + key);
      if (value.is_boolean()) {
        if (!value.get<bool>()) args.pop_back();
        continue;
      }
      args.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  } else {
    // key=value lines, # comments
    std::string line;
    while (std::getline(in, line)) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t\r");
        const auto b = s.find_last_not_of(" \t\r");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) continue;
      if (value == "false") continue;
      args.push_back("--" + key);
      if (value != "true") args.push_back(value);
    }
  }
  return args;
}

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::string item;
  for (char c : csv) {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  if (!item.empty()) out.push_back(item);
  return out;
}

std::string trace_filename(const nsbundle::CellResult& cell,
                           const std::string& ext) {
  return "trace_" + cell.problem + "." + ext;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal bundle benchmark harness for nonsmooth convex problems"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  std::string problems = "all";
  std::string algo = "fpba1";
  double mu = 1.0;
  double mu_rho = 1.0;
  std::string eps_kind = "decay";
  double e0 = 0.1;
  double sigma = 0.5;
  double eps_floor = 1e-12;
  double ftol = 1e-6;
  int max_k = 250;
  std::string warm = "carry";
  std::string out_dir;
  std::string format = "table";
  bool strict = false;
  unsigned seed = 0;
  unsigned threads = 0;
  std::string config_path;

  app.add_option("--problems", problems,
                 "Comma list of names or 1-based indices, or 'all'");
  app.add_option("--algo", algo, "Algorithm")
      ->check(CLI::IsMember({"ppa", "pba", "fpba1", "fpba2"}));
  app.add_option("--mu", mu, "Proximity parameter mu_0")->check(CLI::PositiveNumber);
  app.add_option("--mu-rho", mu_rho,
                 "Geometric decay mu_k = mu_0 rho^k, rho in (0,1]");
  app.add_option("--eps-kind", eps_kind, "Tolerance schedule")
      ->check(CLI::IsMember({"const", "decay", "descent"}));
  app.add_option("--e0", e0, "Schedule tolerance eps_0");
  app.add_option("--sigma", sigma, "Descent-test parameter in (0,1)");
  app.add_option("--eps-floor", eps_floor,
                 "Descent-mode gap floor coefficient");
  app.add_option("--ftol", ftol, "Value-based stop tolerance");
  app.add_option("--max-k", max_k, "Outer step cap");
  app.add_option("--warm", warm, "Bundle reuse across steps")
      ->check(CLI::IsMember({"carry", "reset"}));
  app.add_option("--out", out_dir, "Directory for per-problem traces and summary");
  app.add_option("--format", format, "Summary format")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  app.add_flag("--strict", strict, "Abort on the first cell error");
  app.add_option("--seed", seed, "Reserved; all algorithms are deterministic");
  app.add_option("--threads", threads,
                 "Parallel cells (0: NSBUNDLE_THREADS or hardware)");
  app.add_option("--config", config_path, "Config file (key=value or .json)");

  try {
    // Pre-scan for --config so its contents act as defaults.
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (args[i] == "--config" && i + 1 < args.size()) {
        const auto injected = config_args(args[i + 1]);
        args.insert(args.begin(), injected.begin(), injected.end());
        break;
      }
    }
    // CLI11 parses reversed argv-style vectors.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "nsbench: " << e.what() << "\n";
    return 2;
  }

  try {
    nsbundle::RunConfig config;
    config.problems = split_list(problems);
    config.algo = nsbundle::variant_from_string(algo);
    config.mu = mu_rho == 1.0 ? nsbundle::MuSchedule::constant(mu)
                              : nsbundle::MuSchedule::geometric(mu, mu_rho);
    if (eps_kind == "const") {
      config.eps = nsbundle::EpsSchedule::constant(e0);
    } else if (eps_kind == "decay") {
      config.eps = nsbundle::EpsSchedule::decay(e0);
    } else {
      config.eps = nsbundle::EpsSchedule::descent(sigma, eps_floor);
    }
    config.ftol = ftol;
    config.max_outer = max_k;
    config.warm = warm == "carry" ? nsbundle::WarmStart::carry
                                  : nsbundle::WarmStart::reset;
    config.strict = strict;
    config.threads = threads;
    config.seed = seed;

    const nsbundle::BenchReport report = nsbundle::run_benchmark(config);

    if (format == "csv") {
      std::cout << nsbundle::summary_csv(report);
    } else if (format == "json") {
      std::cout << nsbundle::summary_json(report) << "\n";
    } else {
      std::cout << nsbundle::render_table(report);
    }

    if (!out_dir.empty()) {
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      const std::string ext = format == "json" ? "json" : "csv";
      for (const nsbundle::CellResult& cell : report.cells) {
        nsbundle::export_trace(cell.trace, ext, dir / trace_filename(cell, ext));
      }
      std::ofstream summary(dir / ("summary." + ext), std::ios::binary);
      if (!summary) {
        throw std::runtime_error("cannot open " + (dir / ("summary." + ext)).string());
      }
      summary << (format == "json" ? nsbundle::summary_json(report)
                                   : nsbundle::summary_csv(report));
    }

    return report.all_converged ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "nsbench: " << e.what() << "\n";
    return 2;
  }
}
