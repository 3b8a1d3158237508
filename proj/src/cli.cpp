#include "liespline/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>

#include "liespline/error.hpp"
#include "liespline/runner.hpp"

#ifndef LIESPLINE_FIXTURE_DIR
#define LIESPLINE_FIXTURE_DIR "fixtures"
#endif

namespace liespline::cli {
namespace fs = std::filesystem;

fs::path fixture_dir() {
  if (const char* env = std::getenv("LIESPLINE_FIXTURES"); env && *env) return env;
  return LIESPLINE_FIXTURE_DIR;
}

fs::path resolve_scenario(const std::string& arg) {
  const fs::path direct(arg);
  if (fs::is_regular_file(direct)) return direct;
  for (const fs::path& candidate : {fixture_dir() / arg, fixture_dir() / (arg + ".json")}) {
    if (fs::is_regular_file(candidate)) return candidate;
  }
  throw ScenarioError("scenario", "no file or fixture named '" + arg + "'");
}

namespace {

fs::path output_dir(const std::string& flag, const Scenario& s) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LIESPLINE_OUT_DIR"); env && *env) return env;
  if (!s.output.dir.empty()) return s.output.dir;
  return "out";
}

void report_run(std::ostream& out, const RunResult& r, const std::vector<fs::path>& files) {
  for (const VariantResult& v : r.variants) {
    out << v.label;
    if (v.has_reference) {
      out << "  max eps_r " << format_double(v.max_error.eps_r) << "  max eps_p " << format_double(v.max_error.eps_p);
    }
    out << '\n';
  }
  for (const fs::path& f : files) out << "wrote " << f.string() << '\n';
}

void report_sweep(std::ostream& out, const SweepResult& r, const std::vector<fs::path>& files) {
  for (const SlopeFit& f : r.slopes) {
    out << f.label << "  slope eps_r " << (f.eps_r ? format_double(*f.eps_r) : "n/a") << "  slope eps_p "
        << (f.eps_p ? format_double(*f.eps_p) : "n/a") << '\n';
  }
  for (const fs::path& f : files) out << "wrote " << f.string() << '\n';
}

int list_fixtures(std::ostream& out) {
  std::vector<fs::path> files;
  if (fs::is_directory(fixture_dir())) {
    for (const auto& entry : fs::directory_iterator(fixture_dir())) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    const Scenario s = load_scenario(f);
    out << f.stem().string() << "  " << s.reproduces << '\n';
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lie group interpolation and spline runs from JSON scenarios"};
  app.require_subcommand(1);

  std::string scenario_arg, out_flag;
  std::optional<int> samples;
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Run a scenario file or fixture (including its sweep, if any)");
  run->add_option("scenario", scenario_arg, "scenario JSON path or fixture name")->required();
  run->add_option("--out", out_flag, "output directory");
  run->add_option("--samples", samples, "override output.samples")->check(CLI::Range(2, 10000000));
  run->add_option("--seed", seed, "override random.seed");

  std::string param;
  std::vector<double> values;
  std::string metric = "max";
  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one parameter of a scenario");
  sweep->add_option("scenario", scenario_arg, "scenario JSON path or fixture name")->required();
  sweep->add_option("--param", param, "segment_length, knots, samples or steps")->required();
  sweep->add_option("--values", values, "parameter values")->required();
  sweep->add_option("--metric", metric, "max or midpoint");
  sweep->add_option("--out", out_flag, "output directory");
  sweep->add_option("--seed", seed, "override random.seed");

  CLI::App* validate = app.add_subcommand("validate", "Parse and validate a scenario without running it");
  validate->add_option("scenario", scenario_arg, "scenario JSON path or fixture name")->required();

  CLI::App* list = app.add_subcommand("list-fixtures", "List bundled fixtures");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (list->parsed()) return list_fixtures(out);
    const Scenario s = load_scenario(resolve_scenario(scenario_arg));
    if (validate->parsed()) {
      out << s.name << ": ok\n";
      return kOk;
    }
    RunOptions options{samples, seed};
    const fs::path dir = output_dir(out_flag, s);
    if (sweep->parsed()) {
      const SweepSpec spec{param, values, metric};
      const SweepResult r = run_sweep(s, spec, options);
      report_sweep(out, r, write_sweep(s, r, dir));
      return kOk;
    }
    const RunResult r = run_scenario(s, options);
    std::vector<fs::path> files = write_run(s, r, dir);
    if (s.sweep) {
      const SweepResult sr = run_sweep(s, *s.sweep, options);
      report_run(out, r, files);
      report_sweep(out, sr, write_sweep(s, sr, dir));
      return kOk;
    }
    report_run(out, r, files);
    return kOk;
  } catch (const ScenarioError& e) {
    err << "error: " << e.what() << '\n';
    return e.field() == "output.dir" ? kIoError : kInvalidInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.numerical() ? kNumerical : kInvalidInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  }
}

}  // namespace liespline::cli
