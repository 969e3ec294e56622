// assignlab: run one assignment-map experiment and emit a JSON report.
//
// Exit status: 0 when the experiment passes, 1 when it fails, 2 on a usage
// error (bad flags, unknown experiment, invalid dimensions, unreadable config
// or unwritable output).

#include "assignlab/experiments.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw assignlab::UsageError("cannot read config file '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::uint64_t seed_from_env(std::uint64_t fallback) {
  const char* v = std::getenv("ASSIGNLAB_SEED");
  if (v == nullptr || *v == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long s = std::stoull(v, &used, 10);
    if (used != std::string(v).size()) throw std::invalid_argument(v);
    return s;
  } catch (const std::exception&) {
    throw assignlab::UsageError(std::string("ASSIGNLAB_SEED is not an unsigned integer: ") + v);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical checks for linear assignment maps of open quantum systems"};

  std::string experiment;
  std::uint64_t seed = 0;
  int samples = 0;
  int dim_s = 0;
  int dim_e = 0;
  double tol = 0.0;
  std::string out;
  std::string config_path;

  std::string names;
  for (auto e : assignlab::all_experiments()) {
    if (!names.empty()) names += ", ";
    names += std::string(assignlab::to_string(e));
  }

  auto* opt_experiment =
      app.add_option("--experiment", experiment, "One of: " + names);
  auto* opt_seed = app.add_option("--seed", seed, "Master seed (default $ASSIGNLAB_SEED or 1)");
  auto* opt_samples = app.add_option("--samples", samples, "Random samples per check (default 1000)");
  auto* opt_dim_s = app.add_option("--dim-s", dim_s, "System dimension (default 2)");
  auto* opt_dim_e = app.add_option("--dim-e", dim_e, "Environment dimension (default 2)");
  auto* opt_tol = app.add_option("--tol", tol, "Positivity tolerance (default 1e-10)");
  auto* opt_out = app.add_option("--out", out, "Write the JSON report here instead of stdout");
  app.add_option("--config", config_path, "JSON file with the same keys as the flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    assignlab::ExperimentConfig config;
    config.seed = seed_from_env(config.seed);
    if (!config_path.empty())
      config = assignlab::merge_config_json(config, read_file(config_path));

    if (*opt_experiment) {
      const auto e = assignlab::parse_experiment(experiment);
      if (!e) throw assignlab::UsageError("unknown experiment '" + experiment + "'");
      config.experiment = *e;
    } else if (config_path.empty()) {
      throw assignlab::UsageError("--experiment is required");
    }
    if (*opt_seed) config.seed = seed;
    if (*opt_samples) config.samples = samples;
    if (*opt_dim_s) config.dim_s = dim_s;
    if (*opt_dim_e) config.dim_e = dim_e;
    if (*opt_tol) config.tol = tol;
    if (*opt_out) config.out_path = out;
    config.validate();

    const assignlab::ExperimentReport report = assignlab::run(config);
    assignlab::emit(report, config.out_path, std::cout);
    return report.pass ? 0 : 1;
  } catch (const assignlab::UsageError& e) {
    std::cerr << "assignlab: " << e.what() << "\n";
    return kExitUsage;
  }
}
