// Seeded experiment runner and JSON report emission for the assignlab CLI.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace assignlab {

/// Malformed configuration: unknown experiment, bad dimensions, unreadable
/// config file, unwritable output path. The CLI maps it to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Experiment {
  Pechukas,
  Theorem1,
  Theorem2,
  Theorem3,
  Lemma1,
  Appendix,
  CompatDomain,
  Broadcast,
  DynamicsCp,
  Table1,
};

std::string_view to_string(Experiment e);
std::optional<Experiment> parse_experiment(std::string_view name);
const std::vector<Experiment>& all_experiments();

struct ExperimentConfig {
  Experiment experiment = Experiment::Table1;
  std::uint64_t seed = 1;
  int samples = 1000;
  int dim_s = 2;
  int dim_e = 2;
  double tol = 1e-10;
  std::optional<std::string> out_path;

  /// Throws UsageError unless samples >= 1, dims >= 2 and tol > 0.
  void validate() const;
};

/// Overlays the keys present in a JSON object (kebab-case, same names as the
/// CLI flags) onto `base`. Throws UsageError on malformed input.
ExperimentConfig merge_config_json(const ExperimentConfig& base,
                                   std::string_view json_text);

struct Metric {
  std::string name;
  double value = 0.0;
};

struct WitnessRecord {
  std::string description;
  std::optional<std::uint64_t> seed;
  std::vector<double> coefficients;
};

struct ExperimentReport {
  std::string experiment;
  ExperimentConfig config;
  bool pass = false;
  std::vector<Metric> metrics;
  std::vector<WitnessRecord> witnesses;
  double runtime_ms = 0.0;

  /// First metric with this name; throws std::out_of_range if absent.
  double metric(std::string_view name) const;
};

/// Throws UsageError for an invalid config, and for dimensions an experiment
/// does not support: pechukas, broadcast and table1 are qubit-only.
ExperimentReport run(const ExperimentConfig& config);

/// UTF-8 JSON with top-level keys in the order experiment, config, pass,
/// metrics, witnesses, runtime_ms. Floats use 17 significant digits.
std::string to_json(const ExperimentReport& report);

/// Writes to_json(report) plus a newline to `path`, or to `fallback` when no
/// path is given. Throws UsageError if the file cannot be written.
void emit(const ExperimentReport& report, const std::optional<std::string>& path,
          std::ostream& fallback);

}  // namespace assignlab
