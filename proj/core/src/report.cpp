#include "assignlab/experiments.hpp"

#include <json.hpp>

#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <utility>

namespace assignlab {

namespace {

constexpr std::array<std::pair<Experiment, std::string_view>, 10> kNames{{
    {Experiment::Pechukas, "pechukas"},
    {Experiment::Theorem1, "theorem1"},
    {Experiment::Theorem2, "theorem2"},
    {Experiment::Theorem3, "theorem3"},
    {Experiment::Lemma1, "lemma1"},
    {Experiment::Appendix, "appendix"},
    {Experiment::CompatDomain, "compat-domain"},
    {Experiment::Broadcast, "broadcast"},
    {Experiment::DynamicsCp, "dynamics-cp"},
    {Experiment::Table1, "table1"},
}};

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

std::string quote(const std::string& s) { return nlohmann::json(s).dump(); }

}  // namespace

std::string_view to_string(Experiment e) {
  for (const auto& [k, name] : kNames)
    if (k == e) return name;
  return "unknown";
}

std::optional<Experiment> parse_experiment(std::string_view name) {
  for (const auto& [k, n] : kNames)
    if (n == name) return k;
  return std::nullopt;
}

const std::vector<Experiment>& all_experiments() {
  static const std::vector<Experiment> all = [] {
    std::vector<Experiment> v;
    for (const auto& entry : kNames) v.push_back(entry.first);
    return v;
  }();
  return all;
}

void ExperimentConfig::validate() const {
  if (samples < 1) throw UsageError("samples must be >= 1");
  if (dim_s < 2 || dim_e < 2) throw UsageError("dimensions must be >= 2");
  // Dense eigensolvers on (dim_s * dim_e)^2 operators; keep runs desk-sized.
  if (dim_s > 8 || dim_e > 16) throw UsageError("dimensions too large (dim-s <= 8, dim-e <= 16)");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw UsageError("tol must be > 0");
}

ExperimentConfig merge_config_json(const ExperimentConfig& base,
                                   std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw UsageError("config: top level must be an object");

  ExperimentConfig c = base;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "experiment") {
        const auto e = parse_experiment(value.get<std::string>());
        if (!e) throw UsageError("config: unknown experiment '" + value.get<std::string>() + "'");
        c.experiment = *e;
      } else if (key == "seed") {
        if (!value.is_number_unsigned()) throw UsageError("config: seed must be a non-negative integer");
        c.seed = value.get<std::uint64_t>();
      } else if (key == "samples") {
        c.samples = value.get<int>();
      } else if (key == "dim-s") {
        c.dim_s = value.get<int>();
      } else if (key == "dim-e") {
        c.dim_e = value.get<int>();
      } else if (key == "tol") {
        c.tol = value.get<double>();
      } else if (key == "out") {
        c.out_path = value.get<std::string>();
      } else {
        throw UsageError("config: unknown key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("config: wrong value type: ") + e.what());
  }
  return c;
}

double ExperimentReport::metric(std::string_view name) const {
  for (const auto& m : metrics)
    if (m.name == name) return m.value;
  throw std::out_of_range("no metric named " + std::string(name));
}

std::string to_json(const ExperimentReport& r) {
  std::ostringstream os;
  os << "{\n";
  os << "  \"experiment\": " << quote(r.experiment) << ",\n";
  os << "  \"config\": {"
     << "\"experiment\": " << quote(std::string(to_string(r.config.experiment)))
     << ", \"seed\": " << r.config.seed << ", \"samples\": " << r.config.samples
     << ", \"dim-s\": " << r.config.dim_s << ", \"dim-e\": " << r.config.dim_e
     << ", \"tol\": " << format_double(r.config.tol) << "},\n";
  os << "  \"pass\": " << (r.pass ? "true" : "false") << ",\n";
  os << "  \"metrics\": [";
  for (std::size_t i = 0; i < r.metrics.size(); ++i) {
    os << (i ? ",\n    " : "\n    ") << "{\"name\": " << quote(r.metrics[i].name)
       << ", \"value\": " << format_double(r.metrics[i].value) << "}";
  }
  os << (r.metrics.empty() ? "],\n" : "\n  ],\n");
  os << "  \"witnesses\": [";
  for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
    const auto& w = r.witnesses[i];
    os << (i ? ",\n    " : "\n    ") << "{\"description\": " << quote(w.description)
       << ", \"seed\": ";
    if (w.seed) {
      os << *w.seed;
    } else {
      os << "null";
    }
    os << ", \"coefficients\": [";
    for (std::size_t k = 0; k < w.coefficients.size(); ++k)
      os << (k ? ", " : "") << format_double(w.coefficients[k]);
    os << "]}";
  }
  os << (r.witnesses.empty() ? "],\n" : "\n  ],\n");
  os << "  \"runtime_ms\": " << format_double(r.runtime_ms) << "\n";
  os << "}";
  return os.str();
}

void emit(const ExperimentReport& report, const std::optional<std::string>& path,
          std::ostream& fallback) {
  const std::string text = to_json(report) + "\n";
  if (!path) {
    fallback << text;
    return;
  }
  std::ofstream f(*path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open output file '" + *path + "'");
  f << text;
  f.flush();
  if (!f) throw UsageError("failed writing output file '" + *path + "'");
}

}  // namespace assignlab
