#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "deleeuw/experiment.hpp"
#include "deleeuw/funcspace.hpp"
#include "deleeuw/symbol.hpp"

namespace deleeuw::io {

using Function = std::variant<SampledFunction, TrigPolynomial>;

/// Complex number from a JSON number or an [re, im] pair.
cplx parse_complex(const nlohmann::json& j, const std::string& where);
nlohmann::json complex_json(cplx z);

/// {"kind": "sampled" | "trigpoly" | "named", ...}. `where` prefixes error messages.
Function parse_function(const nlohmann::json& j, const std::string& where);
Function load_function(const std::filesystem::path& path);
nlohmann::json function_json(const SampledFunction& f);
nlohmann::json function_json(const TrigPolynomial& f);

/// {"kind": "constant" | "product" | "sign_alpha" | "gaussian2d" | "shift" | "table", ...}.
/// Table paths are resolved against `base`.
spec::Symbol2D parse_symbol(const nlohmann::json& j, const std::string& where, const std::filesystem::path& base = {});
spec::Symbol2D load_symbol(const std::filesystem::path& path);

/// CSV with a header row of xi values (first cell ignored) and rows "eta, v1, v2, ...".
spec::Table parse_table_csv(std::string_view text, const std::string& where);

/// `geometric:A..B:n` (A, B as decimals or 2^k), or a comma-separated list.
std::vector<double> parse_sweep(std::string_view text);
/// Decimal, `inf`, or `b^k`.
double parse_scalar(std::string_view text);
/// Comma-separated scalars.
std::vector<double> parse_list(std::string_view text);

/// Experiment config: symbol (object or path), exps, tgrid, trials,
/// real_trials, seed, bridges, thresholds, torus_cells, max_degree.
struct LoadedExperiment {
  spec::Symbol2D symbol;
  ExperimentConfig config;
};
LoadedExperiment parse_experiment(const nlohmann::json& j, const std::string& where,
                                  const std::filesystem::path& base = {});
LoadedExperiment load_experiment(const std::filesystem::path& path);

nlohmann::json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace deleeuw::io
