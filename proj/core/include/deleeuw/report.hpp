#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace deleeuw {

/// JSON number for finite values; "inf", "-inf" or "nan" otherwise.
nlohmann::json json_number(double v);
/// Short scientific rendering for messages, e.g. 1.234e-07.
std::string sci(double v);

struct SweepPoint {
  double sweep = 0.0;
  double max_ratio = 0.0;
  double median_ratio = 0.0;
  double gap = 0.0;
  std::string argmax;
  nlohmann::json extra = nlohmann::json::object();
};

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Structured record of a lemma check or a transference run. Contains no
/// timestamps, so equal inputs and seeds give byte-identical JSON.
struct ExperimentReport {
  std::string kind;
  std::string symbol_id;
  /// (p1, q1, p2, q2, p3, q3) for operator runs; (p, q) for lemma checks.
  std::vector<double> exponents;
  std::string sweep_name = "t";
  std::vector<SweepPoint> sweep;
  nlohmann::json constants = nlohmann::json::object();
  nlohmann::json thresholds = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();
  std::vector<Verdict> verdicts;
  std::vector<std::string> notes;
  std::optional<std::uint64_t> seed;

  bool passed() const;
  void add_verdict(std::string name, bool pass, std::string detail = {});
  const Verdict* verdict(const std::string& name) const;

  nlohmann::json to_json() const;
  /// Header `sweep,max_ratio,median_ratio,gap`, one row per sweep point.
  std::string to_csv() const;
};

}  // namespace deleeuw
