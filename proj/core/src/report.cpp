#include "deleeuw/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace deleeuw {

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool ExperimentReport::passed() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

void ExperimentReport::add_verdict(std::string name, bool pass, std::string detail) {
  verdicts.push_back({std::move(name), pass, std::move(detail)});
}

const Verdict* ExperimentReport::verdict(const std::string& name) const {
  for (const auto& v : verdicts) {
    if (v.name == name) return &v;
  }
  return nullptr;
}

nlohmann::json ExperimentReport::to_json() const {
  using nlohmann::json;
  json j;
  j["kind"] = kind;
  if (!symbol_id.empty()) j["symbol"] = symbol_id;
  json ex = json::array();
  for (double e : exponents) ex.push_back(json_number(e));
  j["exponents"] = ex;
  j["sweep_name"] = sweep_name;
  json pts = json::array();
  for (const auto& p : sweep) {
    json r;
    r["sweep"] = json_number(p.sweep);
    r["max_ratio"] = json_number(p.max_ratio);
    r["median_ratio"] = json_number(p.median_ratio);
    r["gap"] = json_number(p.gap);
    if (!p.argmax.empty()) r["argmax"] = p.argmax;
    if (!p.extra.empty()) r["extra"] = p.extra;
    pts.push_back(std::move(r));
  }
  j["sweep"] = pts;
  j["constants"] = constants;
  j["thresholds"] = thresholds;
  j["summary"] = summary;
  json vs = json::array();
  for (const auto& v : verdicts) vs.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  j["verdicts"] = vs;
  j["verdict"] = passed() ? "PASS" : "FAIL";
  j["notes"] = notes;
  if (seed) j["seed"] = *seed;
  return j;
}

std::string ExperimentReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "sweep,max_ratio,median_ratio,gap\n";
  for (const auto& p : sweep) os << p.sweep << ',' << p.max_ratio << ',' << p.median_ratio << ',' << p.gap << '\n';
  return os.str();
}

}  // namespace deleeuw
