#include "deleeuw/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "deleeuw/error.hpp"

namespace deleeuw::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

const json& field(const json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  const auto it = j.find(name);
  if (it == j.end()) throw ParseError(where, std::string("missing field '") + name + "'");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    try {
      return parse_scalar(j.get<std::string>());
    } catch (const Error& e) {
      throw ParseError(where, e.what());
    }
  }
  throw ParseError(where, "expected a number");
}

double number_or(const json& j, const char* name, double fallback, const std::string& where) {
  const auto it = j.find(name);
  return it == j.end() ? fallback : number(*it, where + "." + name);
}

std::string kind_of(const json& j, const std::string& where) {
  const auto& k = field(j, "kind", where);
  if (!k.is_string()) throw ParseError(where + ".kind", "expected a string");
  return k.get<std::string>();
}

template <class F>
auto rethrow(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(where, e.what());
  }
}

}  // namespace

cplx parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError(where, "expected a number or an [re, im] pair");
}

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

Function parse_function(const json& j, const std::string& where) {
  const std::string kind = kind_of(j, where);
  if (kind == "sampled") {
    const double x0 = number(field(j, "x0", where), where + ".x0");
    const double dx = number(field(j, "dx", where), where + ".dx");
    const auto& s = field(j, "samples", where);
    if (!s.is_array()) throw ParseError(where + ".samples", "expected an array");
    std::vector<cplx> vals;
    for (std::size_t i = 0; i < s.size(); ++i) vals.push_back(parse_complex(s[i], where + ".samples[" + std::to_string(i) + "]"));
    return rethrow(where, [&] { return Function(SampledFunction(std::move(vals), x0, dx)); });
  }
  if (kind == "trigpoly") {
    const auto& c = field(j, "coeffs", where);
    if (!c.is_object()) throw ParseError(where + ".coeffs", "expected an object keyed by frequency");
    std::map<int, cplx> m;
    for (const auto& [key, val] : c.items()) {
      int k = 0;
      const auto* b = key.data();
      const auto* e = b + key.size();
      const auto [ptr, ec] = std::from_chars(b, e, k);
      if (ec != std::errc() || ptr != e) throw ParseError(where + ".coeffs", "bad frequency key '" + key + "'");
      m[k] = parse_complex(val, where + ".coeffs." + key);
    }
    return rethrow(where, [&] { return Function(build_trigpoly(m)); });
  }
  if (kind == "named") {
    const auto& n = field(j, "name", where);
    if (!n.is_string()) throw ParseError(where + ".name", "expected a string");
    NamedParams p;
    p.dx = number_or(j, "dx", p.dx, where);
    p.radius = number_or(j, "radius", p.radius, where);
    p.sigma = number_or(j, "sigma", p.sigma, where);
    p.tail_tolerance = number_or(j, "tail_tolerance", p.tail_tolerance, where);
    return rethrow(where, [&] { return Function(named_function(n.get<std::string>(), p)); });
  }
  throw ParseError(where + ".kind", "unknown function kind '" + kind + "'");
}

Function load_function(const fs::path& path) { return parse_function(read_json(path), path.string()); }

json function_json(const SampledFunction& f) {
  json s = json::array();
  for (const auto& v : f.samples()) s.push_back(complex_json(v));
  return {{"kind", "sampled"}, {"x0", f.x0()}, {"dx", f.dx()}, {"samples", s}};
}

json function_json(const TrigPolynomial& f) {
  json c = json::object();
  for (const auto& [k, v] : f.to_map()) c[std::to_string(k)] = complex_json(v);
  return {{"kind", "trigpoly"}, {"coeffs", c}};
}

namespace {

spec::Symbol1D parse_symbol_1d(const json& j, const std::string& where) {
  const std::string kind = kind_of(j, where);
  if (kind == "constant") return spec::Constant1{parse_complex(field(j, "value", where), where + ".value")};
  if (kind == "gaussian") return spec::Gaussian1{number(field(j, "sigma", where), where + ".sigma")};
  if (kind == "phase") return spec::Phase1{number(field(j, "a", where), where + ".a")};
  if (kind == "sign") return spec::Sign1{};
  if (kind == "cutoff") return spec::Cutoff1{number(field(j, "cutoff", where), where + ".cutoff")};
  throw ParseError(where + ".kind", "unknown one-dimensional symbol kind '" + kind + "'");
}

Regularity parse_regularity(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where, "expected a string");
  const auto s = j.get<std::string>();
  if (s == "continuous") return Regularity::Continuous;
  if (s == "g_regulated") return Regularity::GRegulated;
  if (s == "measurable") return Regularity::Measurable;
  throw ParseError(where, "unknown regularity '" + s + "'");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

spec::Symbol2D parse_symbol(const json& j, const std::string& where, const fs::path& base) {
  const std::string kind = kind_of(j, where);
  if (kind == "constant") return spec::Constant{parse_complex(field(j, "value", where), where + ".value")};
  if (kind == "product") {
    return spec::Product{parse_symbol_1d(field(j, "m1", where), where + ".m1"),
                         parse_symbol_1d(field(j, "m2", where), where + ".m2")};
  }
  if (kind == "sign_alpha") return spec::SignAlpha{number(field(j, "alpha", where), where + ".alpha")};
  if (kind == "gaussian2d") return spec::Gaussian2D{number(field(j, "sigma", where), where + ".sigma")};
  if (kind == "shift") {
    return spec::Shift{number(field(j, "a", where), where + ".a"), number(field(j, "b", where), where + ".b")};
  }
  if (kind == "table") {
    spec::Table t;
    if (j.contains("csv")) {
      const auto& c = j["csv"];
      if (!c.is_string()) throw ParseError(where + ".csv", "expected a path");
      fs::path p = c.get<std::string>();
      if (p.is_relative()) p = base / p;
      t = parse_table_csv(read_text(p), p.string());
    } else {
      for (const auto& v : field(j, "xi", where)) t.xi.push_back(number(v, where + ".xi"));
      for (const auto& v : field(j, "eta", where)) t.eta.push_back(number(v, where + ".eta"));
      const auto& rows = field(j, "values", where);
      if (!rows.is_array()) throw ParseError(where + ".values", "expected an array of rows");
      for (std::size_t r = 0; r < rows.size(); ++r) {
        std::vector<cplx> row;
        for (const auto& v : rows[r]) row.push_back(parse_complex(v, where + ".values[" + std::to_string(r) + "]"));
        t.values.push_back(std::move(row));
      }
    }
    if (j.contains("regularity")) t.regularity = parse_regularity(j["regularity"], where + ".regularity");
    return t;
  }
  throw ParseError(where + ".kind", "unknown symbol kind '" + kind + "'");
}

spec::Symbol2D load_symbol(const fs::path& path) {
  return parse_symbol(read_json(path), path.string(), path.parent_path());
}

spec::Table parse_table_csv(std::string_view text, const std::string& where) {
  spec::Table t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  auto cells = [](const std::string& l) {
    std::vector<std::string> out;
    std::stringstream ss(l);
    std::string c;
    while (std::getline(ss, c, ',')) out.push_back(trim(c));
    return out;
  };
  auto num = [&](const std::string& c, std::size_t ln) {
    try {
      return parse_scalar(c);
    } catch (const Error&) {
      throw ParseError(where + ":" + std::to_string(ln), "bad number '" + c + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    const auto c = cells(line);
    if (t.xi.empty()) {
      if (c.size() < 3) throw ParseError(where + ":" + std::to_string(lineno), "header needs at least two xi values");
      for (std::size_t i = 1; i < c.size(); ++i) t.xi.push_back(num(c[i], lineno));
      continue;
    }
    if (c.size() != t.xi.size() + 1) {
      throw ParseError(where + ":" + std::to_string(lineno), "row has " + std::to_string(c.size()) +
                                                                 " cells, expected " + std::to_string(t.xi.size() + 1));
    }
    t.eta.push_back(num(c[0], lineno));
    std::vector<cplx> row;
    for (std::size_t i = 1; i < c.size(); ++i) row.emplace_back(num(c[i], lineno), 0.0);
    t.values.push_back(std::move(row));
  }
  if (t.xi.empty() || t.eta.size() < 2) throw ParseError(where, "table needs a header and at least two rows");
  return t;
}

double parse_scalar(std::string_view text) {
  const std::string s = trim(text);
  if (s == "inf" || s == "infinity") return kInf;
  if (const auto caret = s.find('^'); caret != std::string::npos) {
    return std::pow(parse_scalar(s.substr(0, caret)), parse_scalar(s.substr(caret + 1)));
  }
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    return parse_scalar(s.substr(0, slash)) / parse_scalar(s.substr(slash + 1));
  }
  double v = 0.0;
  const auto* b = s.data();
  const auto* e = b + s.size();
  const auto [ptr, ec] = std::from_chars(b, e, v);
  if (s.empty() || ec != std::errc() || ptr != e) throw DomainError("cannot parse number '" + s + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  std::string s(text);
  std::stringstream ss(s);
  std::string c;
  while (std::getline(ss, c, ',')) out.push_back(parse_scalar(c));
  if (out.empty()) throw DomainError("empty list");
  return out;
}

std::vector<double> parse_sweep(std::string_view text) {
  const std::string s = trim(text);
  constexpr std::string_view prefix = "geometric:";
  if (s.rfind(prefix, 0) == 0) {
    const std::string rest = s.substr(prefix.size());
    const auto dots = rest.find("..");
    const auto colon = rest.rfind(':');
    if (dots == std::string::npos || colon == std::string::npos || colon < dots) {
      throw DomainError("sweep must look like geometric:A..B:n");
    }
    const double a = parse_scalar(rest.substr(0, dots));
    const double b = parse_scalar(rest.substr(dots + 2, colon - dots - 2));
    const double n = parse_scalar(rest.substr(colon + 1));
    if (n < 1 || n != std::floor(n) || n > 1e6) throw DomainError("sweep point count must be a positive integer");
    return geometric_sequence(a, b, static_cast<int>(n));
  }
  return parse_list(s);
}

LoadedExperiment parse_experiment(const json& j, const std::string& where, const fs::path& base) {
  if (!j.is_object()) throw ParseError(where, "expected an object");
  const auto& sj = field(j, "symbol", where);
  spec::Symbol2D sym = sj.is_string() ? load_symbol(base / sj.get<std::string>())
                                      : parse_symbol(sj, where + ".symbol", base);
  ExperimentConfig cfg;
  if (j.contains("exps")) {
    const auto& e = j["exps"];
    std::vector<double> v;
    if (e.is_string()) {
      v = rethrow(where + ".exps", [&] { return parse_list(e.get<std::string>()); });
    } else if (e.is_array()) {
      for (const auto& x : e) v.push_back(number(x, where + ".exps"));
    } else {
      throw ParseError(where + ".exps", "expected a list of six exponents");
    }
    cfg.exps = rethrow(where + ".exps", [&] { return Exponents6::from_vector(v); });
  }
  if (j.contains("tgrid")) {
    const auto& t = j["tgrid"];
    if (t.is_string()) {
      cfg.t_grid = rethrow(where + ".tgrid", [&] { return parse_sweep(t.get<std::string>()); });
    } else if (t.is_array()) {
      cfg.t_grid.clear();
      for (const auto& x : t) cfg.t_grid.push_back(number(x, where + ".tgrid"));
    } else {
      throw ParseError(where + ".tgrid", "expected a sweep string or a list");
    }
  }
  auto integer = [&](const char* name, int fallback) {
    const double v = number_or(j, name, fallback, where);
    if (v < 1 || v != std::floor(v)) throw ParseError(where + "." + name, "expected a positive integer");
    return static_cast<int>(v);
  };
  cfg.trials = integer("trials", cfg.trials);
  cfg.real_trials = integer("real_trials", cfg.real_trials);
  cfg.torus.cells = static_cast<std::size_t>(integer("torus_cells", static_cast<int>(cfg.torus.cells)));
  cfg.torus.max_degree = integer("max_degree", cfg.torus.max_degree);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer() || j["seed"].get<long long>() < 0) throw ParseError(where + ".seed", "expected a nonnegative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("bridges")) {
    if (!j["bridges"].is_boolean()) throw ParseError(where + ".bridges", "expected true or false");
    cfg.bridges = j["bridges"].get<bool>();
  }
  if (j.contains("thresholds")) {
    const auto& th = j["thresholds"];
    const std::string w = where + ".thresholds";
    cfg.thresholds.uniformity_spread = number_or(th, "uniformity_spread", cfg.thresholds.uniformity_spread, w);
    cfg.thresholds.bridge_tail = number_or(th, "bridge_tail", cfg.thresholds.bridge_tail, w);
    cfg.thresholds.bridge_exact = number_or(th, "bridge_exact", cfg.thresholds.bridge_exact, w);
  }
  return {std::move(sym), std::move(cfg)};
}

LoadedExperiment load_experiment(const fs::path& path) {
  return parse_experiment(read_json(path), path.string(), path.parent_path());
}

json read_json(const fs::path& path) {
  const std::string text = read_text(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string(), std::string("invalid JSON: ") + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path.string(), "cannot open for writing");
  out << text;
  if (!out) throw ParseError(path.string(), "write failed");
}

}  // namespace deleeuw::io
