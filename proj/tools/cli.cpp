#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "deleeuw/error.hpp"
#include "deleeuw/experiment.hpp"
#include "deleeuw/io.hpp"
#include "deleeuw/lemmas.hpp"
#include "deleeuw/lorentz.hpp"
#include "deleeuw/operators.hpp"

namespace deleeuw::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

double scalar_flag(const std::string& text, const char* flag) {
  try {
    return io::parse_scalar(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--") + flag + ": " + e.what());
  }
}

std::vector<double> sweep_flag(const std::string& text, const char* flag) {
  try {
    return io::parse_sweep(text);
  } catch (const Error& e) {
    throw UsageError(std::string("--") + flag + ": " + e.what());
  }
}

struct Outputs {
  std::string report;
  std::string csv;

  void add_to(CLI::App* app, const std::string& command) {
    report = command + "_report.json";
    app->add_option("--out", report, "JSON report path")->capture_default_str();
    app->add_option("--csv", csv, "CSV table path (default: report path with .csv)");
  }

  void write(const ExperimentReport& rep, bool with_csv) const {
    io::write_text(report, rep.to_json().dump(2) + "\n");
    if (!with_csv) return;
    fs::path c = csv.empty() ? fs::path(report).replace_extension(".csv") : fs::path(csv);
    io::write_text(c, rep.to_csv());
  }
};

struct NormArgs {
  std::string fn, p = "2", q = "2", domain = "line", method = "rearrangement";
  std::size_t cells = 1024;
  Outputs out;
};

struct ApplyArgs {
  std::string symbol, f, g, result, t = "1";
  int band = 5;
  int per_unit = 17;
  double tail_tolerance = 1e-8;
  bool naive = false;
  Outputs out;
};

struct RealToroArgs {
  std::string fn, p = "2", q = "2", tseq = "geometric:2^-1..2^-6:6";
  RealToroOptions opts;
  Outputs out;
};

struct TororealdosArgs {
  std::string fn, p = "2", q = "2";
  int k = 1;
  TororealdosOptions opts;
  Outputs out;
};

struct SandwichArgs {
  std::string fn, phi, p = "2", q = "2", eps = "geometric:2^-1..2^-8:8";
  std::size_t torus_cells = 1024;
  SandwichOptions opts;
  Outputs out;
};

struct TransferArgs {
  std::string config, symbol, exps, tgrid;
  std::optional<int> trials, real_trials, max_degree;
  std::optional<std::size_t> torus_cells;
  std::optional<std::uint64_t> seed;
  std::optional<double> spread, bridge_tail, bridge_exact;
  bool bridges = false;
  Outputs out;
};

struct GCheckArgs {
  std::string symbol, eps = "geometric:2^-1..2^-6:6", points;
  GCheckOptions opts;
  Outputs out;
};

LorentzExponents exponents(const std::string& p, const std::string& q, Domain d) {
  try {
    return LorentzExponents::make(scalar_flag(p, "p"), scalar_flag(q, "q"), d);
  } catch (const DomainError& e) {
    throw UsageError(std::string("exponents: ") + e.what());
  }
}

SampledFunction as_sampled(const io::Function& f, const std::string& path) {
  if (const auto* s = std::get_if<SampledFunction>(&f)) return *s;
  throw ParseError(path, "expected a sampled or named function");
}

TrigPolynomial as_trig(const io::Function& f, const std::string& path) {
  if (const auto* t = std::get_if<TrigPolynomial>(&f)) return *t;
  throw ParseError(path, "expected a trigpoly function");
}

int finish(const ExperimentReport& rep, const Outputs& o, std::ostream& out, bool csv = true) {
  o.write(rep, csv);
  for (const auto& v : rep.verdicts) out << (v.pass ? "PASS " : "FAIL ") << v.name << ": " << v.detail << "\n";
  out << "verdict: " << (rep.passed() ? "PASS" : "FAIL") << " (report " << o.report << ")\n";
  return rep.passed() ? kExitOk : kExitFail;
}

int run_norm(const NormArgs& a, std::ostream& out) {
  const Domain d = a.domain == "torus" ? Domain::Torus : Domain::Line;
  const auto e = exponents(a.p, a.q, d);
  const auto fn = io::load_function(a.fn);
  SampledFunction f = std::holds_alternative<TrigPolynomial>(fn)
                          ? sample_on_torus(std::get<TrigPolynomial>(fn), a.cells)
                          : std::get<SampledFunction>(fn);
  if (d == Domain::Line && std::holds_alternative<TrigPolynomial>(fn)) {
    throw UsageError("a trigpoly function needs --domain torus");
  }
  if (d == Domain::Torus && std::holds_alternative<SampledFunction>(fn)) {
    try {
      f = periodize_cells(f);
    } catch (const DomainError& ex) {
      throw UsageError(std::string("torus norm of a sampled function: ") + ex.what());
    }
  }
  const auto method = a.method == "distribution" ? NormMethod::DistributionIntegral : NormMethod::Rearrangement;
  const double v = lorentz_norm(f, e, method);

  ExperimentReport rep;
  rep.kind = "norm";
  rep.exponents = {e.p, e.q};
  rep.summary = {{"function", a.fn}, {"domain", a.domain}, {"method", a.method}, {"norm", json_number(v)}};
  if (std::holds_alternative<TrigPolynomial>(fn)) rep.summary["cells"] = a.cells;
  a.out.write(rep, false);
  out << json_number(v).dump() << "\n";
  return kExitOk;
}

int run_apply(const ApplyArgs& a, std::ostream& out) {
  const auto sym = make_symbol(io::load_symbol(a.symbol));
  const double t = scalar_flag(a.t, "t");
  if (!(t > 0.0) || !std::isfinite(t)) throw UsageError("--t must be positive and finite");
  const auto f = io::load_function(a.f);
  const auto g = io::load_function(a.g);
  if (f.index() != g.index()) throw UsageError("--f and --g must both be sampled or both be trigpoly");

  ExperimentReport rep;
  rep.kind = "apply";
  rep.symbol_id = sym.id();
  rep.summary = {{"t", t}, {"result", a.result}};
  for (const auto& fl : sym.flags()) rep.notes.push_back("symbol flag: " + fl);
  json result;
  if (std::holds_alternative<TrigPolynomial>(f)) {
    const auto r = apply_Pm(sym, t, std::get<TrigPolynomial>(f), std::get<TrigPolynomial>(g));
    result = io::function_json(r);
    rep.summary["operator"] = "P_m";
    rep.summary["degree"] = r.degree();
  } else {
    const auto fs_ = std::get<SampledFunction>(f);
    CmOptions cm;
    cm.xi_grid = cm.eta_grid = frequency_band(a.band, a.per_unit);
    cm.t = t;
    cm.allow_separable = !a.naive;
    cm.tail_tolerance = a.tail_tolerance;
    const auto r = apply_Cm(sym, fs_, std::get<SampledFunction>(g), fs_.grid(), cm);
    result = io::function_json(r);
    rep.summary["operator"] = "C_m";
    rep.thresholds = {{"band", a.band}, {"per_unit", a.per_unit}, {"tail_tolerance", a.tail_tolerance}};
  }
  io::write_text(a.result, result.dump() + "\n");
  a.out.write(rep, false);
  out << "wrote " << a.result << "\n";
  return kExitOk;
}

int run_realtoro(const RealToroArgs& a, std::ostream& out) {
  const auto e = exponents(a.p, a.q, Domain::Line);
  const auto f = as_sampled(io::load_function(a.fn), a.fn);
  const auto ts = sweep_flag(a.tseq, "tseq");
  return finish(check_lemma_realtoro(f, e.p, e.q, ts, a.opts), a.out, out);
}

int run_tororealdos(const TororealdosArgs& a, std::ostream& out) {
  const auto e = exponents(a.p, a.q, Domain::Line);
  const auto f = as_trig(io::load_function(a.fn), a.fn);
  return finish(check_lemma_tororealdos(f, e.p, e.q, a.k, a.opts), a.out, out);
}

int run_sandwich(const SandwichArgs& a, std::ostream& out) {
  const auto e = exponents(a.p, a.q, Domain::Line);
  const auto fn = io::load_function(a.fn);
  SampledFunction phi = a.phi.empty() ? named_function("custom_gaussian", {.dx = 1.0 / 64.0, .radius = 8.0})
                                      : as_sampled(io::load_function(a.phi), a.phi);
  const auto eps = sweep_flag(a.eps, "eps");
  if (const auto* t = std::get_if<TrigPolynomial>(&fn)) {
    auto opts = a.opts;
    opts.cells = a.torus_cells;
    return finish(check_lemma_sandwich(*t, phi, e.p, e.q, eps, opts), a.out, out);
  }
  return finish(check_lemma_sandwich(std::get<SampledFunction>(fn), phi, e.p, e.q, eps, a.opts), a.out, out);
}

int run_transfer(const TransferArgs& a, std::ostream& out) {
  io::LoadedExperiment le;
  if (!a.config.empty()) {
    le = io::load_experiment(a.config);
  } else if (a.symbol.empty()) {
    throw UsageError("transfer needs --symbol or --config");
  }
  if (!a.symbol.empty()) le.symbol = io::load_symbol(a.symbol);
  auto& c = le.config;
  if (!a.exps.empty()) {
    try {
      c.exps = Exponents6::from_vector(io::parse_list(a.exps));
    } catch (const Error& e) {
      throw UsageError(std::string("--exps: ") + e.what());
    }
  }
  if (!a.tgrid.empty()) c.t_grid = sweep_flag(a.tgrid, "tgrid");
  if (a.trials) c.trials = *a.trials;
  if (a.real_trials) c.real_trials = *a.real_trials;
  if (a.max_degree) c.torus.max_degree = *a.max_degree;
  if (a.torus_cells) c.torus.cells = *a.torus_cells;
  if (a.seed) c.seed = *a.seed;
  if (a.bridges) c.bridges = true;
  if (a.spread) c.thresholds.uniformity_spread = *a.spread;
  if (a.bridge_tail) c.thresholds.bridge_tail = *a.bridge_tail;
  if (a.bridge_exact) c.thresholds.bridge_exact = *a.bridge_exact;
  try {
    c.exps.validate();
  } catch (const DomainError& e) {
    throw UsageError(std::string("exponents: ") + e.what());
  }
  const auto sym = make_symbol(le.symbol);
  return finish(run_transference_experiment(sym, c), a.out, out);
}

std::vector<std::pair<double, double>> parse_points(const std::string& text) {
  std::vector<std::pair<double, double>> pts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw UsageError("--points: expected x:y;x:y;...");
    pts.emplace_back(scalar_flag(item.substr(0, colon), "points"), scalar_flag(item.substr(colon + 1), "points"));
  }
  if (pts.empty()) throw UsageError("--points: no points given");
  return pts;
}

/// 20 points on the circle of radius 3/2, kept at distance >= 3/10 from a sign ridge.
std::vector<std::pair<double, double>> default_points(const Symbol2D& m) {
  std::vector<std::pair<double, double>> pts;
  for (int j = 0; pts.size() < 20 && j < 400; ++j) {
    const double th = 0.1 + 2.0 * kPi * j / 40.0;
    const double x = 1.5 * std::cos(th), y = 1.5 * std::sin(th);
    if (const auto& r = m.ridge()) {
      if (std::abs(x + r->second * y) / std::sqrt(1.0 + r->second * r->second) < 0.3) continue;
    }
    pts.emplace_back(x, y);
  }
  return pts;
}

int run_gcheck(const GCheckArgs& a, std::ostream& out) {
  const auto sym = make_symbol(io::load_symbol(a.symbol));
  const auto eps = sweep_flag(a.eps, "eps");
  const auto pts = a.points.empty() ? default_points(sym) : parse_points(a.points);
  return finish(check_g_regulated(sym, pts, eps, a.opts), a.out, out);
}

void write_error_report(const std::string& path, const std::string& command, const std::string& msg) {
  if (path.empty()) return;
  try {
    json j = {{"kind", command}, {"verdict", "ERROR"}, {"error", msg}};
    io::write_text(path, j.dump(2) + "\n");
  } catch (const Error&) {
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bilinear multipliers on the line and the torus: Lorentz norms, lemma checks and transference runs",
               "deleeuw"};
  app.require_subcommand(1);

  NormArgs na;
  auto* norm = app.add_subcommand("norm", "Lorentz quasi-norm of a function file");
  norm->add_option("--fn", na.fn, "Function JSON")->required()->check(CLI::ExistingFile);
  norm->add_option("--p", na.p, "Exponent p (number, 2^k or inf)")->capture_default_str();
  norm->add_option("--q", na.q, "Exponent q (number, 2^k or inf)")->capture_default_str();
  norm->add_option("--domain", na.domain)->check(CLI::IsMember({"line", "torus"}))->capture_default_str();
  norm->add_option("--method", na.method)
      ->check(CLI::IsMember({"rearrangement", "distribution"}))
      ->capture_default_str();
  norm->add_option("--cells", na.cells, "Torus cells for trigpoly inputs")->check(CLI::Range(2, 1 << 24))->capture_default_str();
  na.out.add_to(norm, "norm");

  ApplyArgs aa;
  auto* apply = app.add_subcommand("apply", "Evaluate C_m (sampled inputs) or P_m (trigpoly inputs)");
  apply->add_option("--symbol", aa.symbol, "Symbol JSON")->required()->check(CLI::ExistingFile);
  apply->add_option("--f", aa.f, "First function JSON")->required()->check(CLI::ExistingFile);
  apply->add_option("--g", aa.g, "Second function JSON")->required()->check(CLI::ExistingFile);
  apply->add_option("--result", aa.result, "Output function JSON")->required();
  apply->add_option("--t", aa.t, "Dilation of the symbol")->capture_default_str();
  apply->add_option("--band", aa.band, "Frequency band half-width")->check(CLI::Range(1, 1000))->capture_default_str();
  apply->add_option("--per-unit", aa.per_unit, "Frequency cells per unit (odd)")->capture_default_str();
  apply->add_option("--tail-tolerance", aa.tail_tolerance)->capture_default_str();
  apply->add_flag("--naive", aa.naive, "Disable the separable fast path");
  aa.out.add_to(apply, "apply");

  auto* lemma = app.add_subcommand("lemma", "Run one lemma check");
  lemma->require_subcommand(1);

  RealToroArgs ra;
  auto* realtoro = lemma->add_subcommand("realtoro", "Periodized dilates against the line norm");
  realtoro->add_option("--fn", ra.fn)->required()->check(CLI::ExistingFile);
  realtoro->add_option("--p", ra.p)->capture_default_str();
  realtoro->add_option("--q", ra.q)->capture_default_str();
  realtoro->add_option("--tseq", ra.tseq, "Decreasing t sweep")->capture_default_str();
  realtoro->add_option("--tail-gap", ra.opts.tail_gap)->capture_default_str();
  realtoro->add_option("--exact-gap", ra.opts.exact_gap)->capture_default_str();
  realtoro->add_option("--monotone-noise", ra.opts.monotone_noise)->capture_default_str();
  ra.out.add_to(realtoro, "realtoro");

  TororealdosArgs ta;
  auto* tororealdos = lemma->add_subcommand("tororealdos", "Torus norm against the windowed line norm");
  tororealdos->add_option("--fn", ta.fn)->required()->check(CLI::ExistingFile);
  tororealdos->add_option("--p", ta.p)->capture_default_str();
  tororealdos->add_option("--q", ta.q)->capture_default_str();
  tororealdos->add_option("--k", ta.k)->check(CLI::Range(1, 4096))->capture_default_str();
  tororealdos->add_option("--cells", ta.opts.cells)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  tororealdos->add_option("--tolerance", ta.opts.tolerance)->capture_default_str();
  ta.out.add_to(tororealdos, "tororealdos");

  SandwichArgs sa;
  auto* sandwich = lemma->add_subcommand("sandwich", "Limsup and liminf bounds of windowed line norms");
  sandwich->add_option("--fn", sa.fn)->required()->check(CLI::ExistingFile);
  sandwich->add_option("--phi", sa.phi, "Radial decreasing window (default: Gaussian)")->check(CLI::ExistingFile);
  sandwich->add_option("--p", sa.p)->capture_default_str();
  sandwich->add_option("--q", sa.q)->capture_default_str();
  sandwich->add_option("--eps", sa.eps, "Decreasing eps sweep")->capture_default_str();
  sandwich->add_option("--torus-cells", sa.torus_cells)->check(CLI::Range(2, 1 << 20))->capture_default_str();
  sandwich->add_option("--slack", sa.opts.slack)->capture_default_str();
  sandwich->add_option("--diagonal-tolerance", sa.opts.diagonal_tolerance)->capture_default_str();
  sa.out.add_to(sandwich, "sandwich");

  TransferArgs xa;
  auto* transfer = app.add_subcommand("transfer", "Transference experiment");
  transfer->add_option("--config", xa.config, "Experiment JSON")->check(CLI::ExistingFile);
  transfer->add_option("--symbol", xa.symbol, "Symbol JSON")->check(CLI::ExistingFile);
  transfer->add_option("--exps", xa.exps, "p1,q1,p2,q2,p3,q3");
  transfer->add_option("--tgrid", xa.tgrid, "t sweep, e.g. geometric:2^-4..2^4:9");
  transfer->add_option("--trials", xa.trials)->check(CLI::PositiveNumber);
  transfer->add_option("--real-trials", xa.real_trials)->check(CLI::PositiveNumber);
  transfer->add_option("--seed", xa.seed);
  transfer->add_option("--torus-cells", xa.torus_cells)->check(CLI::Range(2, 1 << 20));
  transfer->add_option("--max-degree", xa.max_degree)->check(CLI::Range(0, 4096));
  transfer->add_flag("--bridges", xa.bridges, "Also run the forward and reverse bridges");
  transfer->add_option("--uniformity-spread", xa.spread);
  transfer->add_option("--bridge-tail", xa.bridge_tail);
  transfer->add_option("--bridge-exact", xa.bridge_exact);
  xa.out.add_to(transfer, "transfer");

  GCheckArgs ga;
  auto* gcheck = app.add_subcommand("gcheck", "Recover a symbol from its Gaussian mollifications");
  gcheck->add_option("--symbol", ga.symbol)->required()->check(CLI::ExistingFile);
  gcheck->add_option("--eps", ga.eps, "Decreasing eps sweep")->capture_default_str();
  gcheck->add_option("--points", ga.points, "Probe points x:y;x:y;... (default: 20 points)");
  gcheck->add_option("--tail", ga.opts.tail)->capture_default_str();
  gcheck->add_option("--noise", ga.opts.noise)->capture_default_str();
  gcheck->add_option("--erf-tolerance", ga.opts.erf_tolerance)->capture_default_str();
  gcheck->add_option("--psi-tolerance", ga.opts.psi_tolerance)->capture_default_str();
  ga.out.add_to(gcheck, "gcheck");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << one_line(e.what()) << "\n";
    return kExitUsage;
  }

  std::string command;
  const Outputs* outputs = nullptr;
  try {
    if (norm->parsed()) {
      command = "norm", outputs = &na.out;
      return run_norm(na, out);
    }
    if (apply->parsed()) {
      command = "apply", outputs = &aa.out;
      return run_apply(aa, out);
    }
    if (realtoro->parsed()) {
      command = "realtoro", outputs = &ra.out;
      return run_realtoro(ra, out);
    }
    if (tororealdos->parsed()) {
      command = "tororealdos", outputs = &ta.out;
      return run_tororealdos(ta, out);
    }
    if (sandwich->parsed()) {
      command = "sandwich", outputs = &sa.out;
      return run_sandwich(sa, out);
    }
    if (transfer->parsed()) {
      command = "transfer", outputs = &xa.out;
      return run_transfer(xa, out);
    }
    if (gcheck->parsed()) {
      command = "gcheck", outputs = &ga.out;
      return run_gcheck(ga, out);
    }
  } catch (const NumericalError& e) {
    const auto msg = one_line(e.what());
    if (outputs) write_error_report(outputs->report, command, msg);
    err << "error: " << msg << "\n";
    return kExitFail;
  } catch (const Error& e) {
    const auto msg = one_line(e.what());
    if (outputs) write_error_report(outputs->report, command, msg);
    err << "error: " << msg << "\n";
    return kExitUsage;
  }
  err << "error: no command\n";
  return kExitUsage;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.push_back("deleeuw");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace deleeuw::cli
