#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "deleeuw/error.hpp"
#include "deleeuw/io.hpp"

using namespace deleeuw;
using nlohmann::json;

namespace {

std::string parse_error_message(const json& j) {
  try {
    io::parse_function(j, "in.json");
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("scalars, lists and sweeps") {
    CHECK(io::parse_scalar("2.5") == 2.5);
    CHECK(io::parse_scalar("inf") == kInf);
    CHECK(io::parse_scalar("2^-3") == 0.125);
    CHECK(io::parse_scalar("4/3") == 4.0 / 3.0);
    CHECK_THROWS_AS(io::parse_scalar("abc"), DomainError);
    CHECK(io::parse_list("1, 2^2,0.5") == std::vector<double>{1, 4, 0.5});
    const auto s = io::parse_sweep("geometric:2^-1..2^-6:6");
    REQUIRE(s.size() == 6);
    CHECK(s.front() == 0.5);
    CHECK(s.back() == 1.0 / 64);
    CHECK(io::parse_sweep("0.5,0.25") == std::vector<double>{0.5, 0.25});
    CHECK_THROWS_AS(io::parse_sweep("geometric:1..2"), DomainError);
  }

  TEST_CASE("functions round trip") {
    const json sampled = {{"kind", "sampled"}, {"x0", -0.5}, {"dx", 0.25}, {"samples", {1.0, json::array({0.0, 2.0}), 0.5, 0.0}}};
    const auto f = std::get<SampledFunction>(io::parse_function(sampled, "f"));
    CHECK(f.size() == 4);
    CHECK(f.samples()[1] == cplx(0, 2));
    const auto back = std::get<SampledFunction>(io::parse_function(io::function_json(f), "f"));
    CHECK(back.x0() == f.x0());
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(back.samples()[i] == f.samples()[i]);

    const json trig = {{"kind", "trigpoly"}, {"coeffs", {{"-1", 0.5}, {"2", json::array({0.0, 1.0})}}}};
    const auto p = std::get<TrigPolynomial>(io::parse_function(trig, "p"));
    CHECK(p.degree() == 2);
    CHECK(p.coeff(-1) == cplx(0.5));
    CHECK(std::get<TrigPolynomial>(io::parse_function(io::function_json(p), "p")).to_map() == p.to_map());

    const json named = {{"kind", "named"}, {"name", "box_phi"}, {"dx", 0.0625}};
    const auto b = std::get<SampledFunction>(io::parse_function(named, "n"));
    CHECK(b.support_measure() == 1.0);
  }

  TEST_CASE("errors name the offending field") {
    const json bad_sample = {{"kind", "sampled"}, {"x0", 0.0}, {"dx", 0.5}, {"samples", {1.0, "x"}}};
    CHECK(parse_error_message(bad_sample).find("in.json.samples[1]") != std::string::npos);
    CHECK(parse_error_message({{"kind", "sampled"}, {"x0", 0.0}, {"samples", {1.0}}}).find("dx") != std::string::npos);
    CHECK(parse_error_message({{"kind", "wavelet"}}).find("in.json.kind") != std::string::npos);
    CHECK(parse_error_message({{"kind", "trigpoly"}, {"coeffs", {{"a", 1}}}}).find("in.json.coeffs") != std::string::npos);
    CHECK_THROWS_AS(io::parse_symbol({{"kind", "sign_alpha"}}, "s"), ParseError);
    CHECK_THROWS_AS(io::parse_symbol({{"kind", "product"}, {"m1", {{"kind", "sign"}}}}, "s"), ParseError);
    CHECK_THROWS_AS(io::load_function("/nonexistent/f.json"), ParseError);
  }

  TEST_CASE("symbols") {
    const auto shift = make_symbol(io::parse_symbol({{"kind", "shift"}, {"a", 0.25}, {"b", -1}}, "s"));
    CHECK(shift.is_shift());
    const auto prod = make_symbol(io::parse_symbol(
        {{"kind", "product"}, {"m1", {{"kind", "gaussian"}, {"sigma", 2}}}, {"m2", {{"kind", "phase"}, {"a", 0.5}}}}, "s"));
    CHECK(prod.factors().has_value());
    CHECK(std::abs(prod(1.0, 0.5) - std::exp(-0.25) * std::polar(1.0, 2 * kPi * 0.25)) < 1e-15);
    const auto sign = make_symbol(io::parse_symbol({{"kind", "sign_alpha"}, {"alpha", 2}}, "s"));
    CHECK(sign(1.0, -1.0) == cplx(-1.0));
    const auto g = make_symbol(io::parse_symbol({{"kind", "gaussian2d"}, {"sigma", 1}}, "s"));
    CHECK(g.regularity() == Regularity::Continuous);
    const json table = {{"kind", "table"},
                        {"xi", {0, 1}},
                        {"eta", {0, 1}},
                        {"values", {{1, 2}, {3, 4}}},
                        {"regularity", "continuous"}};
    const auto t = make_symbol(io::parse_symbol(table, "s"));
    CHECK(t(0.5, 0.5) == cplx(2.5));
    CHECK(t.regularity() == Regularity::Continuous);
  }

  TEST_CASE("table CSV") {
    const auto t = io::parse_table_csv("xi\\eta,0,1,2\n0,1,2,3\n1,4,5,6\n", "m.csv");
    CHECK(t.xi == std::vector<double>{0, 1, 2});
    CHECK(t.eta == std::vector<double>{0, 1});
    CHECK(t.values[1][2] == cplx(6));
    try {
      io::parse_table_csv("h,0,1\n0,1,2\n1,4\n", "m.csv");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("m.csv:3") != std::string::npos);
    }
  }

  TEST_CASE("experiment configs") {
    const json cfg = {{"symbol", {{"kind", "shift"}, {"a", 0.5}, {"b", 0}}},
                      {"exps", {4, 1, 4, "inf", 2, "inf"}},
                      {"tgrid", "geometric:2^-2..2^2:5"},
                      {"trials", 10},
                      {"seed", 9},
                      {"bridges", true},
                      {"thresholds", {{"bridge_tail", 1e-4}}}};
    const auto e = io::parse_experiment(cfg, "cfg.json");
    CHECK(e.config.exps.q3 == kInf);
    CHECK(e.config.t_grid.size() == 5);
    CHECK(e.config.t_grid[2] == 1.0);
    CHECK(e.config.trials == 10);
    CHECK(e.config.seed == 9u);
    CHECK(e.config.bridges);
    CHECK(e.config.thresholds.bridge_tail == 1e-4);
    json bad = cfg;
    bad["trials"] = 2.5;
    try {
      io::parse_experiment(bad, "cfg.json");
      FAIL("expected a parse error");
    } catch (const ParseError& ex) {
      CHECK(std::string(ex.what()).find("cfg.json.trials") != std::string::npos);
    }
    bad = cfg;
    bad["exps"] = {2, 2, 2, 2, 2, 2};
    CHECK_THROWS_AS(io::parse_experiment(bad, "cfg.json"), Error);
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "deleeuw_io_test";
    std::filesystem::create_directories(dir);
    io::write_text(dir / "m.csv", "h,0,1\n0,1,2\n1,3,4\n");
    io::write_text(dir / "s.json", R"({"kind": "table", "csv": "m.csv"})");
    const auto t = std::get<spec::Table>(io::load_symbol(dir / "s.json"));
    CHECK(t.values[1][1] == cplx(4));
    io::write_text(dir / "broken.json", "{\"kind\": ");
    try {
      io::read_json(dir / "broken.json");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("broken.json") != std::string::npos);
    }
    std::filesystem::remove_all(dir);
  }
}
