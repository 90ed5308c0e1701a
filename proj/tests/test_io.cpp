#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "kfp/errors.hpp"
#include "kfp/fixtures.hpp"
#include "kfp/io.hpp"
#include "kfp/render.hpp"
#include "oracle.hpp"

using namespace kfp;
using io::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::InternalError;
}

}  // namespace

TEST_CASE("shipped data files match the transcribed figures") {
  const std::vector<std::pair<std::string, LatticeConfig>> cases{
      {"fig-21-config.json", fixtures::fig_21_config()}, {"fig-21-single.json", fixtures::fig_21_single()},
      {"fig-53.json", fixtures::fig_53()},               {"fig-53-orders.json", fixtures::fig_53_orders()},
      {"fig-11-config.json", fixtures::fig_11_config()}, {"fig-11-d2.json", fixtures::fig_11_d(2)},
      {"fig-11-d3.json", fixtures::fig_11_d(3)},         {"fig-43-five-vertex.json", fixtures::fig_43()},
      {"order7.json", fixtures::fig_order7()}};
  for (const auto& [name, cfg] : cases) {
    CAPTURE(name);
    std::string path = oracle::data_path(name);
    CHECK(io::config_from_json(io::read_file(path)).cfg == cfg);
    // Files are stored in the canonical dump format.
    CHECK(slurp(path) == io::dump(io::config_to_json(cfg)));
  }
  CHECK(io::config_from_json(io::read_file(oracle::data_path("empty.json"))).cfg.trivial());
  CHECK(code_of([] { io::config_from_json(io::read_file(oracle::data_path("broken-ice.json"))); }) ==
        Errc::IceRuleViolation);
}

TEST_CASE("configuration JSON round trip and strictness") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 50; ++k) {
    LatticeConfig c = oracle::random_config(rng, 6, 4, 3);
    json j = io::config_to_json(c, std::make_pair(Rat(-c.period().n), Rat(c.period().m)));
    io::ConfigFile back = io::config_from_json(json::parse(io::dump(j)));
    CHECK(back.cfg == c);
    REQUIRE(back.alpha.has_value());
    CHECK(back.alpha->first == -c.period().n);
  }
  json j = json::parse(R"({"period":[2,1],"edges":[],"colour":"red"})");
  CHECK(code_of([&] { io::config_from_json(j); }) == Errc::InvalidInput);
  j = json::parse(R"({"period":[2,1],"edges":[{"pos":[1,0],"label":1,"weight":2}]})");
  CHECK(code_of([&] { io::config_from_json(j); }) == Errc::InvalidInput);
  j = json::parse(R"({"period":[2,1]})");
  CHECK(code_of([&] { io::config_from_json(j); }) == Errc::InvalidInput);
  j = json::parse(R"({"period":[2,2],"edges":[]})");
  CHECK(code_of([&] { io::config_from_json(j); }) == Errc::InvalidInput);
}

TEST_CASE("polynomial files in both forms") {
  Poly a = io::poly_from_json(json::parse(R"({"roots":[["1/2",1],["5/2",1]],"factor":"1"})"));
  Poly b = io::poly_from_json(json::parse(R"({"coeffs":["5/4","-3","1"]})"));
  CHECK(a == b);
  CHECK(io::poly_from_json(io::poly_to_json(a)) == a);
  CHECK(io::dump(io::poly_to_json(Poly(1))) == slurp(oracle::data_path("constant-one.json")));
  CHECK(code_of([] { io::poly_from_json(json::parse(R"({"coeffs":[0.5]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { io::poly_from_json(json::parse(R"({"coeffs":["1"],"roots":[]})")); }) == Errc::InvalidInput);
  CHECK(code_of([] { io::poly_from_json(json::parse(R"({"coeffs":["1/x"]})")); }) == Errc::InvalidInput);
}

TEST_CASE("factored solutions round trip") {
  Poly p1 = io::poly_from_json(io::read_file(oracle::data_path("fig-21-config-p1.json")));
  Poly p2 = io::poly_from_json(io::read_file(oracle::data_path("fig-21-config-p2.json")));
  FactoredSolution fs = factor_solution(p1, p2, -1, 2);
  json j = io::factored_to_json(fs, -1, 2);
  CHECK(j["blocks"].size() == 1);
  CHECK(j["blocks"][0]["shift"] == "0");
  auto [back, alpha] = io::factored_from_json(json::parse(io::dump(j)));
  CHECK(alpha.first == -1);
  CHECK(alpha.second == 2);
  REQUIRE(back.blocks.size() == 1);
  CHECK(back.blocks[0].cfg == fs.blocks[0].cfg);
  auto [q1, q2] = compose_solution(back, alpha.first, alpha.second);
  CHECK(io::dump(io::poly_to_json(q1)) == slurp(oracle::data_path("fig-21-config-p1.json")));
  CHECK(io::dump(io::poly_to_json(q2)) == slurp(oracle::data_path("fig-21-config-p2.json")));
}

TEST_CASE("alpha strings") {
  auto a = io::parse_alpha("-3/2,1");
  CHECK(a.first == Rat(-3, 2));
  CHECK(a.second == 1);
  CHECK_THROWS_AS(io::parse_alpha("1"), Error);
}

TEST_CASE("module dump") {
  LatticeConfig c = fixtures::fig_21_config();
  ComponentReport comp;
  for (const auto& k : components(c))
    if (k.finite()) comp = k;
  json j = io::module_to_json(build_module(c, -1, 2, ModuleDescriptor(comp, 0)));
  CHECK(j["basis"] == json::array({"2", "1"}));
  CHECK(j["H"] == json::parse(R"([["2","0"],["0","1"]])"));
  CHECK(j["verification"]["ok"] == true);
  CHECK(j["dim"] == 2);
}

TEST_CASE("rendering") {
  RenderOptions o;
  std::string svg = render_svg(fixtures::fig_53(), o);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("stroke-dasharray") != std::string::npos);
  CHECK(svg.find("data-component=\"3\"") != std::string::npos);
  CHECK(svg.find("<circle") == std::string::npos);
  o.show_orders = true;
  std::string with = render_svg(fixtures::fig_53_orders(), o);
  CHECK(with.find("<circle") != std::string::npos);
  std::string empty = render_svg(validate_config(Period{2, 1}, {}), {});
  CHECK(empty.find("stroke-dasharray") != std::string::npos);
  CHECK(empty.find("data-component") == std::string::npos);
  std::string ascii = render_ascii(fixtures::fig_21_config(), {});
  CHECK(ascii.find("A: component") != std::string::npos);
  CHECK(render_svg(fixtures::fig_53(), {}) == render_svg(fixtures::fig_53(), {}));
}
