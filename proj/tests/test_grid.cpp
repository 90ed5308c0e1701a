#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kfp/errors.hpp"
#include "kfp/fixtures.hpp"
#include "kfp/grid.hpp"
#include "oracle.hpp"

using namespace kfp;

TEST_CASE("validation of the shipped figures") {
  LatticeConfig c = fixtures::fig_21_config();
  CHECK(c.path_count() == 2);
  CHECK(c.period() == Period{2, 1});
  CHECK(fixtures::fig_53().path_count() == 3);
  CHECK(validate_config(Period{2, 1}, {}).trivial());
}

TEST_CASE("validation errors name the problem") {
  CHECK_THROWS_AS(make_period(2, 2), Error);
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::InternalError;
  };
  CHECK(code([] { validate_config(Period{2, 1}, {{Site{0, 0}, 1}}); }) == Errc::ParityError);
  CHECK(code([] { validate_config(Period{2, 1}, {{Site{1, 0}, -1}}); }) == Errc::InvalidInput);
  const LatticeConfig fig = fixtures::fig_21_config();
  std::vector<std::pair<Site, int>> raw(fig.labels().begin(), fig.labels().end());
  raw.erase(raw.begin() + 1);
  try {
    validate_config(Period{2, 1}, raw);
    FAIL("broken ice rule accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IceRuleViolation);
    CHECK(std::string(e.what()).find("vertex") != std::string::npos);
  }
}

TEST_CASE("canonical representatives and periodicity") {
  LatticeConfig c = fixtures::fig_53();
  const Period p = c.period();
  for (i64 x = -9; x <= 9; ++x) {
    for (i64 y = -9; y <= 9; ++y) {
      Site s{x, y};
      Site k = c.canonical(s);
      CHECK(c.canonical(k) == k);
      CHECK(site_key(p, k) == site_key(p, s));
      if (is_edge(s)) CHECK(c.label(s) == c.label(Site{x + 2 * p.m, y + 2 * p.n}));
    }
  }
  for (i64 t = -5; t <= 5; ++t) CHECK(face_index(p, c.lift_face(t)) == t);
}

TEST_CASE("vertex orders and the ice rule") {
  LatticeConfig c = fixtures::fig_53_orders();
  long total = 0;
  for (i64 x = -1; x < 2 * c.period().m; x += 2)
    for (i64 y = -21; y <= 21; y += 2) total += vertex_order(c, Site{x, y});
  // Corners come in pairs of opposite orders along each path.
  CHECK(total == 0);
  CHECK_THROWS_AS(vertex_order(c, Site{0, 0}), Error);
}

TEST_CASE("face path order equals the crossing count") {
  LatticeConfig c = fixtures::fig_53_orders();
  FacePath fp = fixtures::fig_53_face_path();
  Crossings cr = crossing_counts(c, fp);
  CHECK(cr == Crossings{2, 2});
  CHECK(path_order(c, fp) == 2);
}

TEST_CASE("path decomposition round trip") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 150; ++k) {
    LatticeConfig c = oracle::random_config(rng, 6, 4, 3);
    auto paths = decompose_paths(c);
    int n = 0;
    for (const auto& [vp, mult] : paths) {
      n += mult;
      CHECK(std::count(vp.steps.begin(), vp.steps.end(), 'R') == c.period().m);
      CHECK(std::count(vp.steps.begin(), vp.steps.end(), 'U') == c.period().n);
    }
    CHECK(n == c.path_count());
    CHECK(superpose_paths(c.period(), paths) == c);
  }
}

TEST_CASE("components of the fig-53 fixture") {
  auto comps = components(fixtures::fig_53());
  std::multiset<i64> areas;
  std::set<std::string> infinite;
  for (const auto& c : comps) {
    if (c.finite()) {
      areas.insert(*c.area);
      CHECK(c.faces.size() == static_cast<size_t>(*c.area));
      CHECK(std::is_sorted(c.faces.rbegin(), c.faces.rend()));
      CHECK((c.kind == ComponentKind::FiniteIncontractible) == (*c.area == 10));
      CHECK(c.winding.has_value() == (c.kind == ComponentKind::FiniteIncontractible));
    } else {
      infinite.insert(c.id);
    }
  }
  CHECK(areas == std::multiset<i64>{1, 2, 10});
  CHECK(infinite == std::set<std::string>{"top", "bottom"});
  auto triv = components(validate_config(Period{2, 1}, {}));
  REQUIRE(triv.size() == 1);
  CHECK(triv[0].id == "all");
  CHECK(triv[0].kind == ComponentKind::InfiniteIncontractible);
}

TEST_CASE("components agree with the flood-fill oracle") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 150; ++k) {
    LatticeConfig c = oracle::random_config(rng, 6, 4, 3);
    std::multiset<long> lib, orc;
    int wind = 0, owind = 0;
    for (const auto& comp : components(c)) {
      if (!comp.finite()) continue;
      lib.insert(*comp.area);
      wind += comp.kind == ComponentKind::FiniteIncontractible;
    }
    for (const auto& r : oracle::finite_regions(c)) {
      orc.insert(r.area);
      owind += r.winds;
    }
    CHECK(lib == orc);
    CHECK(wind == owind);
    // Translation moves faces but not areas.
    std::multiset<long> moved;
    for (const auto& comp : components(translate_config(c, 1, -2)))
      if (comp.finite()) moved.insert(*comp.area);
    CHECK(moved == lib);
  }
}

TEST_CASE("five-vertex detection") {
  CHECK(is_five_vertex(fixtures::fig_43()));
  CHECK(is_five_vertex(fixtures::fig_21_single()));
  CHECK(!is_five_vertex(fixtures::fig_21_config()));
  std::mt19937_64 rng(3);
  for (int k = 0; k < 150; ++k) CHECK(five_vertex_report(oracle::random_config(rng, 6, 4, 3)).consistent());
}

TEST_CASE("transpose and superpose") {
  LatticeConfig c = fixtures::fig_21_config();
  LatticeConfig t = transpose_config(c);
  CHECK(t.period() == Period{1, 2});
  CHECK(transpose_config(t) == c);
  LatticeConfig s = superpose(c, fixtures::fig_21_single());
  CHECK(s.path_count() == 3);
  CHECK_THROWS_AS(superpose(c, fixtures::fig_53()), Error);
}

TEST_CASE("sampling is deterministic and respects the bounds") {
  LatticeConfig a = sample_config(Period{3, 2}, 4, 2, 99), b = sample_config(Period{3, 2}, 4, 2, 99);
  CHECK(a == b);
  CHECK(a.path_count() == 4);
  for (const auto& [s, lab] : a.labels()) CHECK(lab <= 2);
  CHECK(sample_config(Period{3, 2}, 0, 1, 1).trivial());
}
