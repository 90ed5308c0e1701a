#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "kfp/errors.hpp"
#include "kfp/fixtures.hpp"
#include "kfp/repcls.hpp"
#include "oracle.hpp"

using namespace kfp;

namespace {

ComponentReport component(const LatticeConfig& cfg, const std::string& id) {
  for (const auto& c : components(cfg))
    if (c.id == id) return c;
  FAIL("missing component " << id);
  return {};
}

}  // namespace

TEST_CASE("descriptor enforces xi = 0 iff contractible") {
  LatticeConfig c = fixtures::fig_53();
  for (const auto& comp : components(c)) {
    if (comp.kind == ComponentKind::Contractible) {
      CHECK_NOTHROW(ModuleDescriptor(comp, 0));
      CHECK_THROWS_AS(ModuleDescriptor(comp, 1), Error);
    } else {
      CHECK_NOTHROW(ModuleDescriptor(comp, Rat(-2, 3)));
      CHECK_THROWS_AS(ModuleDescriptor(comp, 0), Error);
    }
  }
}

TEST_CASE("fig-21-config fixture module") {
  LatticeConfig c = fixtures::fig_21_config();
  auto fams = classify_modules(c, -1, 2);
  int finite = 0;
  for (const auto& f : fams) {
    if (!f.dim) continue;
    ++finite;
    CHECK(!f.xi_free);
    ModuleRealization m = build_module(c, -1, 2, ModuleDescriptor(f.component, 0));
    CHECK(m.h == Matrix{{2, 0}, {0, 1}});
    CHECK(m.verification.ok());
    CHECK(isoclass_key(ModuleDescriptor(f.component, 0)) == f.component.id + "|0");
  }
  CHECK(finite == 1);
}

TEST_CASE("modules on every fixture verify") {
  for (auto cfg : {fixtures::fig_53(), fixtures::fig_11_config(), fixtures::fig_11_d(2), fixtures::fig_11_d(3),
                   fixtures::fig_43(), fixtures::fig_21_single()}) {
    const Rat a1(-cfg.period().n), a2(cfg.period().m);
    for (const auto& comp : components(cfg, a1, a2)) {
      if (!comp.finite()) continue;
      for (Rat xi : {Rat(1), Rat(-5, 2)}) {
        if (comp.kind == ComponentKind::Contractible) xi = 0;
        ModuleRealization m = build_module(cfg, a1, a2, ModuleDescriptor(comp, xi));
        CHECK(m.verification.ok());
        CHECK(static_cast<i64>(m.basis.size()) == *comp.area);
        CHECK(m.basis == comp.support);
      }
    }
  }
}

TEST_CASE("verification catches a corrupted module") {
  LatticeConfig c = fixtures::fig_11_d(3);
  ComponentReport comp;
  for (const auto& k : components(c))
    if (k.finite()) comp = k;
  ModuleRealization m = build_module(c, -1, 1, ModuleDescriptor(comp, 2));
  REQUIRE(m.verification.ok());
  ModuleRealization bad = m;
  bad.xi = 3;  // claims a different C-eigenvalue
  CHECK(!verify_module(c, -1, 1, bad).ok());
  bad = m;
  for (auto& row : bad.x1p)
    for (auto& x : row)
      if (x != 0) x *= 2;
  CHECK(!verify_module(c, -1, 1, bad).ok());
}

TEST_CASE("xi scales the holonomy and distinguishes the modules") {
  LatticeConfig c = fixtures::fig_11_d(2);
  ComponentReport comp;
  for (const auto& k : components(c))
    if (k.finite()) comp = k;
  ModuleRealization a = build_module(c, -1, 1, ModuleDescriptor(comp, 1));
  ModuleRealization b = build_module(c, -1, 1, ModuleDescriptor(comp, 4));
  CHECK(a.verification.ok());
  CHECK(b.verification.ok());
  CHECK(isoclass_key(ModuleDescriptor(comp, 1)) != isoclass_key(ModuleDescriptor(comp, 4)));
}

TEST_CASE("lazy evaluator on infinite components") {
  LatticeConfig c = fixtures::fig_53();
  const Rat a1(-3), a2(5);
  ComponentReport top = component(c, "top"), bottom = component(c, "bottom");
  LazyModule lt(c, a1, a2, ModuleDescriptor(top, 1));
  LazyModule lb(c, a1, a2, ModuleDescriptor(bottom, 1));
  // Far from the band, so the cached window has to grow.
  Algebra alg(params_from_config(c, a1, a2));
  for (i64 k = 0; k < 40; ++k) {
    Rat w = alg.params().face_value(200 + k);
    auto ft = lt.act(w, Gen::X2p);
    if (!ft) continue;
    // X1+ X1- acts as p1(H - a1/2).
    auto down = lt.act(w, Gen::X1m);
    if (down) {
      auto up = lt.act(down->target, Gen::X1p);
      REQUIRE(up.has_value());
      CHECK(up->target == w);
      CHECK(down->coeff * up->coeff == alg.params().p1.eval(w - a1 / 2));
    }
  }
  CHECK_THROWS_AS(lt.act(Rat(1, 7), Gen::X1p), Error);
  for (i64 k = -200; k > -240; --k) {
    Rat w = alg.params().face_value(k);
    CHECK(lb.act_h(w) == w);
  }
}

TEST_CASE("classification counts on random configurations") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 60; ++k) {
    LatticeConfig c = oracle::random_config(rng, 5, 3, 2);
    const Rat a1(-c.period().n), a2(c.period().m);
    int finite = 0, free = 0;
    std::set<std::string> keys;
    for (const auto& f : classify_modules(c, a1, a2)) {
      if (!f.dim) continue;
      ++finite;
      free += f.xi_free;
      keys.insert(isoclass_key(ModuleDescriptor(f.component, f.xi_free ? Rat(1) : Rat(0))));
    }
    CHECK(static_cast<int>(keys.size()) == finite);
    auto regions = oracle::finite_regions(c);
    CHECK(free == std::count_if(regions.begin(), regions.end(), [](const oracle::Region& r) { return r.winds; }));
  }
}
