#include "kfp/mte.hpp"

#include <algorithm>
#include <map>

#include "kfp/errors.hpp"

namespace kfp {

std::optional<Period> period_of_alpha(const Rat& a1, const Rat& a2) {
  if (a1 == 0 && a2 == 0) return std::nullopt;
  if (a1 == 0) return Period{1, 0};
  if (a2 == 0) return Period{0, 1};
  Rat r = -a2 / a1;  // = m / n
  if (r <= 0) return std::nullopt;
  if (!r.get_num().fits_sint_p() || !r.get_den().fits_sint_p())
    fail(Errc::InvalidInput, "period too large");
  return Period{static_cast<int>(r.get_num().get_si()), static_cast<int>(r.get_den().get_si())};
}

std::pair<RootMultiset, RootMultiset> polys_from_config(const LatticeConfig& cfg, const Rat& a1,
                                                        const Rat& a2) {
  const Period p = cfg.period();
  const Rat g = alpha_gamma(p, a1, a2);
  RootMultiset P1, P2;
  for (const auto& [s, lab] : cfg.labels()) {
    // Edge value x1*a1 + x2*a2 for undoubled midpoint (x1, x2).
    Rat val = (Rat(s.x) * a1 + Rat(s.y) * a2) / 2;
    Site other{s.x + 2 * p.m, s.y + 2 * p.n};
    ensure(val == (Rat(other.x) * a1 + Rat(other.y) * a2) / 2, "edge value depends on the lift");
    ensure(val == g * Rat(site_key(p, s)) / 2, "edge value disagrees with the orbit key");
    (site_kind(s) == SiteKind::E1 ? P1 : P2).roots[val] += lab;
  }
  return {P1, P2};
}

bool mte_check(const Poly& p1, const Poly& p2, const Rat& a1, const Rat& a2) {
  if (p1.is_zero() || p2.is_zero()) fail(Errc::ZeroFunction, "MTE check with a zero polynomial");
  return p1.shift(a2 / 2) * p2.shift(a1 / 2) == p1.shift(-a2 / 2) * p2.shift(-a1 / 2);
}

namespace {

Period require_period(const Rat& a1, const Rat& a2, const Poly& p1, const Poly& p2) {
  auto per = period_of_alpha(a1, a2);
  if (!per) {
    if (p1.is_constant() && p2.is_constant() && !(a1 == 0 && a2 == 0)) return Period{1, 0};
    fail(Errc::RankTwoParameters, "no coprime (m,n) >= 0 with m*alpha1 + n*alpha2 = 0");
  }
  return *per;
}

}  // namespace

FactoredSolution factor_solution(const Poly& p1, const Poly& p2, const Rat& a1, const Rat& a2) {
  if (p1.is_zero() || p2.is_zero()) fail(Errc::ZeroFunction, "factoring a zero polynomial");
  FactoredSolution fs;
  fs.scale1 = p1.lead();
  fs.scale2 = p2.lead();
  if (p1.is_constant() && p2.is_constant()) return fs;
  const Period per = require_period(a1, a2, p1, p2);
  if (!mte_check(p1, p2, a1, a2)) fail(Errc::NotASolution, "the pair does not satisfy the MTE");
  const Rat g = alpha_gamma(per, a1, a2);
  const Rat ag = abs(g);
  RootMultiset r1 = roots_rational(p1), r2 = roots_rational(p2);
  // Coset representative of the face values a root's edge is adjacent to.
  std::map<Rat, std::vector<std::pair<Site, int>>> cosets;
  auto place = [&](const Rat& r, int mult, bool vertical) {
    Rat lam = rat_mod(r - g * (vertical ? per.n : per.m) / 2, ag);
    Rat kq = 2 * (r - lam) / g;
    ensure(is_integer(kq), "edge key is not integral");
    i64 k = kq.get_num().get_si();
    LatticeConfig probe(per);
    Site e;
    if (vertical) {
      Site f = probe.lift_face((k + per.n) / 2);
      e = Site{f.x + 1, f.y};
    } else {
      Site f = probe.lift_face((k - per.m) / 2);
      e = Site{f.x, f.y + 1};
    }
    ensure(site_key(per, e) == k, "edge reconstruction missed its key");
    cosets[lam].push_back({e, mult});
  };
  for (const auto& [r, mu] : r1.roots) place(r, mu, true);
  for (const auto& [r, mu] : r2.roots) place(r, mu, false);
  for (auto& [lam, raw] : cosets) {
    try {
      fs.blocks.push_back(Block{validate_config(per, raw), lam});
    } catch (const Error& e) {
      if (e.code() != Errc::IceRuleViolation) throw;
      fail(Errc::NotASolution, "coset " + rat_str(lam) + " is not a configuration: " + e.what());
    }
  }
  auto [q1, q2] = compose_solution(fs, a1, a2);
  ensure(q1 == p1 && q2 == p2, "factorization does not compose back to the input");
  return fs;
}

std::pair<Poly, Poly> compose_solution(const FactoredSolution& fs, const Rat& a1, const Rat& a2) {
  Poly q1(fs.scale1), q2(fs.scale2);
  for (const auto& b : fs.blocks) {
    auto [P1, P2] = polys_from_config(b.cfg, a1, a2);
    q1 *= P1.expand().shift(-b.shift);
    q2 *= P2.expand().shift(-b.shift);
  }
  return {q1, q2};
}

AlgebraParams make_params(const Rat& a1, const Rat& a2, const Poly& p1, const Poly& p2) {
  if (p1.is_zero() || p2.is_zero()) fail(Errc::ZeroFunction, "zero defining polynomial");
  if (a1 == 0 && a2 == 0) fail(Errc::InvalidInput, "alpha = (0,0)");
  if (!mte_check(p1, p2, a1, a2)) fail(Errc::InconsistentParams, "the defining polynomials violate the MTE");
  AlgebraParams ap{a1, a2, p1, p2, period_of_alpha(a1, a2), 0, std::nullopt, 0};
  if (ap.period) {
    ap.gamma = alpha_gamma(*ap.period, a1, a2);
    try {
      FactoredSolution fs = factor_solution(p1, p2, a1, a2);
      if (fs.blocks.empty()) {
        ap.cfg = validate_config(*ap.period, {});
      } else if (fs.blocks.size() == 1) {
        ap.cfg = fs.blocks[0].cfg;
        ap.shift = fs.blocks[0].shift;
      }
    } catch (const Error& e) {
      // Without rational roots the engine still works; only configuration-based operations are lost.
      if (e.code() != Errc::IrrationalRoots) throw;
    }
  }
  return ap;
}

AlgebraParams params_from_config(const LatticeConfig& cfg, const Rat& a1, const Rat& a2, const Rat& shift) {
  auto [P1, P2] = polys_from_config(cfg, a1, a2);
  AlgebraParams ap{a1, a2, P1.expand().shift(-shift), P2.expand().shift(-shift), cfg.period(),
                   alpha_gamma(cfg.period(), a1, a2), cfg, shift};
  ensure(mte_check(ap.p1, ap.p2, a1, a2), "configuration polynomials violate the MTE");
  return ap;
}

AlgebraParams params_from_config(const LatticeConfig& cfg) {
  return params_from_config(cfg, Rat(-cfg.period().n), Rat(cfg.period().m));
}

std::pair<AlgebraParams, NormalizeTransform> normalize_params(const Rat& a1, const Rat& a2, const Poly& p1,
                                                              const Poly& p2) {
  if (!mte_check(p1, p2, a1, a2)) fail(Errc::NotASolution, "the pair does not satisfy the MTE");
  auto per = period_of_alpha(a1, a2);
  if (!per) fail(Errc::RankTwoParameters, "no coprime (m,n) >= 0 with m*alpha1 + n*alpha2 = 0");
  NormalizeTransform tr;
  Rat b1 = a1, b2 = a2;
  Poly q1 = p1, q2 = p2;
  Rat g = alpha_gamma(*per, a1, a2);
  if (per->m < per->n || (per->m == per->n && g < 0)) {
    tr.transposed = true;
    std::swap(b1, b2);
    std::swap(q1, q2);
    per = Period{per->n, per->m};
    g = alpha_gamma(*per, b1, b2);
  }
  tr.gamma = g;
  b1 /= g;
  b2 /= g;
  q1 = q1.affine(g, 0);
  q2 = q2.affine(g, 0);
  return {make_params(b1, b2, q1, q2), tr};
}

}  // namespace kfp
