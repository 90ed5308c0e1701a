#include "kfp/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "kfp/errors.hpp"

namespace kfp {

namespace {

int sgn(i64 v) { return (v > 0) - (v < 0); }

Deg gen_deg(Gen g) {
  switch (g) {
    case Gen::X1p: return {1, 0};
    case Gen::X1m: return {-1, 0};
    case Gen::X2p: return {0, 1};
    case Gen::X2m: return {0, -1};
  }
  return {0, 0};
}

std::string word_str(Deg g) {
  std::ostringstream os;
  bool any = false;
  auto block = [&](const char* name, i64 e) {
    if (e == 0) return;
    if (any) os << " ";
    os << name << (e > 0 ? "+" : "-");
    if (std::abs(e) > 1) os << "^" << std::abs(e);
    any = true;
  };
  block("X1", g.first);
  block("X2", g.second);
  return any ? os.str() : "1";
}

}  // namespace

// ---------------------------------------------------------------- Elem

Elem::Elem(const Algebra* a, std::map<Deg, RatFunc> terms) : alg_(a) {
  for (auto& [g, c] : terms)
    if (!c.is_zero()) terms_.emplace(g, std::move(c));
}

RatFunc Elem::coeff(Deg g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? RatFunc() : it->second;
}

std::optional<Deg> Elem::degree() const {
  if (terms_.size() != 1) return std::nullopt;
  return terms_.begin()->first;
}

void Elem::add_term(Deg g, const RatFunc& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(g);
  if (it == terms_.end()) {
    terms_.emplace(g, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Elem& Elem::operator+=(const Elem& o) {
  if (!alg_) alg_ = o.alg_;
  for (const auto& [g, c] : o.terms_) add_term(g, c);
  return *this;
}

Elem& Elem::operator-=(const Elem& o) { return *this += -o; }

Elem Elem::operator-() const {
  Elem r(alg_);
  for (const auto& [g, c] : terms_) r.terms_.emplace(g, -c);
  return r;
}

Elem operator*(const Elem& a, const Elem& b) {
  const Algebra* alg = a.alg_ ? a.alg_ : b.alg_;
  ensure(alg != nullptr, "multiplying elements without an algebra");
  return alg->mul(a, b);
}

Elem operator*(const Rat& s, const Elem& a) {
  Elem r(a.alg_);
  for (const auto& [g, c] : a.terms_) r.add_term(g, c * RatFunc(s));
  return r;
}

Elem operator*(const Elem& a, const RatFunc& c) {
  Elem r(a.alg_);
  for (const auto& [g, d] : a.terms_) r.add_term(g, d * c);
  return r;
}

std::string Elem::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [g, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    if (g == Deg{0, 0}) {
      os << "(" << c.str() << ")";
    } else {
      os << word_str(g) << "*(" << c.str() << ")";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------- Algebra

Algebra::Algebra(AlgebraParams p) : p_(std::move(p)) {
  if (p_.p1.is_zero() || p_.p2.is_zero()) fail(Errc::ZeroFunction, "zero defining polynomial");
  if (!mte_check(p_.p1, p_.p2, p_.a1, p_.a2))
    fail(Errc::InconsistentParams, "the defining polynomials violate the MTE; the algebra is zero");
  const Rat rho = p_.rho();
  rt_ = RatFunc(p_.p1.shift(rho - p_.a2 / 2), p_.p1.shift(rho + p_.a2 / 2));
}

Elem Algebra::scalar(const RatFunc& c) const { return Elem(this, {{Deg{0, 0}, c}}); }

Elem Algebra::gen(Gen g) const { return word(gen_deg(g)); }

Elem Algebra::word(Deg g) const { return Elem(this, {{g, RatFunc(1)}}); }

Elem Algebra::x_seq(const Seq& s) const {
  Elem e = one();
  for (auto it = s.rbegin(); it != s.rend(); ++it) {
    ensure(*it == 1 || *it == 2, "sequence entries must be 1 or 2");
    e = mul(e, gen(*it == 1 ? Gen::X1p : Gen::X2p));
  }
  return e;
}

RatFunc Algebra::phi(int s, const Rat& shift) const {
  if (s > 0) return rt_.shift(shift);
  return rt_.shift(shift - p_.a1 - p_.a2).inverse();
}

RatFunc Algebra::kappa(Deg g, Deg h) const {
  const Rat& a1 = p_.a1;
  const Rat& a2 = p_.a2;
  RatFunc k(1);
  // Moving X2^{g2} past X1^{h1}.
  const int s = sgn(g.second), t = sgn(h.first);
  if (s != 0 && s == t) {
    RatFunc Phi(1);
    for (i64 a = 0; a < std::abs(h.first); ++a)
      for (i64 b = 0; b < std::abs(g.second); ++b) Phi *= phi(s, Rat(b * s) * a2 + Rat(a * t) * a1);
    k *= Phi.shift(Rat(h.second) * a2);
  }
  // Contractions X^eps X^-eps -> p(H - eps*alpha/2), innermost first.
  auto contraction = [](const Poly& p, const Rat& a, i64 x, i64 y) {
    RatFunc r(1);
    if (x == 0 || y == 0 || sgn(x) == sgn(y)) return r;
    const int eps = sgn(x);
    const i64 b = std::abs(y), c = std::min(std::abs(x), std::abs(y));
    for (i64 q = 1; q <= c; ++q) r *= RatFunc(p.shift(-Rat(eps) * a / 2 - Rat(eps * (b - q)) * a));
    return r;
  };
  k *= contraction(p_.p1, a1, g.first, h.first).shift(Rat(g.second + h.second) * a2);
  k *= contraction(p_.p2, a2, g.second, h.second);
  return k;
}

Elem Algebra::mul(const Elem& a, const Elem& b) const {
  std::map<Deg, RatFunc> out;
  for (const auto& [g, c] : a.terms()) {
    for (const auto& [h, d] : b.terms()) {
      Rat sh = Rat(h.first) * p_.a1 + Rat(h.second) * p_.a2;
      RatFunc term = kappa(g, h) * c.shift(sh) * d;
      if (term.is_zero()) continue;
      Deg gh{g.first + h.first, g.second + h.second};
      auto it = out.find(gh);
      if (it == out.end())
        out.emplace(gh, term);
      else
        it->second += term;
    }
  }
  return Elem(this, std::move(out));
}

Elem Algebra::star(const Elem& a) const {
  Elem r = zero();
  for (const auto& [g, c] : a.terms())
    r += mul(mul(scalar(c), word({0, -g.second})), word({-g.first, 0}));
  return r;
}

Elem Algebra::from_word(const GenWord& w) const {
  Elem e = one();
  for (const auto& t : w) e = mul(e, t.kind == Token::X ? gen(t.gen) : scalar(t.f));
  return e;
}

// ---------------------------------------------------------------- configuration-based

const LatticeConfig& Algebra::config() const {
  if (!p_.cfg)
    fail(Errc::MultiBlock, "operation needs a single configuration block; factor the parameters first");
  return *p_.cfg;
}

std::optional<i64> Algebra::face_of(const Rat& lambda) const {
  if (p_.gamma == 0) return std::nullopt;
  Rat t = (lambda - p_.shift) / p_.gamma;
  if (!is_integer(t)) return std::nullopt;
  return t.get_num().get_si();
}

RatFunc Algebra::rtilde_from_orders() const {
  const LatticeConfig& cfg = config();
  const Period per = cfg.period();
  std::set<i64> vkeys;
  for (const auto& [s, lab] : cfg.labels()) {
    if (site_kind(s) == SiteKind::E1) {
      vkeys.insert(site_key(per, Site{s.x, s.y + 1}));
      vkeys.insert(site_key(per, Site{s.x, s.y - 1}));
    } else {
      vkeys.insert(site_key(per, Site{s.x + 1, s.y}));
      vkeys.insert(site_key(per, Site{s.x - 1, s.y}));
    }
  }
  Poly num(1), den(1);
  for (i64 kv : vkeys) {
    // A vertex lift with key kv: the face below-left has index (kv + n - m)/2.
    Site f = cfg.lift_face((kv + per.n - per.m) / 2);
    Site v{f.x + 1, f.y + 1};
    ensure(site_key(per, v) == kv, "vertex lift mismatch");
    int o = vertex_order(cfg, v);
    if (o == 0) continue;
    Rat lambda = p_.gamma * Rat(kv) / 2 + p_.shift - p_.rho();
    (o > 0 ? num : den) *= pow(Poly::linear(lambda), static_cast<unsigned>(std::abs(o)));
  }
  RatFunc r(num, den);
  ensure(r == rt_, "exchange function from vertex orders disagrees with the polynomial quotient");
  return r;
}

i64 Algebra::ord(const Seq& s, const Rat& lambda) const {
  auto t = face_of(lambda);
  if (!t) return 0;
  return path_order(config(), FacePath{config().lift_face(*t), s});
}

OrdProfile Algebra::ord_profile(const Seq& s) const {
  const LatticeConfig& cfg = config();
  OrdProfile prof;
  auto range = cfg.key_range();
  if (!range) return prof;
  const Period per = cfg.period();
  const i64 M = std::max(per.m, per.n);
  const i64 reach = M * static_cast<i64>(s.size() + 2) + 2;
  const i64 lo = range->first / 2 - reach, hi = range->second / 2 + reach;
  for (i64 t = lo; t <= hi; ++t) {
    i64 o = path_order(cfg, FacePath{cfg.lift_face(t), s});
    if (o != 0) prof[p_.face_value(t)] = o;
  }
  return prof;
}

Poly Algebra::f_of(const OrdProfile& prof) {
  Poly f(1);
  for (const auto& [lam, e] : prof) {
    ensure(e >= 0, "negative exponent in a polynomial profile");
    f *= pow(Poly::linear(lam), static_cast<unsigned>(e));
  }
  return f;
}

RatFunc Algebra::profile_ratio(const OrdProfile& num, const OrdProfile& den) {
  std::map<Rat, i64> e = num;
  for (const auto& [lam, k] : den) e[lam] -= k;
  Poly a(1), b(1);
  for (const auto& [lam, k] : e) {
    if (k > 0) a *= pow(Poly::linear(lam), static_cast<unsigned>(k));
    if (k < 0) b *= pow(Poly::linear(lam), static_cast<unsigned>(-k));
  }
  return RatFunc(a, b);
}

std::vector<Seq> all_seqs(i64 k, i64 l) {
  std::vector<Seq> out;
  Seq s(static_cast<size_t>(k), 1);
  s.insert(s.end(), static_cast<size_t>(l), 2);
  do out.push_back(s);
  while (std::next_permutation(s.begin(), s.end()));
  return out;
}

std::string seq_str(const Seq& s) {
  std::string r;
  for (int x : s) r += static_cast<char>('0' + x);
  return r;
}

Elem Algebra::central_C(i64 k, i64 l) const {
  auto seqs = all_seqs(k, l);
  const Seq& i0 = seqs.front();
  Elem c = x_seq(i0) * RatFunc(Poly(1), f_of(ord_profile(i0)));
  // Independence of the chosen sequence.
  const size_t stride = seqs.size() > 40 ? seqs.size() / 40 : 1;
  for (size_t j = 0; j < seqs.size(); j += stride) {
    Elem cj = x_seq(seqs[j]) * RatFunc(Poly(1), f_of(ord_profile(seqs[j])));
    ensure(cj == c, "C depends on the sequence " + seq_str(seqs[j]));
  }
  if (p_.period && k == p_.period->m && l == p_.period->n) {
    for (const Elem& x : {h(), gen(Gen::X1p), gen(Gen::X1m), gen(Gen::X2p), gen(Gen::X2m)})
      ensure(commutator(c, x).is_zero(), "C is not central");
  }
  return c;
}

LiftResult Algebra::lift_center() const {
  const LatticeConfig& cfg = config();
  const Period per = cfg.period();
  auto seqs = all_seqs(per.m, per.n);
  std::vector<Poly> fs;
  for (const auto& s : seqs) fs.push_back(f_of(ord_profile(s)));
  BezoutResult bz = bezout(fs);
  Poly check;
  for (size_t i = 0; i < fs.size(); ++i) check += fs[i] * bz.gs[i];
  ensure(check == bz.d, "Bezout identity fails");
  LiftResult r;
  r.gcd = bz.d;
  const bool five = is_five_vertex(cfg);
  if (!bz.d.is_constant()) {
    ensure(!five, "five-vertex configuration without a liftable center");
    r.c = zero();
    return r;
  }
  ensure(five, "liftable center for a configuration that is not five-vertex");
  r.liftable = true;
  r.c = zero();
  for (size_t i = 0; i < seqs.size(); ++i) {
    if (bz.gs[i].is_zero()) continue;
    r.combination.push_back({seqs[i], bz.gs[i]});
    r.c += x_seq(seqs[i]) * RatFunc(bz.gs[i]);
  }
  ensure(r.c == central_C(per.m, per.n), "lifted center differs from C in the localization");
  return r;
}

Elem Algebra::canonical_generator(Deg g) const {
  if (g == Deg{0, 0}) return one();
  if (g.first <= 0 && g.second <= 0) return star(canonical_generator({-g.first, -g.second}));
  if (sgn(g.first) * sgn(g.second) < 0) return word(g);
  auto seqs = all_seqs(g.first, g.second);
  std::vector<Poly> fs;
  for (const auto& s : seqs) fs.push_back(f_of(ord_profile(s)));
  BezoutResult bz = bezout(fs);
  Elem a = zero();
  for (size_t i = 0; i < seqs.size(); ++i)
    if (!bz.gs[i].is_zero()) a += x_seq(seqs[i]) * RatFunc(bz.gs[i]);
  for (size_t j = 0; j < seqs.size(); ++j) {
    Poly q, r;
    divmod(fs[j], bz.d, q, r);
    ensure(r.is_zero() && x_seq(seqs[j]) == a * RatFunc(q), "monomial not in the canonical generator span");
  }
  return a;
}

Seq Algebra::min_ord_seq(Deg g, const Rat& lambda) const {
  ensure(g.first >= 0 && g.second >= 0, "min_ord_seq needs a non-negative degree");
  const LatticeConfig& cfg = config();
  auto t = face_of(lambda);
  Site base = t ? cfg.lift_face(*t) : Site{0, 0};
  const i64 A = g.first, B = g.second;
  const i64 INF = INT64_MAX / 4;
  // cost[a][b]: least vertical crossings from node (a, b) to the end.
  std::vector<std::vector<i64>> cost(A + 1, std::vector<i64>(B + 1, INF));
  auto e1 = [&](i64 a, i64 b) { return t ? cfg.label(Site{base.x + 2 * a + 1, base.y + 2 * b}) : 0; };
  for (i64 a = A; a >= 0; --a)
    for (i64 b = B; b >= 0; --b) {
      if (a == A && b == B) {
        cost[a][b] = 0;
        continue;
      }
      i64 best = INF;
      if (b < B) best = std::min(best, cost[a][b + 1]);
      if (a < A) best = std::min(best, cost[a + 1][b] + e1(a, b));
      cost[a][b] = best;
    }
  Seq s;
  i64 a = 0, b = 0;
  while (a < A || b < B) {
    if (b < B && cost[a][b + 1] == cost[a][b]) {
      s.push_back(2);
      ++b;
    } else {
      s.push_back(1);
      ++a;
    }
  }
  return s;
}

Rat Algebra::reduce_mod_weight(const Elem& a, const Rat& lambda) const {
  if (a.is_zero()) return 0;
  auto g = a.degree();
  if (!g) fail(Errc::NotHomogeneous, "reduction modulo a weight needs a homogeneous element");
  if (g->first <= 0 && g->second <= 0 && *g != Deg{0, 0}) {
    // a in A(H - lambda)  <=>  a* in A(H - lambda - g.alpha).
    Rat mu = lambda + Rat(g->first) * p_.a1 + Rat(g->second) * p_.a2;
    return reduce_mod_weight(star(a), mu);
  }
  if (g->first < 0 || g->second < 0) fail(Errc::InvalidInput, "mixed-sign degrees are not reduced here");
  Seq s = min_ord_seq(*g, lambda);
  RatFunc x = x_seq(s).coeff(*g);
  RatFunc c = a.coeff(*g) / x;
  if (!c.regular_at(lambda))
    fail(Errc::PoleAtWeight, "coefficient over X(" + seq_str(s) + ") has a pole at " + rat_str(lambda));
  return c.eval(lambda);
}

NilIndex Algebra::nilpotency_index(const Rat& lambda, const Seq& s) const {
  const LatticeConfig& cfg = config();
  const Period per = cfg.period();
  i64 c1 = std::count(s.begin(), s.end(), 1), c2 = std::count(s.begin(), s.end(), 2);
  if (c1 != per.m || c2 != per.n) fail(Errc::InvalidInput, "sequence must have period content");
  NilIndex r;
  r.ord = ord(s, lambda);
  if (r.ord == 0) return r;
  auto t = face_of(lambda);
  ensure(t.has_value(), "positive order at a non-face value");
  i64 total = 0;
  for (const auto& kv : cfg.labels()) total += kv.second;
  const i64 cap = 2 + total * (per.m + per.n + 1);
  const Elem x = x_seq(s);
  Elem power = one();
  for (i64 a = 1; a <= cap; ++a) {
    power = mul(power, x);
    const bool vanishes = reduce_mod_weight(power, lambda) == 0;
    // The quotient basis predicts vanishing exactly when a*ord exceeds the least order in degree a*(m,n).
    Seq j = min_ord_seq({a * per.m, a * per.n}, lambda);
    Crossings cr = crossing_counts(cfg, FacePath{cfg.lift_face(*t), j});
    ensure(vanishes == (a * r.ord > std::max(cr.v, cr.h)), "reduction disagrees with the path-order count");
    if (vanishes) {
      r.index = a;
      return r;
    }
  }
  ensure(false, "nilpotency search exceeded its bound");
  return r;
}

SerreResult Algebra::serre_check() const {
  if (p_.a1 == 0) fail(Errc::DegenerateAlpha, "alpha1 = 0");
  SerreResult r;
  auto ad_power = [&](Gen x, Gen y, int k) {
    Elem e = gen(y), gx = gen(x);
    for (int i = 0; i < k; ++i) e = commutator(gx, e);
    return e;
  };
  r.x1_side = ad_power(Gen::X1p, Gen::X2p, p_.p2.degree() + 1).is_zero();
  if (p_.a2 != 0) r.x2_side = ad_power(Gen::X2p, Gen::X1p, p_.p1.degree() + 1).is_zero();
  return r;
}

// ---------------------------------------------------------------- oracle

GenWord expand_term(Deg g, const RatFunc& c) {
  GenWord w;
  for (i64 i = 0; i < std::abs(g.first); ++i) w.push_back(Token::x(g.first > 0 ? Gen::X1p : Gen::X1m));
  for (i64 i = 0; i < std::abs(g.second); ++i) w.push_back(Token::x(g.second > 0 ? Gen::X2p : Gen::X2m));
  w.push_back(Token::coeff(c));
  return w;
}

Elem reduce_by_rewriting(const Algebra& alg, const GenWord& input) {
  const AlgebraParams& p = alg.params();
  GenWord w = input;
  auto idx = [](Gen g) { return (g == Gen::X1p || g == Gen::X1m) ? 1 : 2; };
  auto sg = [](Gen g) { return (g == Gen::X1p || g == Gen::X2p) ? 1 : -1; };
  auto alpha = [&](Gen g) { return idx(g) == 1 ? p.a1 : p.a2; };
  for (;;) {
    bool changed = false;
    for (size_t i = 0; i + 1 < w.size() && !changed; ++i) {
      Token& a = w[i];
      Token& b = w[i + 1];
      GenWord rep;
      if (a.kind == Token::F && b.kind == Token::F) {
        rep = {Token::coeff(a.f * b.f)};
      } else if (a.kind == Token::F) {
        rep = {b, Token::coeff(a.f.shift(Rat(sg(b.gen)) * alpha(b.gen)))};
      } else if (b.kind == Token::X && idx(a.gen) == idx(b.gen) && sg(a.gen) != sg(b.gen)) {
        const Poly& pi = idx(a.gen) == 1 ? p.p1 : p.p2;
        rep = {Token::coeff(RatFunc(pi.shift(-Rat(sg(a.gen)) * alpha(a.gen) / 2)))};
      } else if (b.kind == Token::X && idx(a.gen) == 2 && idx(b.gen) == 1) {
        if (sg(a.gen) != sg(b.gen)) {
          rep = {b, a};
        } else if (sg(a.gen) > 0) {
          rep = {Token::x(Gen::X1p), Token::x(Gen::X2p), Token::coeff(alg.rtilde_fn())};
        } else {
          rep = {Token::coeff(alg.rtilde_fn().inverse()), Token::x(Gen::X1m), Token::x(Gen::X2m)};
        }
      } else {
        continue;
      }
      w.erase(w.begin() + i, w.begin() + i + 2);
      w.insert(w.begin() + i, rep.begin(), rep.end());
      changed = true;
    }
    if (!changed) break;
  }
  Deg g{0, 0};
  RatFunc c(1);
  for (const auto& t : w) {
    if (t.kind == Token::F) {
      c = t.f;
      continue;
    }
    (idx(t.gen) == 1 ? g.first : g.second) += sg(t.gen);
  }
  return Elem(&alg, {{g, c}});
}

}  // namespace kfp
