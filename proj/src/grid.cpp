#include "kfp/grid.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <sstream>

#include "kfp/errors.hpp"
#include "kfp/mte.hpp"

namespace kfp {

namespace {

i64 floor_div_i(i64 a, i64 b) {
  i64 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::string site_str(Site s) {
  std::ostringstream os;
  os << "(" << s.x << "," << s.y << ")";
  return os.str();
}

// m*s1 + n*s2 = 1
std::pair<i64, i64> bezout_int(i64 m, i64 n) {
  i64 r0 = m, r1 = n, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    i64 q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - q * t1);
  }
  return {s0, t0};
}

struct VertexLabels {
  int left, below, right, above;
};

VertexLabels incident(const LatticeConfig& cfg, i64 kv) {
  Period p = cfg.period();
  return {cfg.label_key(SiteKind::E2, kv + p.n), cfg.label_key(SiteKind::E1, kv - p.m),
          cfg.label_key(SiteKind::E2, kv - p.n), cfg.label_key(SiteKind::E1, kv + p.m)};
}

}  // namespace

Period make_period(int m, int n) {
  if (m < 0 || n < 0 || std::gcd(m, n) != 1)
    fail(Errc::InvalidInput, "period must be a coprime pair of non-negative integers, got (" +
                                 std::to_string(m) + "," + std::to_string(n) + ")");
  return Period{m, n};
}

SiteKind site_kind(Site s) {
  bool xo = (s.x % 2) != 0, yo = (s.y % 2) != 0;
  if (xo && yo) return SiteKind::Vertex;
  if (!xo && !yo) return SiteKind::Face;
  return xo ? SiteKind::E1 : SiteKind::E2;
}

int LatticeConfig::label(Site e) const {
  SiteKind k = site_kind(e);
  if (k != SiteKind::E1 && k != SiteKind::E2) fail(Errc::ParityError, "not an edge site " + site_str(e));
  return label_key(k, site_key(period_, e));
}

int LatticeConfig::label_key(SiteKind k, i64 key) const {
  const auto& mp = k == SiteKind::E1 ? e1_ : e2_;
  auto it = mp.find(key);
  return it == mp.end() ? 0 : it->second;
}

Site LatticeConfig::canonical(Site s) const {
  const i64 m = period_.m, n = period_.n;
  i64 k = floor_div_i(m * s.x + n * s.y, 2 * (m * m + n * n));
  return Site{s.x - 2 * k * m, s.y - 2 * k * n};
}

Site LatticeConfig::lift_face(i64 t) const {
  auto [s1, s2] = bezout_int(period_.m, period_.n);
  return canonical(Site{-2 * t * s2, 2 * t * s1});
}

LatticeConfig validate_config(Period period, const std::vector<std::pair<Site, int>>& raw) {
  LatticeConfig cfg(period);
  for (const auto& [s, lab] : raw) {
    SiteKind k = site_kind(s);
    if (k != SiteKind::E1 && k != SiteKind::E2)
      fail(Errc::ParityError, "site " + site_str(s) + " is not an edge midpoint");
    if (lab < 0) fail(Errc::InvalidInput, "negative label at " + site_str(s));
    if (lab == 0) continue;
    cfg.labels_[cfg.canonical(s)] += lab;
    (k == SiteKind::E1 ? cfg.e1_ : cfg.e2_)[site_key(period, s)] += lab;
  }
  i64 sum1 = 0, sum2 = 0;
  std::set<i64> vkeys;
  for (const auto& [key, lab] : cfg.e1_) {
    sum1 += lab;
    vkeys.insert(key - period.m);
    vkeys.insert(key + period.m);
  }
  for (const auto& [key, lab] : cfg.e2_) {
    sum2 += lab;
    vkeys.insert(key - period.n);
    vkeys.insert(key + period.n);
  }
  for (i64 kv : vkeys) {
    VertexLabels l = incident(cfg, kv);
    if (l.left + l.below != l.right + l.above) {
      // Name the vertex by a lift adjacent to a labeled edge.
      Site v{0, 0};
      for (const auto& [s, lab] : cfg.labels_) {
        for (Site c : {Site{s.x + 1, s.y}, Site{s.x - 1, s.y}, Site{s.x, s.y + 1}, Site{s.x, s.y - 1}})
          if (site_kind(c) == SiteKind::Vertex && site_key(period, c) == kv) v = cfg.canonical(c);
      }
      std::ostringstream os;
      os << "ice rule fails at vertex " << site_str(v) << ": left " << l.left << " + below " << l.below
         << " != right " << l.right << " + above " << l.above;
      fail(Errc::IceRuleViolation, os.str());
    }
  }
  // Degree identity: sum over E1 = n*N and over E2 = m*N.
  i64 N = period.n ? sum1 / period.n : sum2 / period.m;
  if (sum1 != period.n * N || sum2 != period.m * N) {
    std::ostringstream os;
    os << "label sums " << sum1 << " (vertical) and " << sum2 << " (horizontal) are not (n,m) multiples";
    fail(Errc::IceRuleViolation, os.str());
  }
  cfg.n_paths_ = static_cast<int>(N);
  if (!cfg.labels_.empty()) {
    i64 lo = INT64_MAX, hi = INT64_MIN;
    for (const auto* mp : {&cfg.e1_, &cfg.e2_})
      for (const auto& kv : *mp) {
        lo = std::min(lo, kv.first);
        hi = std::max(hi, kv.first);
      }
    cfg.range_ = {lo, hi};
  }
  return cfg;
}

int vertex_order(const LatticeConfig& cfg, Site v) {
  if (site_kind(v) != SiteKind::Vertex) fail(Errc::ParityError, "not a vertex site " + site_str(v));
  VertexLabels l = incident(cfg, site_key(cfg.period(), v));
  int a = l.right - l.left, b = l.below - l.above;
  ensure(a == b, "vertex order mismatch at " + site_str(v));
  return a;
}

Crossings crossing_counts(const LatticeConfig& cfg, const FacePath& path) {
  Crossings c;
  Site f = path.base;
  for (int s : path.steps) {
    if (s == 1) {
      c.v += cfg.label(Site{f.x + 1, f.y});
      f.x += 2;
    } else {
      c.h += cfg.label(Site{f.x, f.y + 1});
      f.y += 2;
    }
  }
  return c;
}

i64 path_order(const LatticeConfig& cfg, const FacePath& path) {
  if (site_kind(path.base) != SiteKind::Face) fail(Errc::ParityError, "path base is not a face site");
  auto range = cfg.key_range();
  if (!range) return 0;
  const Period p = cfg.period();
  const i64 lo = range->first, hi = range->second, reach = std::max(p.m, p.n);
  // Steps along a column or row that can be skipped because every vertex is below the band.
  auto skip = [&](i64 key, i64 stride) { return key + reach >= lo ? i64{0} : (lo - reach - key) / stride; };
  i64 col = 0, row = 0;
  Site f = path.base;
  for (int s : path.steps) {
    if (s == 1) {
      // Orders of the vertices stacked above the step.
      if (p.m == 0) {
        col += cfg.label(Site{f.x + 1, f.y});
      } else {
        Site v{f.x + 1, f.y + 1};
        v.y += 2 * skip(site_key(p, v), 2 * p.m);
        for (; site_key(p, v) - reach <= hi; v.y += 2) col += vertex_order(cfg, v);
      }
      f.x += 2;
    } else {
      // Orders of the vertices to the left of the step.
      if (p.n == 0) {
        row += cfg.label(Site{f.x, f.y + 1});
      } else {
        Site v{f.x - 1, f.y + 1};
        v.x -= 2 * skip(site_key(p, v), 2 * p.n);
        for (; site_key(p, v) - reach <= hi; v.x -= 2) row += vertex_order(cfg, v);
      }
      f.y += 2;
    }
  }
  return std::max(col, row);
}

LatticeConfig superpose_paths(Period period, const std::map<VertexPath, int>& paths) {
  std::vector<std::pair<Site, int>> raw;
  for (const auto& [vp, mult] : paths) {
    Site v = vp.start;
    for (char c : vp.steps) {
      if (c == 'R') {
        raw.push_back({Site{v.x + 1, v.y}, mult});
        v.x += 2;
      } else {
        raw.push_back({Site{v.x, v.y + 1}, mult});
        v.y += 2;
      }
    }
  }
  return validate_config(period, raw);
}

std::map<VertexPath, int> decompose_paths(const LatticeConfig& cfg) {
  const Period p = cfg.period();
  std::map<i64, int> e1, e2;
  for (const auto& [s, lab] : cfg.labels()) (site_kind(s) == SiteKind::E1 ? e1 : e2)[site_key(p, s)] = lab;
  std::map<VertexPath, int> out;
  auto get = [](std::map<i64, int>& mp, i64 k) {
    auto it = mp.find(k);
    return it == mp.end() ? 0 : it->second;
  };
  auto dec = [](std::map<i64, int>& mp, i64 k) {
    auto it = mp.find(k);
    ensure(it != mp.end() && it->second > 0, "peeling an empty edge");
    if (--it->second == 0) mp.erase(it);
  };
  while (!e1.empty() || !e2.empty()) {
    // Lowest remaining edge, vertical first on ties.
    bool vert;
    i64 key;
    if (e2.empty() || (!e1.empty() && e1.begin()->first <= e2.begin()->first)) {
      vert = true;
      key = e1.begin()->first;
    } else {
      vert = false;
      key = e2.begin()->first;
    }
    Site v = cfg.canonical([&] {
      for (const auto& [s, lab] : cfg.labels())
        if ((site_kind(s) == SiteKind::E1) == vert && site_key(p, s) == key) return s;
      ensure(false, "edge orbit without representative");
      return Site{};
    }());
    v = vert ? Site{v.x, v.y + 1} : Site{v.x + 1, v.y};
    bool from_left = !vert;
    std::vector<Site> walk{v};
    std::string dirs;
    std::map<i64, size_t> seen{{site_key(p, v), 0}};
    for (;;) {
      ensure(walk.size() < 100000, "path peeling does not close");
      i64 kv = site_key(p, v);
      bool up_ok = get(e1, kv + p.m) > 0, right_ok = get(e2, kv - p.n) > 0;
      ensure(up_ok || right_ok, "path peeling stalls at a vertex");
      // Osculating rule: a path entering from the left turns up, from below turns right.
      bool go_up = from_left ? up_ok : !right_ok;
      if (go_up) {
        v.y += 2;
        dirs += 'U';
      } else {
        v.x += 2;
        dirs += 'R';
      }
      from_left = !go_up;
      walk.push_back(v);
      auto [it, fresh] = seen.emplace(site_key(p, v), walk.size() - 1);
      if (!fresh) {
        size_t start = it->second;
        Site a = walk[start];
        ensure(v.x - a.x == 2 * p.m && v.y - a.y == 2 * p.n, "peeled cycle has wrong period");
        std::string cyc = dirs.substr(start);
        // Decrement labels and rotate so the start vertex has minimal key.
        Site w = a, best = a;
        size_t best_i = 0;
        for (size_t i = 0; i < cyc.size(); ++i) {
          if (site_key(p, w) < site_key(p, best)) {
            best = w;
            best_i = i;
          }
          if (cyc[i] == 'U') {
            dec(e1, site_key(p, Site{w.x, w.y + 1}));
            w.y += 2;
          } else {
            dec(e2, site_key(p, Site{w.x + 1, w.y}));
            w.x += 2;
          }
        }
        VertexPath vp{cfg.canonical(best), cyc.substr(best_i) + cyc.substr(0, best_i)};
        out[vp] += 1;
        break;
      }
    }
  }
  return out;
}

const char* kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Contractible: return "Contractible";
    case ComponentKind::FiniteIncontractible: return "FiniteIncontractible";
    case ComponentKind::InfiniteIncontractible: return "InfiniteIncontractible";
  }
  return "?";
}

Rat alpha_gamma(Period p, const Rat& a1, const Rat& a2) {
  if (a1 == 0 && a2 == 0) fail(Errc::InvalidInput, "alpha = (0,0)");
  Rat g = p.m > 0 ? Rat(a2 / p.m) : Rat(-a1 / p.n);
  if (a1 != -g * p.n || a2 != g * p.m)
    fail(Errc::PeriodMismatch, "m*alpha1 + n*alpha2 != 0 for period (" + std::to_string(p.m) + "," +
                                   std::to_string(p.n) + ")");
  return g;
}

std::vector<ComponentReport> components(const LatticeConfig& cfg) {
  Period p = cfg.period();
  return components(cfg, Rat(-p.n), Rat(p.m));
}

std::vector<ComponentReport> components(const LatticeConfig& cfg, const Rat& a1, const Rat& a2,
                                        const Rat& shift) {
  const Period p = cfg.period();
  const Rat gamma = alpha_gamma(p, a1, a2);
  const Site per{2 * p.m, 2 * p.n};
  std::vector<ComponentReport> out;
  auto range = cfg.key_range();
  auto infinite = [&](const std::string& id, i64 t) {
    ComponentReport r{id, ComponentKind::InfiniteIncontractible, {}, std::nullopt, {}, std::nullopt};
    Site f = cfg.lift_face(t);
    r.winding = std::make_pair(f, Site{f.x + per.x, f.y + per.y});
    return r;
  };
  if (!range) {
    out.push_back(infinite("all", 0));
    return out;
  }
  const i64 M = std::max(p.m, p.n);
  const i64 tlo = floor_div_i(range->first, 2) - M - 1;
  const i64 thi = floor_div_i(range->second + 1, 2) + M + 1;
  std::map<i64, Site> lift;
  std::vector<ComponentReport> finite;
  bool top_seen = false, bottom_seen = false;
  for (i64 t0 = tlo; t0 <= thi; ++t0) {
    if (lift.count(t0)) continue;
    Site f0 = cfg.lift_face(t0);
    lift[t0] = f0;
    std::vector<i64> faces{t0};
    std::queue<i64> q;
    q.push(t0);
    bool top = false, bottom = false;
    std::optional<std::pair<Site, Site>> wind;
    while (!q.empty()) {
      i64 t = q.front();
      q.pop();
      Site f = lift[t];
      struct Move {
        i64 dt;
        SiteKind k;
        i64 ekey;
        i64 dx, dy;
      };
      const Move moves[4] = {{-p.n, SiteKind::E1, 2 * t - p.n, 2, 0},
                             {p.n, SiteKind::E1, 2 * t + p.n, -2, 0},
                             {p.m, SiteKind::E2, 2 * t + p.m, 0, 2},
                             {-p.m, SiteKind::E2, 2 * t - p.m, 0, -2}};
      for (const Move& mv : moves) {
        if (cfg.label_key(mv.k, mv.ekey) != 0) continue;
        i64 u = t + mv.dt;
        if (u > thi) {
          top = true;
          continue;
        }
        if (u < tlo) {
          bottom = true;
          continue;
        }
        Site g{f.x + mv.dx, f.y + mv.dy};
        auto it = lift.find(u);
        if (it == lift.end()) {
          lift[u] = g;
          faces.push_back(u);
          q.push(u);
        } else if (it->second != g && !wind) {
          wind = std::make_pair(it->second, g);
        }
      }
    }
    ensure(!(top && bottom), "top and bottom regions connected through a nontrivial configuration");
    if (top || bottom) {
      (top ? top_seen : bottom_seen) = true;
      continue;
    }
    ComponentReport r;
    r.kind = wind ? ComponentKind::FiniteIncontractible : ComponentKind::Contractible;
    r.winding = wind;
    std::sort(faces.begin(), faces.end(), [&](i64 a, i64 b) { return gamma * a > gamma * b; });
    r.faces = faces;
    r.id = std::to_string(*std::min_element(faces.begin(), faces.end()));
    r.area = static_cast<i64>(faces.size());
    for (i64 t : faces) r.support.push_back(gamma * Rat(t) + shift);
    finite.push_back(std::move(r));
  }
  ensure(top_seen && bottom_seen, "infinite regions not reached");
  out = std::move(finite);
  out.push_back(infinite("top", thi + 1));
  out.push_back(infinite("bottom", tlo - 1));
  return out;
}

bool FiveVertexReport::consistent() const {
  return primary == no_ne && no_ne == no_sw && no_sw == coprime_plus && coprime_plus == coprime_minus &&
         coprime_minus == disjoint_paths && disjoint_paths == no_contractible;
}

FiveVertexReport five_vertex_report(const LatticeConfig& cfg) {
  const Period p = cfg.period();
  FiveVertexReport r;
  std::set<i64> vkeys;
  for (const auto& [s, lab] : cfg.labels()) {
    i64 k = site_key(p, s);
    if (site_kind(s) == SiteKind::E1) {
      vkeys.insert(k - p.m);
      vkeys.insert(k + p.m);
    } else {
      vkeys.insert(k - p.n);
      vkeys.insert(k + p.n);
    }
  }
  r.primary = r.no_ne = r.no_sw = true;
  for (i64 kv : vkeys) {
    VertexLabels l = incident(cfg, kv);
    int dirs = (l.left > 0) + (l.below > 0) + (l.right > 0) + (l.above > 0);
    if (dirs > 2) r.primary = false;
    if (l.left > 0 && l.below > 0) r.no_ne = false;
    if (l.right > 0 && l.above > 0) r.no_sw = false;
  }
  const Rat a1 = -p.n, a2 = p.m;
  auto [P1, P2] = polys_from_config(cfg, a1, a2);
  Poly q1 = P1.expand(), q2 = P2.expand();
  r.coprime_plus = gcd(q1.shift(a2 / 2), q2.shift(a1 / 2)).is_constant();
  r.coprime_minus = gcd(q1.shift(-a2 / 2), q2.shift(-a1 / 2)).is_constant();
  auto paths = decompose_paths(cfg);
  r.disjoint_paths = true;
  std::map<i64, const VertexPath*> owner;
  for (const auto& [vp, mult] : paths) {
    Site v = vp.start;
    for (char c : vp.steps) {
      auto [it, fresh] = owner.emplace(site_key(p, v), &vp);
      if (!fresh && it->second != &vp) r.disjoint_paths = false;
      (c == 'R' ? v.x : v.y) += 2;
    }
  }
  r.no_contractible = true;
  for (const auto& c : components(cfg))
    if (c.kind == ComponentKind::Contractible) r.no_contractible = false;
  return r;
}

bool is_five_vertex(const LatticeConfig& cfg) {
  FiveVertexReport r = five_vertex_report(cfg);
  ensure(r.consistent(), "five-vertex characterizations disagree");
  return r.primary;
}

LatticeConfig translate_config(const LatticeConfig& cfg, i64 mu1, i64 mu2) {
  std::vector<std::pair<Site, int>> raw;
  for (const auto& [s, lab] : cfg.labels()) raw.push_back({Site{s.x - 2 * mu1, s.y - 2 * mu2}, lab});
  return validate_config(cfg.period(), raw);
}

LatticeConfig transpose_config(const LatticeConfig& cfg) {
  std::vector<std::pair<Site, int>> raw;
  for (const auto& [s, lab] : cfg.labels()) raw.push_back({Site{s.y, s.x}, lab});
  return validate_config(Period{cfg.period().n, cfg.period().m}, raw);
}

LatticeConfig superpose(const LatticeConfig& a, const LatticeConfig& b) {
  if (!(a.period() == b.period())) fail(Errc::PeriodMismatch, "superposing configurations of different periods");
  std::vector<std::pair<Site, int>> raw(a.labels().begin(), a.labels().end());
  raw.insert(raw.end(), b.labels().begin(), b.labels().end());
  return validate_config(a.period(), raw);
}

LatticeConfig sample_config(Period period, int path_count, int label_bound, std::uint64_t seed) {
  if (label_bound < 1) fail(Errc::InvalidInput, "label bound must be at least 1");
  std::mt19937_64 rng(seed);
  const int window = std::max(2, period.m + period.n);
  std::uniform_int_distribution<int> off(0, window - 1);
  std::map<VertexPath, int> paths;
  std::map<i64, int> load1, load2;  // edge key -> label so far
  for (int i = 0; i < path_count; ++i) {
    // Resample until the label bound holds; after that, stack a fixed path above
    // the unloaded region, which always fits.
    for (int attempt = 0;; ++attempt) {
      std::string steps = std::string(period.m, 'R') + std::string(period.n, 'U');
      Site v{1, 0};
      if (attempt < 1000) {
        std::shuffle(steps.begin(), steps.end(), rng);
        v.y = 2 * off(rng) + 1;
      } else {
        // Moving up-left raises every orbit key by (m + n) per step.
        const int k = window + attempt - 1000;
        v = Site{1 - 2 * k, 2 * k + 1};
      }
      const Site start = v;
      std::vector<std::pair<bool, i64>> edges;
      for (char c : steps) {
        if (c == 'R') {
          edges.push_back({false, site_key(period, Site{v.x + 1, v.y})});
          v.x += 2;
        } else {
          edges.push_back({true, site_key(period, Site{v.x, v.y + 1})});
          v.y += 2;
        }
      }
      bool fits = true;
      for (auto [vert, k] : edges) fits = fits && (vert ? load1 : load2)[k] < label_bound;
      if (!fits) continue;
      for (auto [vert, k] : edges) (vert ? load1 : load2)[k] += 1;
      paths[VertexPath{start, steps}] += 1;
      break;
    }
  }
  return superpose_paths(period, paths);
}

}  // namespace kfp
