#include "kfp/repcls.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>

#include "kfp/errors.hpp"
#include "kfp/mte.hpp"

namespace kfp {

ModuleDescriptor::ModuleDescriptor(ComponentReport component, Rat xi) : comp_(std::move(component)), xi_(xi) {
  const bool contractible = comp_.kind == ComponentKind::Contractible;
  if (contractible != (xi_ == 0))
    fail(Errc::InvalidInput, "xi = 0 iff the component is contractible (component " + comp_.id + ", xi = " +
                                 rat_str(xi_) + ")");
}

std::vector<ModuleFamily> classify_modules(const LatticeConfig& cfg, const Rat& a1, const Rat& a2) {
  std::vector<ModuleFamily> out;
  for (auto& c : components(cfg, a1, a2)) {
    ModuleFamily f;
    f.xi_free = c.kind != ComponentKind::Contractible;
    f.dim = c.area;
    f.component = std::move(c);
    out.push_back(std::move(f));
  }
  return out;
}

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> r;
  for (const auto& [name, pass] : checks)
    if (!pass) r.push_back(name);
  return r;
}

const Matrix& ModuleRealization::of(Gen g) const {
  switch (g) {
    case Gen::X1p: return x1p;
    case Gen::X1m: return x1m;
    case Gen::X2p: return x2p;
    case Gen::X2m: return x2m;
  }
  return h;
}

namespace {

// Face-graph edge: the E1 (kind 1) or E2 (kind 2) lattice edge orbit it crosses.
struct EdgeId {
  int kind;
  i64 key;
  friend auto operator<=>(const EdgeId&, const EdgeId&) = default;
};

// c * t^k, t the single free holonomy variable.
struct Mono {
  Rat c = 1;
  int k = 0;
  Mono& operator*=(const Mono& o) {
    c *= o.c;
    k += o.k;
    return *this;
  }
  Mono inv() const { return Mono{1 / c, -k}; }
  Mono pow(int e) const {
    Mono r;
    for (int i = 0; i < std::abs(e); ++i) r *= *this;
    return e < 0 ? r.inv() : r;
  }
};

struct Ctx {
  const LatticeConfig& cfg;
  Period p;
  Rat a1, a2, gamma;
  const Algebra& alg;

  Rat value(i64 t) const { return gamma * Rat(t); }
  // X_i^+ crosses this edge from src to tgt.
  i64 src(EdgeId e) const { return e.kind == 1 ? (e.key + p.n) / 2 : (e.key - p.m) / 2; }
  i64 tgt(EdgeId e) const { return e.kind == 1 ? src(e) - p.n : src(e) + p.m; }
  EdgeId out_edge(int kind, i64 t) const { return kind == 1 ? EdgeId{1, 2 * t - p.n} : EdgeId{2, 2 * t + p.m}; }
  EdgeId in_edge(int kind, i64 t) const { return kind == 1 ? EdgeId{1, 2 * t + p.n} : EdgeId{2, 2 * t - p.m}; }
  bool wall(EdgeId e) const { return cfg.label_key(e.kind == 1 ? SiteKind::E1 : SiteKind::E2, e.key) != 0; }
  Rat pval(EdgeId e) const {
    const Rat mu = value(src(e));
    return e.kind == 1 ? alg.params().p1.eval(mu + a1 / 2) : alg.params().p2.eval(mu + a2 / 2);
  }
  i64 delta(int step) const { return step == 1 ? -p.n : p.m; }
};

using Gauge = std::map<EdgeId, Rat>;  // A on each internal edge; B = p / A

std::vector<EdgeId> internal_edges(const Ctx& cx, const std::set<i64>& S) {
  std::vector<EdgeId> es;
  for (i64 t : S)
    for (int kind : {1, 2}) {
      EdgeId e = cx.out_edge(kind, t);
      if (cx.wall(e) || !S.count(cx.tgt(e))) continue;
      if (cx.pval(e) == 0) fail(Errc::GaugeInconsistency, "p vanishes on an unlabeled edge");
      es.push_back(e);
    }
  return es;
}

// Spanning tree by BFS from root; neighbour order right, left, up, down.
std::set<EdgeId> bfs_tree(const Ctx& cx, const std::set<i64>& S, const std::set<EdgeId>& edges, i64 root) {
  std::set<EdgeId> tree;
  std::set<i64> seen{root};
  std::queue<i64> q;
  q.push(root);
  while (!q.empty()) {
    i64 t = q.front();
    q.pop();
    for (EdgeId e : {cx.out_edge(1, t), cx.in_edge(1, t), cx.out_edge(2, t), cx.in_edge(2, t)}) {
      if (!edges.count(e)) continue;
      i64 u = cx.src(e) == t ? cx.tgt(e) : cx.src(e);
      if (seen.insert(u).second) {
        tree.insert(e);
        q.push(u);
      }
    }
  }
  if (seen.size() != S.size()) fail(Errc::GaugeInconsistency, "face set is not connected");
  return tree;
}

struct Plaquette {
  std::map<EdgeId, int> exps;  // prod A^e = rhs
  Rat rhs;
};

std::vector<Plaquette> plaquettes(const Ctx& cx, const std::set<EdgeId>& edges) {
  std::vector<Plaquette> out;
  const RatFunc& rt = cx.alg.rtilde_fn();
  std::set<i64> faces;
  for (EdgeId e : edges) faces.insert(cx.src(e));
  for (i64 w : faces) {
    // X2 X1 = X1 X2 R~(H) at v_w.
    EdgeId a = cx.out_edge(1, w), b = cx.out_edge(2, w - cx.p.n);
    EdgeId c = cx.out_edge(2, w), d = cx.out_edge(1, w + cx.p.m);
    if (!edges.count(a) || !edges.count(b) || !edges.count(c) || !edges.count(d)) continue;
    Plaquette pl;
    ++pl.exps[a];
    ++pl.exps[b];
    --pl.exps[c];
    --pl.exps[d];
    std::erase_if(pl.exps, [](const auto& kv) { return kv.second == 0; });
    const Rat mu = cx.value(w);
    if (!rt.regular_at(mu) || rt.eval(mu) == 0) fail(Errc::GaugeInconsistency, "R~ degenerate on an internal plaquette");
    pl.rhs = rt.eval(mu);
    out.push_back(std::move(pl));
  }
  return out;
}

// Holonomy of C at face t along seq, or nullopt if the path leaves the edge set or f_i(mu) = 0.
std::optional<Mono> holonomy(const Ctx& cx, const std::map<EdgeId, Mono>& val, i64 t, const Seq& s) {
  Poly f = Algebra::f_of(cx.alg.ord_profile(s));
  const Rat mu = cx.value(t);
  if (f.eval(mu) == 0) return std::nullopt;
  Mono h;
  i64 cur = t;
  for (int step : s) {
    auto it = val.find(cx.out_edge(step, cur));
    if (it == val.end()) return std::nullopt;
    h *= it->second;
    cur += cx.delta(step);
  }
  ensure(cur == t, "sequence of degree (m,n) is not a loop");
  h *= Mono{1 / f.eval(mu), 0};
  return h;
}

Gauge solve_gauge(const Ctx& cx, const std::set<i64>& S, i64 root, const Rat& xi, bool incontractible) {
  auto edge_list = internal_edges(cx, S);
  std::set<EdgeId> edges(edge_list.begin(), edge_list.end());
  std::map<EdgeId, Mono> val;
  for (EdgeId e : bfs_tree(cx, S, edges, root)) val[e] = Mono{cx.pval(e), 0};
  auto pls = plaquettes(cx, edges);
  bool free_used = false;
  for (;;) {
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& pl : pls) {
        const EdgeId* unknown = nullptr;
        int e_unknown = 0, n_unknown = 0;
        Mono known;
        for (const auto& [e, x] : pl.exps) {
          auto it = val.find(e);
          if (it == val.end()) {
            ++n_unknown;
            unknown = &e;
            e_unknown = x;
          } else {
            known *= it->second.pow(x);
          }
        }
        if (n_unknown != 1) continue;
        if (std::abs(e_unknown) != 1) fail(Errc::GaugeInconsistency, "plaquette needs a root extraction");
        Mono r = Mono{pl.rhs, 0};
        r *= known.inv();
        val[*unknown] = e_unknown == 1 ? r : r.inv();
        progress = true;
      }
    }
    auto open = std::find_if(edges.begin(), edges.end(), [&](EdgeId e) { return !val.count(e); });
    if (open == edges.end()) break;
    if (free_used) fail(Errc::GaugeInconsistency, "more than one free holonomy");
    free_used = true;
    val[*open] = Mono{1, 1};
  }
  for (const auto& pl : pls) {
    Mono lhs;
    for (const auto& [e, x] : pl.exps) lhs *= val.at(e).pow(x);
    if (lhs.k != 0 || lhs.c != pl.rhs) fail(Errc::GaugeInconsistency, "plaquette relation violated");
  }
  if (free_used && !incontractible) fail(Errc::GaugeInconsistency, "free holonomy on a contractible component");
  Rat tval = 1;
  if (incontractible) {
    std::optional<Mono> hol;
    std::vector<i64> order{root};
    for (i64 t : S)
      if (t != root) order.push_back(t);
    for (i64 t : order) {
      for (const Seq& s : all_seqs(cx.p.m, cx.p.n))
        if ((hol = holonomy(cx, val, t, s))) break;
      if (hol) break;
    }
    if (!hol) fail(Errc::GaugeInconsistency, "no loop with f_i(mu) != 0 inside the component");
    if (free_used) {
      if (std::abs(hol->k) != 1) fail(Errc::GaugeInconsistency, "holonomy does not depend linearly on the free edge");
      tval = hol->k == 1 ? Rat(xi / hol->c) : Rat(hol->c / xi);
    } else if (hol->c != xi) {
      fail(Errc::GaugeInconsistency, "holonomy fixed away from xi");
    }
  }
  Gauge g;
  for (const auto& [e, m] : val) {
    Rat c = m.c;
    for (int i = 0; i < std::abs(m.k); ++i) c = m.k > 0 ? Rat(c * tval) : Rat(c / tval);
    g[e] = c;
  }
  return g;
}

Matrix zero_matrix(size_t n) { return Matrix(n, std::vector<Rat>(n, Rat(0))); }

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  const size_t n = a.size();
  Matrix c = zero_matrix(n);
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (size_t j = 0; j < n; ++j)
        if (b[k][j] != 0) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

Matrix mat_add(const Matrix& a, const Matrix& b, const Rat& s = 1) {
  Matrix c = a;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) c[i][j] += s * b[i][j];
  return c;
}

Matrix diag_of(const std::vector<Rat>& basis, const RatFunc& f) {
  Matrix d = zero_matrix(basis.size());
  for (size_t i = 0; i < basis.size(); ++i) d[i][i] = f.eval(basis[i]);
  return d;
}

bool is_zero_matrix(const Matrix& a) {
  for (const auto& row : a)
    for (const Rat& x : row)
      if (x != 0) return false;
  return true;
}

std::optional<i64> face_index_of(const Rat& gamma, const Rat& mu) {
  Rat t = mu / gamma;
  if (!is_integer(t)) return std::nullopt;
  return t.get_num().get_si();
}

const ComponentReport* find_component(const std::vector<ComponentReport>& cs, const std::string& id) {
  for (const auto& c : cs)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace

ModuleRealization build_module(const LatticeConfig& cfg, const Rat& a1, const Rat& a2, const ModuleDescriptor& d) {
  const ComponentReport& comp = d.component();
  if (!comp.finite()) fail(Errc::InfiniteComponent, "component " + comp.id + " is infinite; use the lazy evaluator");
  Algebra alg(params_from_config(cfg, a1, a2));
  Ctx cx{cfg, cfg.period(), a1, a2, alpha_gamma(cfg.period(), a1, a2), alg};
  std::set<i64> S(comp.faces.begin(), comp.faces.end());
  const bool inc = comp.kind != ComponentKind::Contractible;
  Gauge g = solve_gauge(cx, S, comp.faces.front(), d.xi(), inc);

  ModuleRealization m;
  m.a1 = a1;
  m.a2 = a2;
  m.component_id = comp.id;
  m.xi = d.xi();
  m.incontractible = inc;
  m.basis = comp.support;
  const size_t n = m.basis.size();
  std::map<i64, size_t> idx;
  for (size_t i = 0; i < n; ++i) idx[comp.faces[i]] = i;
  m.h = zero_matrix(n);
  for (size_t i = 0; i < n; ++i) m.h[i][i] = m.basis[i];
  m.x1p = m.x1m = m.x2p = m.x2m = zero_matrix(n);
  for (const auto& [e, A] : g) {
    const size_t s = idx.at(cx.src(e)), t = idx.at(cx.tgt(e));
    Matrix& up = e.kind == 1 ? m.x1p : m.x2p;
    Matrix& down = e.kind == 1 ? m.x1m : m.x2m;
    up[t][s] = A;
    down[s][t] = cx.pval(e) / A;
  }
  m.verification = verify_module(cfg, a1, a2, m);
  if (!m.verification.ok()) {
    std::string f;
    for (const auto& x : m.verification.failures()) f += " [" + x + "]";
    fail(Errc::GaugeInconsistency, "built module fails verification:" + f);
  }
  return m;
}

VerifyReport verify_module(const LatticeConfig& cfg, const Rat& a1, const Rat& a2, const ModuleRealization& m) {
  VerifyReport r;
  auto check = [&](const std::string& name, auto&& fn) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    r.checks.push_back({name, ok});
  };
  const size_t n = m.basis.size();
  auto square = [&](const Matrix& a) {
    if (a.size() != n) return false;
    return std::all_of(a.begin(), a.end(), [&](const auto& row) { return row.size() == n; });
  };
  const bool shaped = square(m.h) && square(m.x1p) && square(m.x1m) && square(m.x2p) && square(m.x2m);
  r.checks.push_back({"matrix shapes", shaped});
  if (!shaped) return r;

  std::unique_ptr<Algebra> alg;
  try {
    alg = std::make_unique<Algebra>(params_from_config(cfg, a1, a2));
  } catch (const std::exception&) {
    r.checks.push_back({"algebra parameters", false});
    return r;
  }
  const Poly& p1 = alg->params().p1;
  const Poly& p2 = alg->params().p2;
  const Matrix& H = m.h;

  check("H diagonal with the basis weights", [&] {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j)
        if (H[i][j] != (i == j ? m.basis[i] : Rat(0))) return false;
    return true;
  });
  check("weight spaces one-dimensional", [&] {
    std::set<Rat> w(m.basis.begin(), m.basis.end());
    return w.size() == n;
  });
  struct HRel {
    const char* name;
    const Matrix* x;
    Rat a;
  };
  for (const HRel& hr : {HRel{"[H,X1+] = a1 X1+", &m.x1p, a1}, HRel{"[H,X1-] = -a1 X1-", &m.x1m, -a1},
                         HRel{"[H,X2+] = a2 X2+", &m.x2p, a2}, HRel{"[H,X2-] = -a2 X2-", &m.x2m, -a2}})
    check(hr.name, [&] {
      Matrix lhs = mat_add(mat_mul(H, *hr.x), mat_mul(*hr.x, H), -1);
      return is_zero_matrix(mat_add(lhs, *hr.x, -hr.a));
    });
  auto prel = [&](const Matrix& x, const Matrix& y, const Poly& p, const Rat& s) {
    return is_zero_matrix(mat_add(mat_mul(x, y), diag_of(m.basis, RatFunc(p.shift(s))), -1));
  };
  check("X1+ X1- = p1(H - a1/2)", [&] { return prel(m.x1p, m.x1m, p1, -a1 / 2); });
  check("X1- X1+ = p1(H + a1/2)", [&] { return prel(m.x1m, m.x1p, p1, a1 / 2); });
  check("X2+ X2- = p2(H - a2/2)", [&] { return prel(m.x2p, m.x2m, p2, -a2 / 2); });
  check("X2- X2+ = p2(H + a2/2)", [&] { return prel(m.x2m, m.x2p, p2, a2 / 2); });
  check("X1+ X2- = X2- X1+", [&] { return mat_mul(m.x1p, m.x2m) == mat_mul(m.x2m, m.x1p); });
  check("X1- X2+ = X2+ X1-", [&] { return mat_mul(m.x1m, m.x2p) == mat_mul(m.x2p, m.x1m); });
  const RatFunc& rt = alg->rtilde_fn();
  check("X2+ X1+ den(H) = X1+ X2+ num(H)", [&] {
    return mat_mul(mat_mul(m.x2p, m.x1p), diag_of(m.basis, RatFunc(rt.den()))) ==
           mat_mul(mat_mul(m.x1p, m.x2p), diag_of(m.basis, RatFunc(rt.num())));
  });
  check("den(H) X1- X2- = num(H) X2- X1-", [&] {
    return mat_mul(diag_of(m.basis, RatFunc(rt.den())), mat_mul(m.x1m, m.x2m)) ==
           mat_mul(diag_of(m.basis, RatFunc(rt.num())), mat_mul(m.x2m, m.x1m));
  });

  const Period per = cfg.period();
  const Rat gamma = alpha_gamma(per, a1, a2);
  check("no transitions across labeled edges", [&] {
    Ctx cx{cfg, per, a1, a2, gamma, *alg};
    for (size_t j = 0; j < n; ++j) {
      auto t = face_index_of(gamma, m.basis[j]);
      if (!t) return false;
      const std::pair<const Matrix*, EdgeId> moves[4] = {{&m.x1p, cx.out_edge(1, *t)}, {&m.x1m, cx.in_edge(1, *t)},
                                                         {&m.x2p, cx.out_edge(2, *t)}, {&m.x2m, cx.in_edge(2, *t)}};
      for (const auto& [x, e] : moves) {
        if (!cx.wall(e)) continue;
        for (size_t i = 0; i < n; ++i)
          if ((*x)[i][j] != 0) return false;
      }
    }
    return true;
  });
  if (m.incontractible) {
    check("C acts as xi", [&] {
      std::map<int, const Matrix*> step{{1, &m.x1p}, {2, &m.x2p}};
      for (size_t j = 0; j < n; ++j) {
        bool seen = false;
        for (const Seq& s : all_seqs(per.m, per.n)) {
          const Rat f = Algebra::f_of(alg->ord_profile(s)).eval(m.basis[j]);
          if (f == 0) continue;
          std::vector<Rat> v(n, Rat(0));
          v[j] = 1;
          for (int st : s) {
            std::vector<Rat> w(n, Rat(0));
            for (size_t i = 0; i < n; ++i)
              for (size_t k = 0; k < n; ++k) w[i] += (*step[st])[i][k] * v[k];
            v = std::move(w);
          }
          for (size_t i = 0; i < n; ++i)
            if (v[i] / f != (i == j ? m.xi : Rat(0))) return false;
          seen = true;
        }
        if (!seen) return false;
      }
      return true;
    });
  }
  check("simple (transition graph strongly connected)", [&] {
    if (n == 0) return false;
    auto reach = [&](bool forward) {
      std::vector<bool> seen(n, false);
      std::deque<size_t> q{0};
      seen[0] = true;
      while (!q.empty()) {
        size_t j = q.front();
        q.pop_front();
        for (const Matrix* x : {&m.x1p, &m.x1m, &m.x2p, &m.x2m})
          for (size_t i = 0; i < n; ++i) {
            const Rat& e = forward ? (*x)[i][j] : (*x)[j][i];
            if (e != 0 && !seen[i]) {
              seen[i] = true;
              q.push_back(i);
            }
          }
      }
      return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    return reach(true) && reach(false);
  });
  check("dimension equals component area", [&] {
    auto cs = components(cfg, a1, a2);
    const ComponentReport* c = find_component(cs, m.component_id);
    return c && c->area && *c->area == static_cast<i64>(n) && c->support == m.basis;
  });
  return r;
}

struct LazyModule::State {
  LatticeConfig cfg;
  Rat a1, a2, gamma;
  ModuleDescriptor desc;
  std::unique_ptr<Algebra> alg;
  std::optional<ModuleRealization> finite;
  std::map<i64, size_t> finite_index;
  i64 root = 0;
  i64 radius = 0;
  std::set<i64> faces;
  Gauge gauge;

  Ctx ctx() const { return Ctx{cfg, cfg.period(), a1, a2, gamma, *alg}; }

  bool bounded_below() const { return desc.component().id == "top"; }
  bool bounded_above() const { return desc.component().id == "bottom"; }

  std::set<i64> window(i64 R) const {
    const Ctx cx = ctx();
    const i64 lo = root - R, hi = root + R;
    std::set<i64> s{root};
    std::queue<i64> q;
    q.push(root);
    while (!q.empty()) {
      i64 t = q.front();
      q.pop();
      for (EdgeId e : {cx.out_edge(1, t), cx.in_edge(1, t), cx.out_edge(2, t), cx.in_edge(2, t)}) {
        if (cx.wall(e)) continue;
        i64 u = cx.src(e) == t ? cx.tgt(e) : cx.src(e);
        // Walls bound the far side of a half-infinite component.
        if ((u > hi && !bounded_above()) || (u < lo && !bounded_below())) continue;
        ensure(u >= root - 64 * R - 1024 && u <= root + 64 * R + 1024, "component leaks past its walls");
        if (s.insert(u).second) q.push(u);
      }
    }
    return s;
  }

  void grow(i64 R) {
    const Ctx cx = ctx();
    std::set<i64> S = window(R);
    Gauge g = solve_gauge(cx, S, root, desc.xi(), true);
    if (!gauge.empty()) {
      // Diagonal gauge change v'_t = d_t v_t turns A into A d_src / d_tgt.
      std::map<i64, Rat> d{{root, Rat(1)}};
      std::queue<i64> q;
      q.push(root);
      while (!q.empty()) {
        i64 t = q.front();
        q.pop();
        for (EdgeId e : {cx.out_edge(1, t), cx.in_edge(1, t), cx.out_edge(2, t), cx.in_edge(2, t)}) {
          auto it = gauge.find(e);
          if (it == gauge.end()) continue;
          const i64 s = cx.src(e), u = cx.tgt(e);
          if (s == t && !d.count(u)) {
            d[u] = g.at(e) * d[s] / it->second;
            q.push(u);
          } else if (u == t && !d.count(s)) {
            d[s] = it->second * d[u] / g.at(e);
            q.push(s);
          }
        }
      }
      for (auto& [e, A] : g) {
        auto ds = d.find(cx.src(e)), dt = d.find(cx.tgt(e));
        A = A * (ds == d.end() ? Rat(1) : ds->second) / (dt == d.end() ? Rat(1) : dt->second);
      }
      for (const auto& [e, A] : gauge)
        if (g.at(e) != A) fail(Errc::GaugeInconsistency, "grown window disagrees with the cached gauge");
    }
    faces = std::move(S);
    gauge = std::move(g);
    radius = R;
  }

  void cover(i64 t) {
    const Period p = cfg.period();
    const i64 margin = p.m + p.n + 1;
    while (std::abs(t - root) + margin > radius) grow(2 * radius);
  }
};

LazyModule::LazyModule(const LatticeConfig& cfg, const Rat& a1, const Rat& a2, const ModuleDescriptor& d)
    : s_(std::make_unique<State>(State{cfg, a1, a2, alpha_gamma(cfg.period(), a1, a2), d, nullptr, std::nullopt,
                                       {}, 0, 0, {}, {}})) {
  s_->alg = std::make_unique<Algebra>(params_from_config(cfg, a1, a2));
  const ComponentReport& c = d.component();
  if (c.finite()) {
    s_->finite = build_module(cfg, a1, a2, d);
    for (size_t i = 0; i < c.faces.size(); ++i) s_->finite_index[c.faces[i]] = i;
    return;
  }
  ensure(c.winding.has_value(), "infinite component without a base face");
  s_->root = face_index(cfg.period(), c.winding->first);
  const Period p = cfg.period();
  s_->grow(2 * (static_cast<i64>(p.m) * p.n + p.m + p.n) + 4);
}

LazyModule::~LazyModule() = default;

Rat LazyModule::act_h(const Rat& mu) {
  (void)act(mu, Gen::X1p);  // support check
  return mu;
}

std::optional<Action> LazyModule::act(const Rat& mu, Gen g) {
  State& s = *s_;
  auto t = face_index_of(s.gamma, mu);
  if (!t) fail(Errc::WeightOutsideSupport, rat_str(mu) + " is not a face value");
  const Ctx cx = s.ctx();
  const int kind = (g == Gen::X1p || g == Gen::X1m) ? 1 : 2;
  const bool raise = g == Gen::X1p || g == Gen::X2p;
  const EdgeId e = raise ? cx.out_edge(kind, *t) : cx.in_edge(kind, *t);
  const i64 u = raise ? cx.tgt(e) : cx.src(e);
  if (s.finite) {
    auto it = s.finite_index.find(*t);
    if (it == s.finite_index.end()) fail(Errc::WeightOutsideSupport, rat_str(mu) + " is outside the component");
    auto jt = s.finite_index.find(u);
    if (jt == s.finite_index.end()) return std::nullopt;
    const Rat& c = s.finite->of(g)[jt->second][it->second];
    if (c == 0) return std::nullopt;
    return Action{c, s.finite->basis[jt->second]};
  }
  s.cover(*t);
  if (!s.faces.count(*t)) fail(Errc::WeightOutsideSupport, rat_str(mu) + " is outside the component");
  auto it = s.gauge.find(e);
  if (it == s.gauge.end()) {
    ensure(cx.wall(e), "interior edge missing from the gauge");
    return std::nullopt;
  }
  const Rat c = raise ? it->second : Rat(cx.pval(e) / it->second);
  return Action{c, cx.value(u)};
}

std::optional<Action> lazy_action(const LatticeConfig& cfg, const Rat& a1, const Rat& a2, const ModuleDescriptor& d,
                                  const Rat& mu, Gen g) {
  LazyModule lm(cfg, a1, a2, d);
  return lm.act(mu, g);
}

std::string isoclass_key(const ModuleDescriptor& d) { return d.component().id + "|" + rat_str(d.xi()); }

}  // namespace kfp
