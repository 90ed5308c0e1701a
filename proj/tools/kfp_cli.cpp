#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kfp/algebra.hpp"
#include "kfp/errors.hpp"
#include "kfp/golden.hpp"
#include "kfp/grid.hpp"
#include "kfp/io.hpp"
#include "kfp/mte.hpp"
#include "kfp/qpoly.hpp"
#include "kfp/render.hpp"
#include "kfp/repcls.hpp"

using namespace kfp;
using io::json;

namespace {

// Bad flag values and flag combinations; exit code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Opts {
  std::string alpha;
  std::string format = "text";
  std::string out;
  bool show_orders = false;
};

void emit(const Opts& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) fail(Errc::InvalidInput, "cannot write " + o.out);
  f << text;
}

// Resolves alpha: flag, then the config file, then (-n, m).
std::pair<Rat, Rat> resolve_alpha(const Opts& o, const io::ConfigFile& cf) {
  Period p = cf.cfg.period();
  std::pair<Rat, Rat> a;
  if (!o.alpha.empty()) {
    try {
      a = io::parse_alpha(o.alpha);
    } catch (const Error& e) {
      throw UsageError(std::string("--alpha: ") + e.what());
    }
  } else if (cf.alpha) {
    a = *cf.alpha;
  } else {
    return {Rat(-p.n), Rat(p.m)};
  }
  if (Rat(p.m) * a.first + Rat(p.n) * a.second != 0)
    throw UsageError("--alpha " + rat_str(a.first) + "," + rat_str(a.second) + " violates m*a1 + n*a2 = 0 for period (" +
                     std::to_string(p.m) + "," + std::to_string(p.n) + ")");
  if (a.first == 0 && a.second == 0) throw UsageError("--alpha must be nonzero");
  return a;
}

std::string alpha_str(const std::pair<Rat, Rat>& a) { return "(" + rat_str(a.first) + ", " + rat_str(a.second) + ")"; }

int cmd_validate(const Opts& o, const std::string& path) {
  io::ConfigFile cf = io::config_from_json(io::read_file(path));
  const LatticeConfig& cfg = cf.cfg;
  FiveVertexReport fv = five_vertex_report(cfg);
  if (o.format == "json") {
    json j{{"ok", true},
           {"period", json::array({cfg.period().m, cfg.period().n})},
           {"paths", cfg.path_count()},
           {"labeled_orbits", cfg.labels().size()},
           {"trivial", cfg.trivial()},
           {"five_vertex", fv.consistent() && fv.primary},
           {"degenerate_period", cfg.period().degenerate()}};
    emit(o, io::dump(j));
  } else {
    std::ostringstream s;
    s << "OK, N=" << cfg.path_count() << ", period (" << cfg.period().m << "," << cfg.period().n << ")";
    if (cfg.trivial()) s << ", trivial";
    s << ", " << cfg.labels().size() << " labeled edge orbits";
    if (fv.primary) s << ", five-vertex";
    if (cfg.period().degenerate()) s << ", degenerate period";
    s << "\n";
    emit(o, s.str());
  }
  return 0;
}

int cmd_factor(const Opts& o, const std::vector<std::string>& files) {
  if (files.size() != 2) throw UsageError("factor expects two polynomial files (p1, p2)");
  if (o.alpha.empty()) throw UsageError("factor requires --alpha a1,a2");
  std::pair<Rat, Rat> a;
  try {
    a = io::parse_alpha(o.alpha);
  } catch (const Error& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  Poly p1 = io::poly_from_json(io::read_file(files[0]));
  Poly p2 = io::poly_from_json(io::read_file(files[1]));
  FactoredSolution fs = factor_solution(p1, p2, a.first, a.second);
  json j = io::factored_to_json(fs, a.first, a.second);
  if (o.format == "json") {
    emit(o, io::dump(j));
  } else {
    std::ostringstream s;
    s << fs.blocks.size() << " block(s), alpha " << alpha_str(a) << ", scales " << rat_str(fs.scale1) << ", "
      << rat_str(fs.scale2) << "\n";
    for (const auto& b : fs.blocks) {
      s << "  shift " << rat_str(b.shift) << ": period (" << b.cfg.period().m << "," << b.cfg.period().n << "), N="
        << b.cfg.path_count() << ", " << b.cfg.labels().size() << " labeled edge orbits\n";
    }
    emit(o, s.str());
  }
  return 0;
}

int cmd_compose(const Opts& o, const std::string& path, const std::string& out1, const std::string& out2) {
  auto [fs, a] = io::factored_from_json(io::read_file(path));
  auto [p1, p2] = compose_solution(fs, a.first, a.second);
  if (!out1.empty()) io::write_file(out1, io::poly_to_json(p1));
  if (!out2.empty()) io::write_file(out2, io::poly_to_json(p2));
  if (o.format == "json") {
    emit(o, io::dump(json{{"alpha", io::alpha_to_json(a.first, a.second)},
                          {"p1", io::poly_to_json(p1)},
                          {"p2", io::poly_to_json(p2)}}));
  } else {
    emit(o, "p1 = " + p1.str() + "\np2 = " + p2.str() + "\n");
  }
  return 0;
}

int cmd_classify(const Opts& o, const std::string& path) {
  io::ConfigFile cf = io::config_from_json(io::read_file(path));
  auto a = resolve_alpha(o, cf);
  auto fams = classify_modules(cf.cfg, a.first, a.second);
  if (o.format == "json") {
    json rows = json::array();
    for (const auto& f : fams) {
      json r = io::component_to_json(f.component);
      r["xi"] = f.xi_free ? "Q^x" : "0";
      r["dim"] = f.dim ? json(*f.dim) : json(nullptr);
      rows.push_back(std::move(r));
    }
    emit(o, io::dump(json{{"alpha", io::alpha_to_json(a.first, a.second)}, {"families", std::move(rows)}}));
  } else {
    std::ostringstream s;
    s << "alpha " << alpha_str(a) << "\n";
    s << "component  kind                    dim       xi\n";
    for (const auto& f : fams) {
      std::string id = f.component.id, kind = kind_name(f.component.kind);
      std::string dim = f.dim ? std::to_string(*f.dim) : "infinite";
      s << id << std::string(id.size() < 11 ? 11 - id.size() : 1, ' ') << kind
        << std::string(kind.size() < 24 ? 24 - kind.size() : 1, ' ') << dim
        << std::string(dim.size() < 10 ? 10 - dim.size() : 1, ' ') << (f.xi_free ? "in Q^x" : "= 0") << "\n";
    }
    emit(o, s.str());
  }
  return 0;
}

std::string matrix_text(const std::string& name, const Matrix& m) {
  std::ostringstream s;
  s << name << " =\n";
  for (const auto& row : m) {
    s << "  [";
    for (size_t i = 0; i < row.size(); ++i) s << (i ? " " : "") << rat_str(row[i]);
    s << "]\n";
  }
  return s.str();
}

const char* gen_name(Gen g) {
  switch (g) {
    case Gen::X1p: return "X1+";
    case Gen::X1m: return "X1-";
    case Gen::X2p: return "X2+";
    case Gen::X2m: return "X2-";
  }
  return "?";
}

int cmd_module(const Opts& o, const std::string& path, const std::string& comp_id, const std::optional<std::string>& xi_s,
               const std::optional<std::string>& weight_s) {
  io::ConfigFile cf = io::config_from_json(io::read_file(path));
  auto a = resolve_alpha(o, cf);
  std::optional<ComponentReport> comp;
  for (auto& c : components(cf.cfg, a.first, a.second))
    if (c.id == comp_id) comp = c;
  if (!comp) {
    std::string ids;
    for (auto& c : components(cf.cfg, a.first, a.second)) ids += " " + c.id;
    throw UsageError("no component \"" + comp_id + "\"; components are" + ids);
  }
  Rat xi = 0;
  if (xi_s) {
    try {
      xi = parse_rat(*xi_s);
    } catch (const std::exception& e) {
      throw UsageError(std::string("--xi: ") + e.what());
    }
  } else if (comp->kind != ComponentKind::Contractible) {
    throw UsageError("component " + comp_id + " is incontractible; pass --xi with a nonzero rational");
  }
  std::optional<ModuleDescriptor> d;
  try {
    d.emplace(*comp, xi);
  } catch (const Error& e) {
    throw UsageError(std::string("xi ") + rat_str(xi) + " rejected (xi = 0 iff D is contractible): " + e.what());
  }

  if (!comp->finite()) {
    if (!weight_s) throw UsageError("component " + comp_id + " is infinite; pass --weight to evaluate the action lazily");
    Rat mu = parse_rat(*weight_s);
    LazyModule lm(cf.cfg, a.first, a.second, *d);
    Rat h = lm.act_h(mu);
    json acts = json::object();
    std::ostringstream s;
    s << "component " << comp_id << ", xi " << rat_str(xi) << ", weight " << rat_str(mu) << "\n";
    s << "  H v = " << rat_str(h) << " v\n";
    for (Gen g : {Gen::X1p, Gen::X1m, Gen::X2p, Gen::X2m}) {
      auto act = lm.act(mu, g);
      if (act) {
        acts[gen_name(g)] = json{{"coeff", rat_str(act->coeff)}, {"target", rat_str(act->target)}};
        s << "  " << gen_name(g) << " v = " << rat_str(act->coeff) << " v[" << rat_str(act->target) << "]\n";
      } else {
        acts[gen_name(g)] = nullptr;
        s << "  " << gen_name(g) << " v = 0\n";
      }
    }
    if (o.format == "json") {
      emit(o, io::dump(json{{"component", comp_id}, {"xi", rat_str(xi)}, {"weight", rat_str(mu)}, {"H", rat_str(h)},
                            {"action", std::move(acts)}}));
    } else {
      emit(o, s.str());
    }
    return 0;
  }

  ModuleRealization m = build_module(cf.cfg, a.first, a.second, *d);
  if (o.format == "json") {
    emit(o, io::dump(io::module_to_json(m)));
  } else {
    std::ostringstream s;
    s << "component " << m.component_id << ", xi " << rat_str(m.xi) << ", dim " << m.basis.size() << ", basis weights";
    for (const auto& w : m.basis) s << " " << rat_str(w);
    s << "\n" << matrix_text("H", m.h) << matrix_text("X1+", m.x1p) << matrix_text("X1-", m.x1m)
      << matrix_text("X2+", m.x2p) << matrix_text("X2-", m.x2m);
    s << "verification: " << (m.verification.ok() ? "all pass" : "FAILED") << " (" << m.verification.checks.size()
      << " checks)\n";
    emit(o, s.str());
  }
  return m.verification.ok() ? 0 : 1;
}

std::string frac_glyph(const Rat& c) {
  static const std::map<std::string, std::string> glyphs{{"1/2", "½"}, {"1/3", "⅓"}, {"1/4", "¼"}, {"2/3", "⅔"},
                                                          {"3/4", "¾"}, {"1", ""}, {"-1", "-"}, {"-1/2", "-½"}};
  auto it = glyphs.find(rat_str(c));
  return it != glyphs.end() ? it->second : rat_str(c) + "·";
}

// c * (ad X1+)^k (X2+) or c * (ad X2+)^l (X1+) when the generator has that shape.
std::optional<std::string> nested_commutator(const Algebra& alg, const Elem& c, Deg g) {
  auto try_side = [&](Gen outer, Gen inner, i64 times, const char* on, const char* in) -> std::optional<std::string> {
    Elem e = alg.gen(inner);
    for (i64 i = 0; i < times; ++i) e = alg.commutator(alg.gen(outer), e);
    if (e.is_zero()) return std::nullopt;
    RatFunc r = c.coeff(g) / e.coeff(g);
    if (!r.is_constant()) return std::nullopt;
    Rat k = r.constant_value();
    if (k * e != c) return std::nullopt;
    std::string s = in;
    for (i64 i = 0; i < times; ++i) s = std::string("[") + on + "," + s + "]";
    return frac_glyph(k) + s;
  };
  if (g.second == 1 && g.first >= 1) return try_side(Gen::X1p, Gen::X2p, g.first, "X₁", "X₂");
  if (g.first == 1 && g.second >= 1) return try_side(Gen::X2p, Gen::X1p, g.second, "X₂", "X₁");
  return std::nullopt;
}

std::string seq_word(const Seq& s) {
  std::string w;
  for (auto it = s.rbegin(); it != s.rend(); ++it) w += (w.empty() ? "X" : " X") + std::to_string(*it);
  return w;
}

int cmd_center(const Opts& o, const std::string& path) {
  io::ConfigFile cf = io::config_from_json(io::read_file(path));
  auto a = resolve_alpha(o, cf);
  Algebra alg(params_from_config(cf.cfg, a.first, a.second));
  LiftResult lr = alg.lift_center();
  if (!lr.liftable) {
    if (o.format == "json") {
      emit(o, io::dump(json{{"center", "scalars"}, {"bezout_gcd", lr.gcd.str()}}));
    } else {
      emit(o, "Z = ℂ\n  (no central lift: the Bezout gcd is " + lr.gcd.str() + ")\n");
    }
    return 0;
  }
  Deg g = *lr.c.degree();
  auto nested = nested_commutator(alg, lr.c, g);
  if (o.format == "json") {
    json comb = json::array();
    for (const auto& [seq, poly] : lr.combination)
      comb.push_back(json{{"seq", seq_str(seq)}, {"coeff", io::poly_to_json(poly)}});
    json j{{"center", "laurent"},
           {"degree", json::array({g.first, g.second})},
           {"generator", lr.c.str()},
           {"combination", std::move(comb)}};
    if (nested) j["commutator"] = *nested;
    emit(o, io::dump(j));
  } else {
    std::ostringstream s;
    s << "Z = ℂ[C, C⁻¹], C of degree (" << g.first << "," << g.second << ")\n";
    if (nested) s << "C = " << *nested << "\n";
    s << "C =";
    bool first = true;
    for (const auto& [seq, poly] : lr.combination) {
      if (poly.is_zero()) continue;
      s << (first ? " " : " + ") << "(" << poly.str("H") << ") " << seq_word(seq);
      first = false;
    }
    s << "\nnormal form: " << lr.c.str() << "\n";
    emit(o, s.str());
  }
  return 0;
}

int cmd_verify_examples(const Opts& o, const std::vector<std::string>& only) {
  const std::vector<std::pair<std::string, std::function<golden::Suite()>>> suites{
      {"center", golden::center_21_single},
      {"lie-heisenberg", golden::lie_heisenberg},
      {"finite-w-2", [] { return golden::finite_w(2); }},
      {"finite-w-3", [] { return golden::finite_w(3); }},
      {"affine-a11-2", [] { return golden::affine_a11(2); }},
      {"affine-a11-3", [] { return golden::affine_a11(3); }},
      {"order7", golden::order7},
  };
  for (const auto& name : only) {
    bool known = false;
    for (const auto& s : suites) known = known || s.first == name;
    if (!known) {
      std::string names;
      for (const auto& s : suites) names += " " + s.first;
      throw UsageError("unknown suite \"" + name + "\"; suites are" + names);
    }
  }
  bool all = true;
  json out = json::array();
  std::ostringstream s;
  for (const auto& [key, run] : suites) {
    if (!only.empty() && std::find(only.begin(), only.end(), key) == only.end()) continue;
    golden::Suite su = run();
    all = all && su.ok();
    json checks = json::array();
    s << "[" << (su.ok() ? "PASS" : "FAIL") << "] " << su.name << " (" << key << ")\n";
    for (const auto& c : su.checks) {
      s << "    " << (c.pass ? "pass" : "FAIL") << "  " << c.name;
      if (!c.detail.empty()) s << "  :: " << c.detail;
      s << "\n";
      checks.push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    out.push_back(json{{"suite", key}, {"title", su.name}, {"ok", su.ok()}, {"checks", std::move(checks)}});
  }
  if (o.format == "json") {
    emit(o, io::dump(json{{"ok", all}, {"suites", std::move(out)}}));
  } else {
    s << (all ? "all suites pass\n" : "some checks FAILED\n");
    emit(o, s.str());
  }
  return all ? 0 : 1;
}

int cmd_render(const Opts& o, const std::string& path) {
  io::ConfigFile cf = io::config_from_json(io::read_file(path));
  RenderOptions ro;
  ro.show_orders = o.show_orders;
  ro.alpha = resolve_alpha(o, cf);
  if (o.format == "json") throw UsageError("render supports --format svg or text");
  emit(o, o.format == "svg" ? render_svg(cf.cfg, ro) : render_ascii(cf.cfg, ro));
  return 0;
}

int cmd_sample(const Opts& o, const std::string& period_s, int count, int paths, int labels, std::uint64_t seed,
               const std::string& out_dir) {
  auto comma = period_s.find(',');
  if (comma == std::string::npos) throw UsageError("--period must be m,n");
  Period p;
  try {
    p = make_period(std::stoi(period_s.substr(0, comma)), std::stoi(period_s.substr(comma + 1)));
  } catch (const Error& e) {
    throw UsageError(e.what());
  } catch (const std::exception&) {
    throw UsageError("--period must be m,n");
  }
  if (count < 0 || paths < 0 || labels < 1) throw UsageError("--count and --paths must be >= 0, --labels >= 1");
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  int five = 0, with_contractible = 0;
  std::map<i64, int> hist;  // finite component dimension -> count
  for (int i = 0; i < count; ++i) {
    LatticeConfig cfg = sample_config(p, paths, labels, seed + static_cast<std::uint64_t>(i));
    if (five_vertex_report(cfg).primary) ++five;
    bool contr = false;
    for (const auto& f : classify_modules(cfg, Rat(-p.n), Rat(p.m))) {
      if (f.component.kind == ComponentKind::Contractible) contr = true;
      if (f.dim) ++hist[*f.dim];
    }
    if (contr) ++with_contractible;
    if (!out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "sample-%05d.json", i);
      io::write_file((std::filesystem::path(out_dir) / name).string(), io::config_to_json(cfg));
    }
  }
  auto frac = [&](int k) { return count ? rat_str(Rat(k, count)) : std::string("0"); };
  if (o.format == "json") {
    json h = json::object();
    for (auto [d, c] : hist) h[std::to_string(d)] = c;
    emit(o, io::dump(json{{"period", json::array({p.m, p.n})},
                          {"count", count},
                          {"paths", paths},
                          {"labels", labels},
                          {"seed", seed},
                          {"five_vertex", frac(five)},
                          {"with_contractible", frac(with_contractible)},
                          {"dimension_histogram", std::move(h)}}));
  } else {
    std::ostringstream s;
    s << count << " samples, period (" << p.m << "," << p.n << "), N=" << paths << ", labels <= " << labels << ", seed "
      << seed << "\n";
    s << "five-vertex fraction: " << frac(five) << "\n";
    s << "fraction with a contractible component: " << frac(with_contractible) << "\n";
    s << "finite component dimensions:";
    if (hist.empty()) s << " none";
    for (auto [d, c] : hist) s << " " << d << ":" << c;
    s << "\n";
    emit(o, s.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kfp: rank two algebras and labeled lattice configurations"};
  app.require_subcommand(1);
  Opts o;
  auto common = [&](CLI::App* c, bool alpha = true) {
    if (alpha) c->add_option("--alpha", o.alpha, "alpha override as a1,a2 (rationals p/q)");
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "text", "svg"}));
    c->add_option("-o,--output", o.out, "write output to a file");
  };

  std::string config;
  std::vector<std::string> files;

  auto* validate = app.add_subcommand("validate", "check the ice rule and periodicity of a configuration file");
  validate->add_option("config", config)->required();
  common(validate, false);

  auto* factor = app.add_subcommand("factor", "factor a solution (p1, p2) of the MTE into configuration blocks");
  factor->add_option("polys", files, "p1 and p2 polynomial files")->required()->expected(2);
  common(factor);

  std::string fact_file, out1, out2;
  auto* compose = app.add_subcommand("compose", "rebuild (p1, p2) from a factored solution");
  compose->add_option("factored", fact_file)->required();
  compose->add_option("--out-p1", out1, "write p1 as a polynomial file");
  compose->add_option("--out-p2", out2, "write p2 as a polynomial file");
  common(compose, false);

  auto* classify = app.add_subcommand("classify", "components and simple weight module families");
  classify->add_option("config", config)->required();
  common(classify);

  std::string comp_id;
  std::optional<std::string> xi, weight;
  auto* module = app.add_subcommand("module", "realize the simple module M(D, xi)");
  module->add_option("config", config)->required();
  module->add_option("--component", comp_id, "component id as printed by classify")->required();
  module->add_option("--xi", xi, "holonomy parameter; 0 exactly for contractible components");
  module->add_option("--weight", weight, "weight to evaluate on an infinite component");
  common(module);

  auto* center = app.add_subcommand("center", "describe the center of A(L)");
  center->add_option("config", config)->required();
  common(center);

  std::vector<std::string> only;
  auto* verify = app.add_subcommand("verify-examples", "run the worked-example identity suites");
  verify->add_option("--suite", only, "restrict to the named suites");
  common(verify, false);

  auto* render = app.add_subcommand("render", "draw the fundamental strip as SVG or ASCII");
  render->add_option("config", config)->required();
  render->add_flag("--show-orders", o.show_orders, "mark corners with their orders");
  common(render);

  std::string period_s = "2,1";
  int count = 100, paths = 2, labels = 1;
  std::uint64_t seed = 1;
  std::string out_dir;
  auto* sample = app.add_subcommand("sample", "sample random configurations and report ensemble statistics");
  sample->add_option("--period", period_s, "m,n");
  sample->add_option("--count", count);
  sample->add_option("--paths", paths, "number of paths N");
  sample->add_option("--labels", labels, "maximal edge label");
  sample->add_option("--seed", seed);
  sample->add_option("--out-dir", out_dir, "write the sampled configurations here");
  common(sample, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (o.format == "svg" && !render->parsed()) throw UsageError("--format svg is only valid for render");
    if (*validate) return cmd_validate(o, config);
    if (*factor) return cmd_factor(o, files);
    if (*compose) return cmd_compose(o, fact_file, out1, out2);
    if (*classify) return cmd_classify(o, config);
    if (*module) return cmd_module(o, config, comp_id, xi, weight);
    if (*center) return cmd_center(o, config);
    if (*verify) return cmd_verify_examples(o, only);
    if (*render) return cmd_render(o, config);
    if (*sample) return cmd_sample(o, period_s, count, paths, labels, seed, out_dir);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.internal() ? 3 : 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
