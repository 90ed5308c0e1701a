#include "kfp/render.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace kfp {

namespace {

struct Window {
  i64 x0, x1, y0, y1;  // doubled coordinates, inclusive; x0 and x1 are face columns
};

struct Scene {
  Window w;
  std::vector<ComponentReport> comps;
  std::map<i64, size_t> finite_of_face;  // face index -> position in comps
};

i64 fdiv(i64 a, i64 b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }

Scene make_scene(const LatticeConfig& cfg, const RenderOptions& opt) {
  const Period p = cfg.period();
  Scene sc;
  i64 width = std::max(p.m, 1);
  sc.w.x0 = -2;
  sc.w.x1 = -2 + 2 * width;
  i64 lo = 0, hi = 0;
  bool any = false;
  for (const auto& [s, lab] : cfg.labels()) {
    std::vector<Site> lifts;
    if (p.m > 0) {
      for (i64 k = -fdiv(s.x - sc.w.x0 + 1, 2 * p.m); s.x + 2 * k * p.m <= sc.w.x1 + 1; ++k)
        lifts.push_back(Site{s.x + 2 * k * p.m, s.y + 2 * k * p.n});
    } else {
      lifts.push_back(s);
    }
    for (const Site& t : lifts) {
      lo = any ? std::min(lo, t.y) : t.y;
      hi = any ? std::max(hi, t.y) : t.y;
      any = true;
    }
  }
  if (!any) lo = hi = 0;
  // Pad to face rows so the band is framed by empty faces.
  sc.w.y0 = 2 * fdiv(lo, 2) - 2;
  sc.w.y1 = 2 * fdiv(hi + 1, 2) + 2;
  if (opt.alpha) {
    sc.comps = components(cfg, opt.alpha->first, opt.alpha->second);
  } else {
    sc.comps = components(cfg);
  }
  for (size_t i = 0; i < sc.comps.size(); ++i) {
    if (!sc.comps[i].finite()) continue;
    for (i64 t : sc.comps[i].faces) sc.finite_of_face[t] = i;
  }
  return sc;
}

const char* kPalette[] = {"#f4c7a1", "#a8d5ba", "#b5c7ec", "#f2e29b", "#e3b0d8", "#c9e4e9", "#d9c2a7", "#bfe3a0"};

}  // namespace

std::string render_svg(const LatticeConfig& cfg, const RenderOptions& opt) {
  const Scene sc = make_scene(cfg, opt);
  const Window& w = sc.w;
  const double u = 20.0, pad = 30.0;  // pixels per doubled unit
  const double W = (w.x1 - w.x0) * u + 2 * pad, Hh = (w.y1 - w.y0) * u + 2 * pad;
  auto X = [&](double x) { return pad + (x - w.x0) * u; };
  auto Y = [&](double y) { return pad + (w.y1 - y) * u; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << Hh
    << "\" viewBox=\"0 0 " << W << ' ' << Hh << "\" font-family=\"sans-serif\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << Hh << "\" fill=\"white\"/>\n";

  // Faces: shading for finite components, with the face value.
  o << "<g id=\"faces\">\n";
  for (i64 y = w.y0; y <= w.y1; y += 2) {
    for (i64 x = w.x0; x <= w.x1; x += 2) {
      i64 t = face_index(cfg.period(), Site{x, y});
      auto it = sc.finite_of_face.find(t);
      if (it == sc.finite_of_face.end()) continue;
      const ComponentReport& c = sc.comps[it->second];
      double x0 = std::max<double>(x - 1, w.x0), x1 = std::min<double>(x + 1, w.x1);
      double y0 = std::max<double>(y - 1, w.y0), y1 = std::min<double>(y + 1, w.y1);
      o << "<rect x=\"" << X(x0) << "\" y=\"" << Y(y1) << "\" width=\"" << (x1 - x0) * u << "\" height=\""
        << (y1 - y0) * u << "\" fill=\"" << kPalette[it->second % 8] << "\" data-component=\"" << c.id
        << "\"/>\n";
      auto pos = std::find(c.faces.begin(), c.faces.end(), t) - c.faces.begin();
      o << "<text x=\"" << X(x) << "\" y=\"" << Y(y) + 4 << "\" font-size=\"10\" text-anchor=\"middle\">"
        << rat_str(c.support[pos]) << "</text>\n";
    }
  }
  o << "</g>\n";

  // Lattice.
  o << "<g id=\"lattice\" stroke=\"#cccccc\" stroke-width=\"0.5\">\n";
  for (i64 x = w.x0 + 1; x < w.x1; x += 2)
    o << "<line x1=\"" << X(x) << "\" y1=\"" << Y(w.y0) << "\" x2=\"" << X(x) << "\" y2=\"" << Y(w.y1) << "\"/>\n";
  for (i64 y = w.y0 + 1; y < w.y1; y += 2)
    o << "<line x1=\"" << X(w.x0) << "\" y1=\"" << Y(y) << "\" x2=\"" << X(w.x1) << "\" y2=\"" << Y(y) << "\"/>\n";
  o << "</g>\n";

  // Labeled edges, clipped to the strip.
  o << "<g id=\"paths\" stroke=\"black\" stroke-linecap=\"round\">\n";
  for (i64 y = w.y0; y <= w.y1; ++y) {
    for (i64 x = w.x0; x <= w.x1; ++x) {
      Site s{x, y};
      if (!is_edge(s)) continue;
      int lab = cfg.label(s);
      if (lab == 0) continue;
      double ax, ay, bx, by;
      if (site_kind(s) == SiteKind::E1) {
        ax = bx = x;
        ay = y - 1;
        by = y + 1;
      } else {
        ay = by = y;
        ax = std::max<double>(x - 1, w.x0);
        bx = std::min<double>(x + 1, w.x1);
      }
      o << "<line x1=\"" << X(ax) << "\" y1=\"" << Y(ay) << "\" x2=\"" << X(bx) << "\" y2=\"" << Y(by)
        << "\" stroke-width=\"" << 1.5 * lab + 1 << "\"/>\n";
      if (lab > 1) {
        bool vert = site_kind(s) == SiteKind::E1;
        o << "<text x=\"" << X(x) + (vert ? 6 : 0) << "\" y=\"" << Y(y) - (vert ? 0 : 5)
          << "\" font-size=\"10\" fill=\"#b00000\" stroke=\"none\">" << lab << "</text>\n";
      }
    }
  }
  o << "</g>\n";

  // Period boundaries.
  o << "<g id=\"boundaries\" stroke=\"#555555\" stroke-dasharray=\"6,4\" stroke-width=\"1\">\n";
  for (i64 x : {w.x0, w.x1})
    o << "<line x1=\"" << X(x) << "\" y1=\"" << Y(w.y0) << "\" x2=\"" << X(x) << "\" y2=\"" << Y(w.y1) << "\"/>\n";
  o << "</g>\n";

  if (opt.show_orders) {
    o << "<g id=\"orders\">\n";
    for (i64 y = w.y0 + 1; y < w.y1; y += 2) {
      for (i64 x = w.x0 + 1; x < w.x1; x += 2) {
        int ord = vertex_order(cfg, Site{x, y});
        if (ord == 0) continue;
        o << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"8\" fill=\"white\" stroke=\""
          << (ord > 0 ? "#0040c0" : "#c00000") << "\"/>\n";
        o << "<text x=\"" << X(x) << "\" y=\"" << Y(y) + 3.5 << "\" font-size=\"9\" text-anchor=\"middle\">"
          << ord << "</text>\n";
      }
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_ascii(const LatticeConfig& cfg, const RenderOptions& opt) {
  const Scene sc = make_scene(cfg, opt);
  const Window& w = sc.w;
  std::map<size_t, char> letter;
  for (size_t i = 0; i < sc.comps.size(); ++i)
    if (sc.comps[i].finite()) letter[i] = static_cast<char>('A' + letter.size() % 26);
  std::ostringstream o;
  o << "period (" << cfg.period().m << "," << cfg.period().n << "), strip x in [" << w.x0 << "," << w.x1
    << "] (doubled)\n";
  for (i64 y = w.y1; y >= w.y0; --y) {
    std::string row;
    for (i64 x = w.x0; x <= w.x1; ++x) {
      Site s{x, y};
      std::string cell = "   ";
      switch (site_kind(s)) {
        case SiteKind::Vertex: {
          int ord = opt.show_orders ? vertex_order(cfg, s) : 0;
          if (ord == 0) {
            cell = " . ";
          } else {
            std::string t = std::to_string(ord);
            cell = t.size() == 1 ? " " + t + " " : (t + " ").substr(0, 3);
          }
          break;
        }
        case SiteKind::E1: {
          int lab = cfg.label(s);
          if (lab == 1) cell = " | ";
          else if (lab > 1) cell = " " + std::to_string(lab % 10) + " ";
          break;
        }
        case SiteKind::E2: {
          int lab = cfg.label(s);
          if (lab == 1) cell = "---";
          else if (lab > 1) cell = "-" + std::to_string(lab % 10) + "-";
          break;
        }
        case SiteKind::Face: {
          auto it = sc.finite_of_face.find(face_index(cfg.period(), s));
          if (it != sc.finite_of_face.end()) cell = std::string(" ") + letter[it->second] + " ";
          if (x == w.x0 || x == w.x1) cell[x == w.x0 ? 0 : 2] = ':';
          break;
        }
      }
      row += cell;
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    o << row << "\n";
  }
  for (const auto& [i, ch] : letter) {
    const ComponentReport& c = sc.comps[i];
    o << ch << ": component " << c.id << " (" << kind_name(c.kind) << ", area " << *c.area << ")\n";
  }
  return o.str();
}

}  // namespace kfp
