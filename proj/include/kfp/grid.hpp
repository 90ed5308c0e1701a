#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kfp/qpoly.hpp"

namespace kfp {

using i64 = std::int64_t;

struct Period {
  int m = 1, n = 0;
  bool degenerate() const { return m == 0 || n == 0; }
  friend bool operator==(const Period&, const Period&) = default;
};

Period make_period(int m, int n);  // throws InvalidInput unless gcd(m,n) = 1

// Doubled coordinates: faces are (even, even), vertices (odd, odd).
struct Site {
  i64 x = 0, y = 0;
  friend auto operator<=>(const Site&, const Site&) = default;
};

enum class SiteKind { Face, Vertex, E1, E2 };
SiteKind site_kind(Site s);
inline bool is_edge(Site s) { return (s.x + s.y) % 2 != 0; }

// Every (m,n)-orbit of sites is labeled by the integer key -n*x + m*y, which
// is a bijection on each site kind because gcd(m,n) = 1.
inline i64 site_key(Period p, Site s) { return -static_cast<i64>(p.n) * s.x + static_cast<i64>(p.m) * s.y; }

class LatticeConfig {
 public:
  LatticeConfig() = default;
  explicit LatticeConfig(Period p) : period_(p) {}

  Period period() const { return period_; }
  int path_count() const { return n_paths_; }
  bool trivial() const { return labels_.empty(); }

  // Canonical representative -> label; only nonzero labels.
  const std::map<Site, int>& labels() const { return labels_; }
  int label(Site e) const;             // any lift of an edge site
  int label_key(SiteKind k, i64 key) const;  // by orbit key; k is E1 or E2

  Site canonical(Site s) const;
  Site lift_face(i64 t) const;  // a face site with face index t
  // Key range of labeled edges; nullopt when trivial.
  std::optional<std::pair<i64, i64>> key_range() const { return range_; }

  friend bool operator==(const LatticeConfig& a, const LatticeConfig& b) {
    return a.period_ == b.period_ && a.labels_ == b.labels_;
  }

 private:
  friend LatticeConfig validate_config(Period, const std::vector<std::pair<Site, int>>&);
  Period period_;
  std::map<Site, int> labels_;
  std::map<i64, int> e1_, e2_;
  std::optional<std::pair<i64, i64>> range_;
  int n_paths_ = 0;
};

// Face index of a face site: t = -n*a + m*b for undoubled (a, b).
inline i64 face_index(Period p, Site f) { return site_key(p, f) / 2; }

LatticeConfig validate_config(Period period, const std::vector<std::pair<Site, int>>& raw);

int vertex_order(const LatticeConfig& cfg, Site v);

struct FacePath {
  Site base;                // face site
  std::vector<int> steps;   // 1 = right, 2 = up
};

struct Crossings {
  i64 v = 0, h = 0;
  friend bool operator==(const Crossings&, const Crossings&) = default;
};

Crossings crossing_counts(const LatticeConfig& cfg, const FacePath& path);
i64 path_order(const LatticeConfig& cfg, const FacePath& path);

struct VertexPath {
  Site start;          // canonical vertex lift
  std::string steps;   // 'R' and 'U'; m of the former, n of the latter
  friend auto operator<=>(const VertexPath&, const VertexPath&) = default;
};

// Path -> multiplicity.
std::map<VertexPath, int> decompose_paths(const LatticeConfig& cfg);
LatticeConfig superpose_paths(Period period, const std::map<VertexPath, int>& paths);

enum class ComponentKind { Contractible, FiniteIncontractible, InfiniteIncontractible };
const char* kind_name(ComponentKind k);

struct ComponentReport {
  std::string id;             // decimal min face index, or "top" / "bottom" / "all"
  ComponentKind kind;
  std::vector<i64> faces;     // face indices, descending (finite kinds only)
  std::optional<i64> area;    // nullopt = infinite
  std::vector<Rat> support;   // parallel to faces
  std::optional<std::pair<Site, Site>> winding;  // two lifts of one face orbit
  bool finite() const { return area.has_value(); }
};

// Face values are -n*gamma*t + shift style: value(t) = gamma*t + shift with
// gamma determined by alpha = gamma*(-n, m).
Rat alpha_gamma(Period p, const Rat& a1, const Rat& a2);
std::vector<ComponentReport> components(const LatticeConfig& cfg, const Rat& a1, const Rat& a2,
                                        const Rat& shift = 0);
std::vector<ComponentReport> components(const LatticeConfig& cfg);

struct FiveVertexReport {
  bool primary = false;          // no vertex with more than two incident labeled directions
  bool no_ne = false;            // no vertex with both incoming directions labeled
  bool no_sw = false;            // no vertex with both outgoing directions labeled
  bool coprime_plus = false;     // gcd(P1(u + a2/2), P2(u + a1/2)) = 1
  bool coprime_minus = false;    // gcd(P1(u - a2/2), P2(u - a1/2)) = 1
  bool disjoint_paths = false;   // decomposition is vertex-disjoint
  bool no_contractible = false;
  bool consistent() const;
};

FiveVertexReport five_vertex_report(const LatticeConfig& cfg);
bool is_five_vertex(const LatticeConfig& cfg);  // asserts the report is consistent

LatticeConfig translate_config(const LatticeConfig& cfg, i64 mu1, i64 mu2);
LatticeConfig transpose_config(const LatticeConfig& cfg);
LatticeConfig superpose(const LatticeConfig& a, const LatticeConfig& b);

LatticeConfig sample_config(Period period, int path_count, int label_bound, std::uint64_t seed);

}  // namespace kfp
