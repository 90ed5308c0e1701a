#include "oracle.hpp"

#include <map>
#include <numeric>
#include <queue>

namespace kfp::oracle {

std::string data_path(const std::string& name) { return std::string(KFP_DATA_DIR) + "/" + name; }

bool mte_by_evaluation(const Poly& p1, const Poly& p2, const Rat& a1, const Rat& a2) {
  int deg = std::max(0, p1.degree()) + std::max(0, p2.degree());
  for (int i = 0; i <= deg; ++i) {
    Rat u = Rat(i * 7 - 3) / 5;
    if (p1.eval(u + a2 / 2) * p2.eval(u + a1 / 2) != p1.eval(u - a2 / 2) * p2.eval(u - a1 / 2)) return false;
  }
  return true;
}

std::vector<Region> finite_regions(const LatticeConfig& cfg) {
  const long m = cfg.period().m, n = cfg.period().n;
  auto key = [&](Site s) { return -n * s.x + m * s.y; };
  long lo = 0, hi = 0;
  bool any = false;
  for (const auto& [s, lab] : cfg.labels()) {
    lo = any ? std::min(lo, key(s)) : key(s);
    hi = any ? std::max(hi, key(s)) : key(s);
    any = true;
  }
  std::vector<Region> out;
  if (!any) return out;
  // Face orbits outside this key range touch no labeled edge and lead off to infinity.
  const long margin = 2 * (m + n) + 2;
  auto outside = [&](Site f) { return key(f) < lo - margin || key(f) > hi + margin; };
  // A face site with each key in range; keys step by 2 on face sites.
  long s1 = 0, s2 = 0;
  for (long a = -std::max(m, n) - 1; a <= std::max(m, n) + 1 && !(s1 || s2); ++a)
    for (long b = -std::max(m, n) - 1; b <= std::max(m, n) + 1; ++b)
      if (-n * a + m * b == 1) {
        s1 = a;
        s2 = b;
        break;
      }
  std::map<long, bool> seen;
  for (long k = lo - margin; k <= hi + margin; ++k) {
    if (k % 2 != 0 || seen.count(k)) continue;
    Site start{k / 2 * 2 * s1, k / 2 * 2 * s2};
    std::map<long, Site> lift{{k, start}};
    std::queue<Site> q;
    q.push(start);
    bool infinite = false, winds = false;
    while (!q.empty()) {
      Site f = q.front();
      q.pop();
      if (outside(f)) {
        infinite = true;
        continue;
      }
      const Site nb[4] = {{f.x + 2, f.y}, {f.x - 2, f.y}, {f.x, f.y + 2}, {f.x, f.y - 2}};
      const Site across[4] = {{f.x + 1, f.y}, {f.x - 1, f.y}, {f.x, f.y + 1}, {f.x, f.y - 1}};
      for (int i = 0; i < 4; ++i) {
        if (cfg.label(across[i]) != 0) continue;
        auto it = lift.find(key(nb[i]));
        if (it == lift.end()) {
          lift.emplace(key(nb[i]), nb[i]);
          q.push(nb[i]);
        } else if (it->second != nb[i]) {
          winds = true;
        }
      }
    }
    for (const auto& [kk, s] : lift) seen[kk] = true;
    if (!infinite) out.push_back(Region{static_cast<long>(lift.size()), winds});
  }
  return out;
}

GenWord random_word(std::mt19937_64& rng, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), kind(0, 5);
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  GenWord w;
  int l = len(rng);
  for (int i = 0; i < l; ++i) {
    int k = kind(rng);
    if (k < 4) {
      w.push_back(Token::x(static_cast<Gen>(k)));
    } else {
      // (H - r) or a scalar.
      Rat r = Rat(num(rng)) / den(rng);
      w.push_back(Token::coeff(k == 4 ? RatFunc(Poly::linear(r)) : RatFunc(r == 0 ? Rat(1) : r)));
    }
  }
  return w;
}

LatticeConfig random_config(std::mt19937_64& rng, int max_mn, int max_paths, int max_label) {
  std::vector<Period> periods;
  for (int m = 0; m <= max_mn; ++m)
    for (int n = 0; m + n <= max_mn; ++n)
      if (m + n > 0 && std::gcd(m, n) == 1) periods.push_back(Period{m, n});
  Period p = periods[std::uniform_int_distribution<size_t>(0, periods.size() - 1)(rng)];
  int paths = std::uniform_int_distribution<int>(0, max_paths)(rng);
  int labels = std::uniform_int_distribution<int>(1, max_label)(rng);
  return sample_config(p, paths, labels, rng());
}

}  // namespace kfp::oracle
