#include "kfp/fixtures.hpp"

namespace kfp::fixtures {

LatticeConfig from_paths(Period p, const std::vector<std::pair<std::pair<int, int>, std::string>>& paths) {
  std::vector<std::pair<Site, int>> raw;
  for (const auto& [start, steps] : paths) {
    Site v = figure_vertex(start.first, start.second);
    for (char c : steps) {
      if (c == 'R') {
        raw.push_back({Site{v.x + 1, v.y}, 1});
        v.x += 2;
      } else {
        raw.push_back({Site{v.x, v.y + 1}, 1});
        v.y += 2;
      }
    }
  }
  return validate_config(p, raw);
}

LatticeConfig fig_21_config() {
  return validate_config(Period{2, 1}, {{{-1, 0}, 1}, {{-1, 2}, 1}, {{0, 1}, 1}, {{2, 1}, 1}, {{0, 3}, 1}, {{2, 3}, 1}});
}

LatticeConfig fig_21_single() {
  return validate_config(Period{2, 1}, {{{-1, 0}, 1}, {{0, 1}, 1}, {{2, 1}, 1}});
}

LatticeConfig fig_53() {
  return from_paths(Period{5, 3}, {{{0, 0}, "URURRURR"}, {{0, 0}, "UURURRRR"}, {{0, 3}, "URRRUURR"}});
}

LatticeConfig fig_53_orders() {
  return from_paths(Period{5, 3}, {{{0, 0}, "URUURRRR"}, {{0, 0}, "UURURRRR"}, {{0, 3}, "URRRUURR"}});
}

FacePath fig_53_face_path() { return FacePath{Site{-2, 0}, {2, 1, 1, 2, 1, 2, 1, 1}}; }

LatticeConfig fig_11_config() {
  return validate_config(Period{1, 1}, {{{1, 0}, 1}, {{1, 2}, 1}, {{2, 1}, 1}, {{2, 3}, 1}});
}

LatticeConfig fig_11_d(int d) {
  return validate_config(Period{1, 1}, {{{-1, 0}, 1}, {{0, 1}, 1}, {{-1, 2 * d}, 1}, {{0, 1 + 2 * d}, 1}});
}

LatticeConfig fig_43() {
  return from_paths(Period{4, 3}, {{{0, 0}, "RRRURUU"}, {{0, 1}, "URRUURR"}, {{0, 3}, "URURRUR"}});
}

LatticeConfig fig_order7() {
  return validate_config(Period{1, 1}, {{{2, 3}, 1}, {{2, 5}, 2}, {{4, 3}, 2}, {{0, 5}, 3}, {{4, 1}, 3},
                                        {{3, 4}, 1}, {{1, 4}, 2}, {{3, 2}, 2}, {{1, 6}, 3}, {{5, 2}, 3}});
}

}  // namespace kfp::fixtures
