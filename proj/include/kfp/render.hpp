#pragma once

#include <optional>
#include <string>
#include <utility>

#include "kfp/grid.hpp"

namespace kfp {

struct RenderOptions {
  bool show_orders = false;  // circle every corner and print its order
  std::optional<std::pair<Rat, Rat>> alpha;  // face values; default (-n, m)
};

// Fundamental strip of width m (figure units [-1/2, -1/2 + m]) over the band of
// labeled edges, with dashed period boundaries and finite components shaded.
std::string render_svg(const LatticeConfig& cfg, const RenderOptions& opt = {});
std::string render_ascii(const LatticeConfig& cfg, const RenderOptions& opt = {});

}  // namespace kfp
