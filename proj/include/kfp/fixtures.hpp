#pragma once

#include <string>
#include <utility>
#include <vector>

#include "kfp/grid.hpp"

// Configurations transcribed from the worked figures, used as golden data.
namespace kfp::fixtures {

// Superposes unit vertex paths given as (start vertex in figure units, "R"/"U" steps);
// a figure vertex (i, j) sits at doubled 2*(i, j) - (1, 1).
LatticeConfig from_paths(Period p, const std::vector<std::pair<std::pair<int, int>, std::string>>& paths);

LatticeConfig fig_21_config();
LatticeConfig fig_21_single();
LatticeConfig fig_53();
LatticeConfig fig_53_orders();
FacePath fig_53_face_path();
LatticeConfig fig_11_config();
LatticeConfig fig_11_d(int d);
LatticeConfig fig_43();
LatticeConfig fig_order7();

// Vertex in figure units -> doubled site.
inline Site figure_vertex(int i, int j) { return Site{2 * i - 1, 2 * j - 1}; }

}  // namespace kfp::fixtures
