#pragma once

#include <string>
#include <vector>

// Worked examples re-derived in the normal-form engine. Each suite rebuilds its
// algebra from the shipped fixtures, so a failure points at the engine, not the data.
namespace kfp::golden {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Suite {
  std::string name;
  std::vector<Check> checks;
  bool ok() const;
};

Suite center_21_single();     // lift, C* C, exchange relation, canonical generator
Suite finite_w(int d);        // d >= 2
Suite lie_heisenberg();
Suite affine_a11(int d);
Suite order7();

std::vector<Suite> all_suites();

}  // namespace kfp::golden
