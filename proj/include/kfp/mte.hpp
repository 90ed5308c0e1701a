#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "kfp/grid.hpp"
#include "kfp/qpoly.hpp"

namespace kfp {

// Coprime (m, n) with m*a1 + n*a2 = 0, if any.
std::optional<Period> period_of_alpha(const Rat& a1, const Rat& a2);

std::pair<RootMultiset, RootMultiset> polys_from_config(const LatticeConfig& cfg, const Rat& a1,
                                                        const Rat& a2);

bool mte_check(const Poly& p1, const Poly& p2, const Rat& a1, const Rat& a2);

struct Block {
  LatticeConfig cfg;
  Rat shift;
};

struct FactoredSolution {
  std::vector<Block> blocks;  // ordered by shift
  Rat scale1 = 1, scale2 = 1;
};

// Shifts are canonical coset representatives in [0, |gamma|).
FactoredSolution factor_solution(const Poly& p1, const Poly& p2, const Rat& a1, const Rat& a2);
std::pair<Poly, Poly> compose_solution(const FactoredSolution& fs, const Rat& a1, const Rat& a2);

struct AlgebraParams {
  Rat a1, a2;
  Poly p1, p2;
  std::optional<Period> period;
  Rat gamma = 0;                      // alpha = gamma*(-n, m) when a period exists
  std::optional<LatticeConfig> cfg;   // present when the solution is a single block
  Rat shift = 0;

  Rat rho() const { return (a1 + a2) / 2; }
  // Value of face index t of the attached block.
  Rat face_value(i64 t) const { return gamma * Rat(t) + shift; }
};

// Validates the MTE (InconsistentParams) and attaches the configuration when
// the factorization has at most one block.
AlgebraParams make_params(const Rat& a1, const Rat& a2, const Poly& p1, const Poly& p2);
AlgebraParams params_from_config(const LatticeConfig& cfg, const Rat& a1, const Rat& a2,
                                 const Rat& shift = 0);
AlgebraParams params_from_config(const LatticeConfig& cfg);  // alpha = (-n, m)

struct NormalizeTransform {
  Rat gamma = 1;         // u_old = gamma * u_new
  bool transposed = false;
  bool identity() const { return gamma == 1 && !transposed; }
};

std::pair<AlgebraParams, NormalizeTransform> normalize_params(const Rat& a1, const Rat& a2, const Poly& p1,
                                                              const Poly& p2);

}  // namespace kfp
