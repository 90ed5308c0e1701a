#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kfp/algebra.hpp"
#include "kfp/grid.hpp"

// Simple integral weight modules M(D, xi) of A(L): one family per component D
// of the complement of the configuration, xi = 0 exactly on contractible D.
namespace kfp {

class ModuleDescriptor {
 public:
  // Throws InvalidInput unless xi = 0 iff the component is contractible.
  ModuleDescriptor(ComponentReport component, Rat xi);
  const ComponentReport& component() const { return comp_; }
  const Rat& xi() const { return xi_; }

 private:
  ComponentReport comp_;
  Rat xi_;
};

struct ModuleFamily {
  ComponentReport component;
  bool xi_free = false;  // one-parameter family xi in Q^x
  std::optional<i64> dim;
};

std::vector<ModuleFamily> classify_modules(const LatticeConfig& cfg, const Rat& a1, const Rat& a2);

using Matrix = std::vector<std::vector<Rat>>;  // row-major, square

struct VerifyReport {
  std::vector<std::pair<std::string, bool>> checks;
  bool ok() const;
  std::vector<std::string> failures() const;
};

struct ModuleRealization {
  Rat a1, a2;
  std::string component_id;
  Rat xi;
  bool incontractible = false;
  std::vector<Rat> basis;  // weights; H = diag(basis)
  Matrix h, x1p, x1m, x2p, x2m;
  VerifyReport verification;
  const Matrix& of(Gen g) const;
};

ModuleRealization build_module(const LatticeConfig& cfg, const Rat& a1, const Rat& a2,
                               const ModuleDescriptor& d);

// Never throws; checks every relation family, the C-action, simplicity and dimension.
VerifyReport verify_module(const LatticeConfig& cfg, const Rat& a1, const Rat& a2,
                           const ModuleRealization& m);

struct Action {
  Rat coeff;
  Rat target;
};

// Coefficient evaluator for any component, finite or not. Gauge data on an
// infinite component is solved on an index window that doubles on demand; each
// new solution is gauge-matched to the cached one, so answers never change.
class LazyModule {
 public:
  LazyModule(const LatticeConfig& cfg, const Rat& a1, const Rat& a2, const ModuleDescriptor& d);
  ~LazyModule();
  LazyModule(const LazyModule&) = delete;
  LazyModule& operator=(const LazyModule&) = delete;

  // nullopt = the generator maps v_mu to zero. Throws WeightOutsideSupport.
  std::optional<Action> act(const Rat& mu, Gen g);
  Rat act_h(const Rat& mu);

  struct State;

 private:
  std::unique_ptr<State> s_;
};

std::optional<Action> lazy_action(const LatticeConfig& cfg, const Rat& a1, const Rat& a2,
                                  const ModuleDescriptor& d, const Rat& mu, Gen g);

std::string isoclass_key(const ModuleDescriptor& d);

}  // namespace kfp
