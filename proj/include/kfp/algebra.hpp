#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kfp/mte.hpp"
#include "kfp/qpoly.hpp"

// Normal-form arithmetic in the localization A_loc = A (x)_{C[H]} C(H).
// Working in A_loc is sound: the defining ideal is the H-torsion of the free
// construction, and it vanishes after inverting nonzero polynomials in H.
namespace kfp {

using Deg = std::pair<i64, i64>;

class Algebra;

// Sum over g of W_g * c_g(H), W_g = (X1^sgn g1)^|g1| (X2^sgn g2)^|g2|, coefficients on the right.
class Elem {
 public:
  Elem() = default;
  explicit Elem(const Algebra* a) : alg_(a) {}
  Elem(const Algebra* a, std::map<Deg, RatFunc> terms);

  const Algebra* algebra() const { return alg_; }
  const std::map<Deg, RatFunc>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool homogeneous() const { return terms_.size() == 1; }
  RatFunc coeff(Deg g) const;
  std::optional<Deg> degree() const;  // set when homogeneous
  std::string str() const;

  Elem& operator+=(const Elem& o);
  Elem& operator-=(const Elem& o);
  friend Elem operator+(Elem a, const Elem& b) { return a += b; }
  friend Elem operator-(Elem a, const Elem& b) { return a -= b; }
  friend Elem operator*(const Elem& a, const Elem& b);
  friend Elem operator*(const Rat& s, const Elem& a);
  friend Elem operator*(const Elem& a, const RatFunc& c);  // right multiplication by c(H)
  Elem operator-() const;
  friend bool operator==(const Elem& a, const Elem& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Elem& a, const Elem& b) { return !(a == b); }

 private:
  void add_term(Deg g, const RatFunc& c);
  const Algebra* alg_ = nullptr;
  std::map<Deg, RatFunc> terms_;
};

enum class Gen { X1p, X1m, X2p, X2m };

struct Token {
  enum Kind { X, F } kind;
  Gen gen;
  RatFunc f;
  static Token x(Gen g) { return Token{X, g, RatFunc()}; }
  static Token coeff(const RatFunc& c) { return Token{F, Gen::X1p, c}; }
};
using GenWord = std::vector<Token>;

using Seq = std::vector<int>;  // steps i_1, i_2, ...; X(i) = X_{i_l} ... X_{i_1}
using OrdProfile = std::map<Rat, i64>;

struct LiftResult {
  bool liftable = false;
  Elem c;                            // the lifted central element when liftable
  std::vector<std::pair<Seq, Poly>> combination;  // C = sum X(i) g_i
  Poly gcd;
};

struct SerreResult {
  bool x1_side = false;   // (ad X1+)^{deg p2 + 1}(X2+) = 0
  std::optional<bool> x2_side;  // (ad X2+)^{deg p1 + 1}(X1+) = 0, when alpha2 != 0
  bool ok() const { return x1_side && x2_side.value_or(true); }
};

struct NilIndex {
  std::optional<i64> index;  // nullopt = infinite
  i64 ord = 0;               // ord(seq, lambda)
};

class Algebra {
 public:
  explicit Algebra(AlgebraParams p);
  Algebra(const Algebra&) = delete;
  Algebra& operator=(const Algebra&) = delete;

  const AlgebraParams& params() const { return p_; }
  const RatFunc& rtilde_fn() const { return rt_; }

  Elem zero() const { return Elem(this); }
  Elem scalar(const RatFunc& c) const;
  Elem one() const { return scalar(RatFunc(1)); }
  Elem h() const { return scalar(RatFunc(Poly::var())); }
  Elem gen(Gen g) const;
  Elem word(Deg g) const;  // W_g
  Elem x_seq(const Seq& s) const;

  Elem mul(const Elem& a, const Elem& b) const;
  Elem star(const Elem& a) const;
  Elem commutator(const Elem& a, const Elem& b) const { return mul(a, b) - mul(b, a); }
  Elem from_word(const GenWord& w) const;

  // Block product W_g * W_h = W_{g+h} * kappa(g, h).
  RatFunc kappa(Deg g, Deg h) const;

  // Configuration-based operations; require an attached single block.
  const LatticeConfig& config() const;
  RatFunc rtilde_from_orders() const;
  i64 ord(const Seq& s, const Rat& lambda) const;
  OrdProfile ord_profile(const Seq& s) const;
  static Poly f_of(const OrdProfile& prof);
  static RatFunc profile_ratio(const OrdProfile& num, const OrdProfile& den);

  Elem central_C(i64 k, i64 l) const;
  LiftResult lift_center() const;
  Elem canonical_generator(Deg g) const;
  Seq min_ord_seq(Deg g, const Rat& lambda) const;
  Rat reduce_mod_weight(const Elem& a, const Rat& lambda) const;
  NilIndex nilpotency_index(const Rat& lambda, const Seq& s) const;
  SerreResult serre_check() const;

  // Weight value lambda -> face index of the attached block, if lambda is a face value.
  std::optional<i64> face_of(const Rat& lambda) const;

 private:
  AlgebraParams p_;
  RatFunc rt_;
  RatFunc phi(int s, const Rat& shift) const;
};

// Leftmost single-rule rewriting; an independent oracle for the block product.
Elem reduce_by_rewriting(const Algebra& alg, const GenWord& w);
GenWord expand_term(Deg g, const RatFunc& c);

std::vector<Seq> all_seqs(i64 k, i64 l);
std::string seq_str(const Seq& s);

// S-expression syntax: atoms X1+ X1- X2+ X2- H, rationals, names from env;
// operators * + - ad comm star pow.
Elem parse_expr(const Algebra& alg, const std::string& text, const std::map<std::string, Elem>& env = {});

struct IdentityCheck {
  bool equal = false;
  std::string diff;  // normal form of lhs - rhs when unequal
};
IdentityCheck check_identity(const Algebra& alg, const std::string& lhs, const std::string& rhs,
                             const std::map<std::string, Elem>& env = {});

}  // namespace kfp
