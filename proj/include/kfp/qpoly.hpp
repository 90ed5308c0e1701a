#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace kfp {

using Rat = mpq_class;
using Int = mpz_class;

Rat parse_rat(std::string_view s);
std::string rat_str(const Rat& r);
Rat floor_div(const Rat& a, const Rat& b);  // floor(a / b) as an integer-valued Rat
Rat rat_mod(const Rat& a, const Rat& b);    // a - b*floor(a/b), in [0, |b|)
bool is_integer(const Rat& r);

/// Dense univariate polynomial over Q, coefficients in increasing degree, trimmed.
class Poly {
 public:
  Poly() = default;
  Poly(const Rat& c);  // NOLINT: constants convert implicitly
  Poly(int c) : Poly(Rat(c)) {}
  static Poly from_coeffs(std::vector<Rat> c);
  static Poly var();                    // u
  static Poly linear(const Rat& root);  // u - root
  static Poly from_roots(const std::map<Rat, int>& roots, const Rat& factor = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const;
  Rat lead() const;

  Rat eval(const Rat& x) const;
  Poly shift(const Rat& c) const;                   // f(u + c)
  Poly affine(const Rat& a, const Rat& b) const;    // f(a*u + b)
  Poly monic() const;
  Poly derivative() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rat& s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rat& s) { return a *= s; }
  friend Poly operator*(const Rat& s, Poly a) { return a *= s; }
  Poly operator-() const;
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  std::string str(const std::string& var = "u") const;

 private:
  void trim();
  std::vector<Rat> c_;
};

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);
Poly operator/(const Poly& a, const Poly& b);  // exact quotient; throws if remainder nonzero
Poly operator%(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);  // monic, gcd(0,0) = 0
Poly pow(const Poly& f, unsigned k);

struct BezoutResult {
  Poly d;               // monic gcd
  std::vector<Poly> gs; // sum fs[i]*gs[i] == d
};

/// Minimal-degree cofactors: the least D admitting deg g_i <= D is used, with
/// free unknowns of the linear system set to zero.
BezoutResult bezout(const std::vector<Poly>& fs);

/// Reduced rational function with monic denominator.
class RatFunc {
 public:
  RatFunc() : num_(), den_(1) {}
  RatFunc(const Poly& p) : num_(p), den_(1) {}  // NOLINT
  RatFunc(const Rat& c) : num_(c), den_(1) {}   // NOLINT
  RatFunc(int c) : RatFunc(Rat(c)) {}           // NOLINT
  RatFunc(const Poly& num, const Poly& den);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Rat constant_value() const;  // requires is_constant()

  Rat eval(const Rat& x) const;  // throws PoleAtWeight at a pole
  bool regular_at(const Rat& x) const { return den_.eval(x) != 0; }
  RatFunc shift(const Rat& c) const;
  RatFunc affine(const Rat& a, const Rat& b) const;
  RatFunc inverse() const;

  RatFunc& operator+=(const RatFunc& o);
  RatFunc& operator-=(const RatFunc& o);
  RatFunc& operator*=(const RatFunc& o);
  friend RatFunc operator+(RatFunc a, const RatFunc& b) { return a += b; }
  friend RatFunc operator-(RatFunc a, const RatFunc& b) { return a -= b; }
  friend RatFunc operator*(RatFunc a, const RatFunc& b) { return a *= b; }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

  std::string str(const std::string& var = "H") const;

 private:
  Poly num_, den_;
};

/// Zero order (positive) or pole order (negative) of f at a.
int vanishing_order(const RatFunc& f, const Rat& a);
int vanishing_order(const Poly& f, const Rat& a);

struct RootMultiset {
  std::map<Rat, int> roots;
  Rat factor = 1;
  Poly expand() const { return Poly::from_roots(roots, factor); }
  int degree() const;
  friend bool operator==(const RootMultiset& a, const RootMultiset& b) {
    return a.roots == b.roots && a.factor == b.factor;
  }
};

RootMultiset roots_rational(const Poly& f);  // throws IrrationalRoots

}  // namespace kfp
