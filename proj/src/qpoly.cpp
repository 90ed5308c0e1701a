#include "kfp/qpoly.hpp"

#include <unsupported/Eigen/Polynomials>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "kfp/errors.hpp"

namespace kfp {

Rat parse_rat(std::string_view s) {
  std::string t(s);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }),
          t.end());
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  bool ok = !t.empty();
  int slashes = 0;
  for (size_t i = 0; i < t.size() && ok; ++i) {
    char ch = t[i];
    if (ch == '/') {
      ++slashes;
      ok = i > 0 && i + 1 < t.size() && t[i - 1] != '-';
    } else if (ch == '-') {
      ok = i == 0 || t[i - 1] == '/';
    } else {
      ok = std::isdigit(static_cast<unsigned char>(ch)) != 0;
    }
  }
  if (!ok || slashes > 1) fail(Errc::InvalidInput, "malformed rational '" + std::string(s) + "'");
  Rat r;
  try {
    r.set_str(t, 10);
  } catch (const std::invalid_argument&) {
    fail(Errc::InvalidInput, "malformed rational '" + std::string(s) + "'");
  }
  if (r.get_den() == 0) fail(Errc::InvalidInput, "zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

std::string rat_str(const Rat& r) { return r.get_str(10); }

Rat floor_div(const Rat& a, const Rat& b) {
  Rat q = a / b;
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rat(f);
}

Rat rat_mod(const Rat& a, const Rat& b) {
  Rat bb = abs(b);
  return a - bb * floor_div(a, bb);
}

bool is_integer(const Rat& r) { return r.get_den() == 1; }

// ---------------------------------------------------------------- Poly

Poly::Poly(const Rat& c) {
  if (c != 0) c_.push_back(c);
}

Poly Poly::from_coeffs(std::vector<Rat> c) {
  Poly p;
  p.c_ = std::move(c);
  for (auto& x : p.c_) x.canonicalize();
  p.trim();
  return p;
}

Poly Poly::var() { return from_coeffs({0, 1}); }

Poly Poly::linear(const Rat& root) { return from_coeffs({-root, 1}); }

Poly Poly::from_roots(const std::map<Rat, int>& roots, const Rat& factor) {
  Poly p(factor);
  for (const auto& [r, k] : roots) p *= pow(linear(r), static_cast<unsigned>(k));
  return p;
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rat Poly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

Rat Poly::lead() const { return c_.empty() ? Rat(0) : c_.back(); }

Rat Poly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Poly Poly::affine(const Rat& a, const Rat& b) const {
  Poly lin = from_coeffs({b, a});
  Poly acc;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= lin;
    acc += Poly(*it);
  }
  return acc;
}

Poly Poly::shift(const Rat& c) const {
  if (c == 0 || is_constant()) return *this;
  // Taylor shift by repeated synthetic steps, O(deg^2).
  std::vector<Rat> a = c_;
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i)
    for (int j = n - 2; j >= i; --j) a[j] += c * a[j + 1];
  return from_coeffs(std::move(a));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Poly p = *this;
  Rat l = lead();
  for (auto& x : p.c_) x /= l;
  return p;
}

Poly Poly::derivative() const {
  std::vector<Rat> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return from_coeffs(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<Rat> r(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  Poly p;
  p.c_ = std::move(r);
  p.trim();
  return p;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rat& s) {
  if (s == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= s;
  return *this;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

std::string Poly::str(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    Rat a = c_[i];
    if (a == 0) continue;
    bool neg = a < 0;
    Rat m = abs(a);
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    if (i == 0 || m != 1) {
      os << rat_str(m);
      if (i > 0) os << "*";
    }
    if (i > 0) os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

void divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) fail(Errc::ZeroFunction, "polynomial division by zero");
  const int db = b.degree();
  std::vector<Rat> rem = a.coeffs();
  std::vector<Rat> quo(std::max(0, a.degree() - db + 1));
  Rat inv = 1 / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    if (rem[i] == 0) continue;
    Rat f = rem[i] * inv;
    quo[i - db] = f;
    const auto& bc = b.coeffs();
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * bc[j];
  }
  q = Poly::from_coeffs(std::move(quo));
  rem.resize(std::max(0, db));
  r = Poly::from_coeffs(std::move(rem));
}

Poly operator/(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  ensure(r.is_zero(), "inexact polynomial division");
  return q;
}

Poly operator%(const Poly& a, const Poly& b) {
  Poly q, r;
  divmod(a, b, q, r);
  return r;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a.monic(), y = b.monic();
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x;
}

Poly pow(const Poly& f, unsigned k) {
  Poly r(1), base = f;
  while (k) {
    if (k & 1u) r *= base;
    k >>= 1u;
    if (k) base *= base;
  }
  return r;
}

namespace {

// Solves M x = rhs exactly; returns false if inconsistent. Free unknowns are 0.
bool solve_linear(std::vector<std::vector<Rat>> m, std::vector<Rat> rhs, std::vector<Rat>& x) {
  const size_t rows = m.size();
  const size_t cols = rows ? m[0].size() : 0;
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    Rat inv = 1 / m[r][c];
    for (size_t k = c; k < cols; ++k) m[r][k] *= inv;
    rhs[r] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return false;
  x.assign(cols, 0);
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return true;
}

BezoutResult bezout_euclid(const std::vector<Poly>& fs) {
  // Iterated extended Euclid; used only when the bounded-degree system fails.
  BezoutResult res;
  res.gs.assign(fs.size(), Poly());
  res.d = Poly();
  for (size_t i = 0; i < fs.size(); ++i) {
    if (fs[i].is_zero()) continue;
    if (res.d.is_zero()) {
      res.d = fs[i].monic();
      res.gs[i] = Poly(1 / fs[i].lead());
      continue;
    }
    Poly r0 = res.d, r1 = fs[i], s0(1), s1(0), t0(0), t1(1);
    while (!r1.is_zero()) {
      Poly q, r;
      divmod(r0, r1, q, r);
      r0 = r1;
      r1 = r;
      Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
      s0 = s1;
      s1 = s2;
      t0 = t1;
      t1 = t2;
    }
    Rat l = 1 / r0.lead();
    for (auto& g : res.gs) g = g * s0 * l;
    res.gs[i] = t0 * l;
    res.d = r0.monic();
  }
  return res;
}

}  // namespace

BezoutResult bezout(const std::vector<Poly>& fs) {
  ensure(!fs.empty(), "bezout of empty list");
  Poly d;
  int maxdeg = 0;
  for (const auto& f : fs) {
    d = d.is_zero() ? f.monic() : gcd(d, f);
    maxdeg = std::max(maxdeg, f.degree());
  }
  if (d.is_zero()) fail(Errc::ZeroFunction, "bezout of all-zero list");
  for (int D = 0; D <= maxdeg; ++D) {
    const size_t k = fs.size();
    const size_t nunk = k * (D + 1);
    const size_t neq = maxdeg + D + 1;
    std::vector<std::vector<Rat>> m(neq, std::vector<Rat>(nunk));
    for (size_t i = 0; i < k; ++i)
      for (int e = 0; e <= fs[i].degree(); ++e)
        for (int j = 0; j <= D; ++j) m[e + j][i * (D + 1) + j] = fs[i].coeff(e);
    std::vector<Rat> rhs(neq);
    for (int e = 0; e <= d.degree(); ++e) rhs[e] = d.coeff(e);
    std::vector<Rat> x;
    if (!solve_linear(m, rhs, x)) continue;
    BezoutResult res{d, {}};
    for (size_t i = 0; i < k; ++i)
      res.gs.push_back(Poly::from_coeffs(
          std::vector<Rat>(x.begin() + i * (D + 1), x.begin() + (i + 1) * (D + 1))));
    return res;
  }
  return bezout_euclid(fs);
}

// ---------------------------------------------------------------- RatFunc

RatFunc::RatFunc(const Poly& num, const Poly& den) {
  if (den.is_zero()) fail(Errc::ZeroFunction, "rational function with zero denominator");
  if (num.is_zero()) {
    num_ = Poly();
    den_ = Poly(1);
    return;
  }
  if (den.is_constant()) {
    num_ = num * (1 / den.lead());
    den_ = Poly(1);
    return;
  }
  Poly g = gcd(num, den);
  Poly n = num, d = den;
  if (!g.is_constant()) {
    n = num / g;
    d = den / g;
  }
  Rat l = d.lead();
  num_ = n * (1 / l);
  den_ = d.monic();
}

Rat RatFunc::constant_value() const {
  ensure(is_constant(), "constant_value of non-constant rational function");
  return num_.lead() / den_.lead();
}

Rat RatFunc::eval(const Rat& x) const {
  Rat dv = den_.eval(x);
  if (dv == 0) fail(Errc::PoleAtWeight, "pole at " + rat_str(x) + " of " + str());
  return num_.eval(x) / dv;
}

RatFunc RatFunc::shift(const Rat& c) const {
  RatFunc r;
  r.num_ = num_.shift(c);
  r.den_ = den_.shift(c);
  return r;
}

RatFunc RatFunc::affine(const Rat& a, const Rat& b) const {
  return RatFunc(num_.affine(a, b), den_.affine(a, b));
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) fail(Errc::ZeroFunction, "inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_ == o.den_) return *this = RatFunc(num_ + o.num_, den_);
  return *this = RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  if (is_zero() || o.is_zero()) return *this = RatFunc();
  if (is_polynomial() && o.is_polynomial()) {
    num_ = num_ * o.num_;
    return *this;
  }
  // Cross-cancel before multiplying so intermediate degrees stay small.
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  Poly a = g1.is_constant() ? num_ : num_ / g1;
  Poly d = g1.is_constant() ? o.den_ : o.den_ / g1;
  Poly c = g2.is_constant() ? o.num_ : o.num_ / g2;
  Poly b = g2.is_constant() ? den_ : den_ / g2;
  Poly nd = b * d;
  Rat l = nd.lead();
  num_ = a * c * (1 / l);
  den_ = nd.monic();
  return *this;
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

std::string RatFunc::str(const std::string& var) const {
  if (is_polynomial()) return num_.str(var);
  return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
}

int vanishing_order(const Poly& f, const Rat& a) {
  if (f.is_zero()) fail(Errc::ZeroFunction, "vanishing order of the zero polynomial");
  int k = 0;
  Poly p = f, lin = Poly::linear(a);
  while (p.eval(a) == 0) {
    p = p / lin;
    ++k;
  }
  return k;
}

int vanishing_order(const RatFunc& f, const Rat& a) {
  if (f.is_zero()) fail(Errc::ZeroFunction, "vanishing order of the zero function");
  return vanishing_order(f.num(), a) - vanishing_order(f.den(), a);
}

// ---------------------------------------------------------------- roots

int RootMultiset::degree() const {
  int d = 0;
  for (const auto& kv : roots) d += kv.second;
  return d;
}

namespace {

// Primitive integer polynomial with the same roots.
std::vector<Int> integer_form(const Poly& f) {
  Int l = 1;
  for (const auto& c : f.coeffs()) l = lcm(l, Int(c.get_den()));
  std::vector<Int> z;
  Int g = 0;
  for (const auto& c : f.coeffs()) {
    Rat s = c * Rat(l);
    z.push_back(s.get_num());
    g = gcd(g, s.get_num());
  }
  if (g != 0)
    for (auto& x : z) x /= g;
  return z;
}

bool is_root(const Poly& f, const Rat& r) { return f.eval(r) == 0; }

void add_candidates_numeric(const Poly& f, std::vector<Rat>& out) {
  const int n = f.degree();
  Eigen::VectorXd c(n + 1);
  Poly m = f.monic();
  for (int i = 0; i <= n; ++i) c[i] = m.coeff(i).get_d();
  if (!c.allFinite()) return;
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(c);
  std::vector<Int> z = integer_form(f);
  Int lead = abs(z.back());
  const double qmax = std::min(1e12, lead.get_d());
  // Denominators of rational roots divide the leading coefficient.
  std::vector<long> dens;
  for (long q = 1; q <= 4096; ++q)
    if (mpz_divisible_ui_p(lead.get_mpz_t(), static_cast<unsigned long>(q))) dens.push_back(q);
  for (int i = 0; i < solver.roots().size(); ++i) {
    auto root = solver.roots()[i];
    double x = root.real();
    // Clustered roots come back as complex pairs with a visible imaginary part.
    if (std::abs(root.imag()) > 1e-2 * (1 + std::abs(x))) continue;
    for (long q : dens) {
      Rat r(Int(static_cast<long>(std::llround(x * static_cast<double>(q)))), Int(q));
      r.canonicalize();
      out.push_back(r);
    }
    // Continued-fraction convergents p/q with q <= |lead|.
    double v = x;
    Int h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    for (int step = 0; step < 40; ++step) {
      double a = std::floor(v);
      if (!std::isfinite(a) || std::abs(a) > 1e15) break;
      Int ai(a);
      Int h2 = ai * h1 + h0, k2 = ai * k1 + k0;
      if (k2.get_d() > qmax) break;
      out.emplace_back(h2, k2);
      out.back().canonicalize();
      h0 = h1;
      h1 = h2;
      k0 = k1;
      k1 = k2;
      double frac = v - a;
      if (std::abs(frac) < 1e-14) break;
      v = 1 / frac;
    }
  }
}

std::vector<Int> small_divisors(Int x) {
  x = abs(x);
  std::vector<Int> ds;
  if (x == 0 || x > Int("1000000000000")) return ds;
  for (Int d = 1; d * d <= x; ++d) {
    if (x % d == 0) {
      ds.push_back(d);
      if (d * d != x) ds.push_back(x / d);
    }
  }
  return ds;
}

void add_candidates_exact(const Poly& f, std::vector<Rat>& out) {
  std::vector<Int> z = integer_form(f);
  if (z.front() == 0) {
    out.emplace_back(0);
    return;
  }
  auto ps = small_divisors(z.front());
  auto qs = small_divisors(z.back());
  if (ps.empty() || qs.empty() || ps.size() * qs.size() > 200000) return;
  for (const auto& p : ps)
    for (const auto& q : qs) {
      Rat r(p, q);
      r.canonicalize();
      out.push_back(r);
      out.push_back(-r);
    }
}

}  // namespace

RootMultiset roots_rational(const Poly& f) {
  if (f.is_zero()) fail(Errc::ZeroFunction, "roots of the zero polynomial");
  RootMultiset rm;
  rm.factor = f.lead();
  Poly rest = f.monic();
  auto strip = [&](const Rat& r) {
    if (rest.degree() < 1) return;
    Poly lin = Poly::linear(r);
    while (rest.degree() >= 1 && is_root(rest, r)) {
      rest = rest / lin;
      rm.roots[r] += 1;
    }
  };
  // Numeric passes repeat while deflation keeps finding roots; the exact
  // candidate search is the last resort.
  for (bool exact = false; rest.degree() >= 1;) {
    // Work on the square-free part: simple roots make the numerics stable.
    Poly sqf = rest / gcd(rest, rest.derivative());
    const int before = rest.degree();
    if (sqf.degree() == 1) {
      strip(-sqf.coeff(0) / sqf.coeff(1));
      continue;
    }
    std::vector<Rat> cand;
    if (!exact)
      add_candidates_numeric(sqf, cand);
    else
      add_candidates_exact(sqf, cand);
    std::sort(cand.begin(), cand.end());
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
    for (const auto& r : cand) strip(r);
    if (rest.degree() == before) {
      if (exact) break;
      exact = true;
    }
  }
  if (rest.degree() >= 1)
    fail(Errc::IrrationalRoots, "no rational factorization of residual factor " + rest.str());
  return rm;
}

}  // namespace kfp
