#include "kfp/golden.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "kfp/algebra.hpp"
#include "kfp/errors.hpp"
#include "kfp/fixtures.hpp"
#include "kfp/mte.hpp"

namespace kfp::golden {

bool Suite::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

using Env = std::map<std::string, Elem>;

struct Builder {
  Suite s;
  const Algebra* alg = nullptr;
  Env env;

  void add(const std::string& name, const std::function<bool(std::string&)>& fn) {
    Check c{name, false, ""};
    try {
      c.pass = fn(c.detail);
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    s.checks.push_back(std::move(c));
  }
  void identity(const std::string& name, const std::string& lhs, const std::string& rhs) {
    add(name, [&](std::string& detail) {
      IdentityCheck r = check_identity(*alg, lhs, rhs, env);
      if (!r.equal) detail = "lhs - rhs = " + r.diff;
      return r.equal;
    });
  }
  void equal(const std::string& name, const Elem& a, const Elem& b) {
    add(name, [&](std::string& detail) {
      Elem d = a - b;
      if (!d.is_zero()) detail = "difference " + d.str();
      return d.is_zero();
    });
  }
};

Poly u_minus(const Rat& r) { return Poly::linear(r); }

Elem e_of(const Algebra& alg, const std::string& text, const Env& env = {}) { return parse_expr(alg, text, env); }

}  // namespace

Suite center_21_single() {
  Builder b;
  b.s.name = "center (21-single)";
  Algebra alg(params_from_config(fixtures::fig_21_single()));
  b.alg = &alg;
  b.add("p1 = u - 1/2, p2 = (u - 1) u", [&](std::string&) {
    return alg.params().p1 == u_minus(Rat(1, 2)) && alg.params().p2 == u_minus(1) * Poly::var();
  });
  const Elem expected = e_of(alg, "(* 1/2 (+ (* X1+ X1+ X2+) (* -2 X1+ X2+ X1+) (* X2+ X1+ X1+)))");
  LiftResult lr = alg.lift_center();
  b.add("center lifts to A", [&](std::string&) { return lr.liftable; });
  if (lr.liftable) {
    b.env["C"] = lr.c;
    b.equal("C = 1/2 (X1^2 X2 - 2 X1 X2 X1 + X2 X1^2)", lr.c, expected);
    b.equal("C = 1/2 [X1+, [X1+, X2+]]", lr.c, e_of(alg, "(* 1/2 (comm X1+ (comm X1+ X2+)))"));
    b.add("C* C is a nonzero rational constant", [&](std::string& detail) {
      Elem cc = alg.mul(alg.star(lr.c), lr.c);
      detail = cc.str();
      return cc.homogeneous() && cc.degree() == Deg{0, 0} && cc.coeff({0, 0}).is_constant() && !cc.is_zero();
    });
    for (const char* g : {"X1+", "X1-", "X2+", "X2-", "H"})
      b.identity(std::string("[C, ") + g + "] = 0", std::string("(comm C ") + g + ")", "0");
  }
  b.identity("X2 X1 (H + 1) = X1 X2 (H - 1)", "(* X2+ X1+ (+ H 1))", "(* X1+ X2+ (- H 1))");
  const Elem a = alg.canonical_generator({1, 1});
  b.env["a"] = a;
  b.equal("a_(1,1) = 1/2 (X1 X2 - X2 X1)", a, e_of(alg, "(* 1/2 (- (* X1+ X2+) (* X2+ X1+)))"));
  b.identity("a_(1,1) (H + 1) = X1 X2", "(* a (+ H 1))", "(* X1+ X2+)");
  b.identity("a_(1,1) (H - 1) = X2 X1", "(* a (- H 1))", "(* X2+ X1+)");
  b.add("Serre: (ad X1+)^3 (X2+) = 0 and (ad X1+)^2 (X2+) != 0", [&](std::string&) {
    return alg.serre_check().x1_side &&
           !e_of(alg, "(comm X1+ (comm X1+ X2+))").is_zero();
  });
  return b.s;
}

Suite finite_w(int d) {
  Builder b;
  b.s.name = "finite W-algebra (d = " + std::to_string(d) + ")";
  const Rat D(d);
  const Poly p = u_minus(Rat(1, 2)) * u_minus(Rat(1, 2) + D);
  Algebra alg(make_params(Rat(-1), Rat(1), p, p));
  b.alg = &alg;
  b.add("annulus fixture fig-11-d gives p1 = p2 = (u - 1/2)(u - 1/2 - d)", [&](std::string&) {
    auto ap = params_from_config(fixtures::fig_11_d(d));
    return ap.p1 == p && ap.p2 == p && ap.a1 == -1 && ap.a2 == 1;
  });
  b.add("Serre: (ad X1+)^3 (X2+) = 0", [&](std::string&) { return alg.serre_check().x1_side; });
  const Poly H = Poly::var();
  const Poly f = (H - Poly(1)) * (H - Poly(Rat(D + 1))), g = H * (H - Poly(D));
  b.add("Bezout: d^2 - 1 = (-2H + d - 1) f + (2H - d - 3) g", [&](std::string&) {
    return Poly(Rat(D * D - 1)) == (Rat(-2) * H + Poly(Rat(D - 1))) * f + (Rat(2) * H - Poly(Rat(D + 3))) * g;
  });
  const std::string inv = rat_str(1 / (D * D - 1));
  const Elem C = e_of(alg, "(* " + inv + " (+ (* X2+ X1+ (+ (* -2 H) " + rat_str(D - 1) + ")) (* X1+ X2+ (- (* 2 H) " +
                               rat_str(D + 3) + "))))");
  b.env["C"] = C;
  b.env["Cs"] = alg.star(C);
  b.equal("C = X2 X1 / ((H - 1)(H - 1 - d))", C, alg.x_seq({1, 2}) * RatFunc(Poly(1), f));
  b.equal("C = X1 X2 / (H (H - d))", C, alg.x_seq({2, 1}) * RatFunc(Poly(1), g));
  if (alg.params().cfg) b.equal("C equals the localized central element C_(1,1)", C, alg.central_C(1, 1));
  b.identity("C* C = 1", "(* Cs C)", "1");
  for (const char* x : {"X1+", "X1-", "X2+", "X2-", "H"})
    b.identity(std::string("[C, ") + x + "] = 0", std::string("(comm C ") + x + ")", "0");
  // psi = sqrt(2) phi on J+-, S+-; keeps every image rational.
  b.env["Jp"] = e_of(alg, "X1+");
  b.env["Jm"] = e_of(alg, "(- X1-)");
  b.env["J0"] = e_of(alg, "(+ (- H) " + rat_str((D + 1) / 2) + ")");
  b.env["Sm"] = e_of(alg, "X2+");
  b.env["S0"] = e_of(alg, "(* 1/2 (comm X1+ X2+))");
  b.env["Sp"] = e_of(alg, "(* -1/2 (comm X1+ (comm X1+ X2+)))");
  b.env["w2"] = e_of(alg, "(+ (* C C) " + rat_str((D * D - 1) / 2) + ")", b.env);
  b.env["c2"] = e_of(alg, "(* 2 (+ (* J0 J0) (* 1/2 (+ (* Jp Jm) (* Jm Jp)))))", b.env);
  b.env["W"] = b.env["w2"] - b.env["c2"];
  b.add("phi(c2) = (d^2 - 1)/2", [&](std::string& detail) {
    const Elem& c2 = b.env["c2"];
    RatFunc c0 = c2.coeff({0, 0});
    detail = "phi(c2) = " + (c2.homogeneous() && c0.is_constant() ? rat_str(c0.constant_value()) : c2.str());
    return c2 == alg.scalar(RatFunc((D * D - 1) / 2));
  });
  b.identity("[J+, J-] = J0", "(comm Jp Jm)", "(* 2 J0)");
  b.identity("[J0, J+] = J+", "(comm J0 Jp)", "Jp");
  b.identity("[J0, J-] = -J-", "(comm J0 Jm)", "(- Jm)");
  b.identity("[J+, S+] = 0", "(comm Jp Sp)", "0");
  b.identity("[J+, S0] = -S+", "(comm Jp S0)", "(- Sp)");
  b.identity("[J+, S-] = S0", "(comm Jp Sm)", "(* 2 S0)");
  b.identity("[J0, S+] = S+", "(comm J0 Sp)", "Sp");
  b.identity("[J0, S0] = 0", "(comm J0 S0)", "0");
  b.identity("[J0, S-] = -S-", "(comm J0 Sm)", "(- Sm)");
  b.identity("[J-, S+] = -S0", "(comm Jm Sp)", "(* -2 S0)");
  b.identity("[J-, S0] = S-", "(comm Jm S0)", "Sm");
  b.identity("[J-, S-] = 0", "(comm Jm Sm)", "0");
  b.identity("[S+, S-] = (w2 - c2) J0", "(comm Sp Sm)", "(* 2 W J0)");
  b.identity("[S0, S+] = (w2 - c2) J+", "(comm S0 Sp)", "(* W Jp)");
  b.identity("[S0, S-] = -(w2 - c2) J-", "(comm S0 Sm)", "(- (* W Jm))");
  b.identity("[S+, S0] = -(w2 - c2) J+", "(comm Sp S0)", "(- (* W Jp))");
  for (const char* x : {"Jp", "Jm", "J0", "Sp", "Sm", "S0"})
    b.identity(std::string("w2 central: [w2, ") + x + "] = 0", std::string("(comm w2 ") + x + ")", "0");
  b.identity("X2- = X1+ C*", "X2-", "(* X1+ Cs)");
  return b.s;
}

Suite lie_heisenberg() {
  Builder b;
  b.s.name = "Lie-Heisenberg (21-single)";
  Algebra alg(params_from_config(fixtures::fig_21_single()));
  b.alg = &alg;
  b.add("alpha = (-1, 2), p1 = u - 1/2, p2 = (u - 1) u", [&](std::string&) {
    const auto& p = alg.params();
    return p.a1 == -1 && p.a2 == 2 && p.p1 == u_minus(Rat(1, 2)) && p.p2 == u_minus(1) * Poly::var();
  });
  b.env["e"] = e_of(alg, "(* 1/2 X2+)");
  b.env["f"] = e_of(alg, "(* -1/2 X2-)");
  b.env["h"] = e_of(alg, "(- H 1/2)");
  b.env["x"] = e_of(alg, "(* 1/2 (comm X2+ X1+))");
  b.env["y"] = e_of(alg, "X1+");
  b.env["z"] = e_of(alg, "(* 1/2 (comm (comm X2+ X1+) X1+))");
  const char* rels[15][3] = {
      {"[e, f] = h", "(comm e f)", "h"},          {"[h, e] = 2e", "(comm h e)", "(* 2 e)"},
      {"[h, f] = -2f", "(comm h f)", "(* -2 f)"}, {"[x, y] = z", "(comm x y)", "z"},
      {"[x, z] = 0", "(comm x z)", "0"},          {"[y, z] = 0", "(comm y z)", "0"},
      {"[e, x] = 0", "(comm e x)", "0"},          {"[h, x] = x", "(comm h x)", "x"},
      {"[f, x] = y", "(comm f x)", "y"},          {"[e, y] = x", "(comm e y)", "x"},
      {"[h, y] = -y", "(comm h y)", "(- y)"},     {"[f, y] = 0", "(comm f y)", "0"},
      {"[e, z] = 0", "(comm e z)", "0"},          {"[h, z] = 0", "(comm h z)", "0"},
      {"[f, z] = 0", "(comm f z)", "0"}};
  for (const auto& r : rels) b.identity(r[0], r[1], r[2]);
  return b.s;
}

Suite affine_a11(int d) {
  Builder b;
  b.s.name = "affine A1^(1) (d = " + std::to_string(d) + ")";
  const Rat D(d);
  const Poly p = u_minus(Rat(1, 2)) * u_minus(Rat(1, 2) + D);
  Algebra alg(make_params(Rat(-1), Rat(1), p, p));
  b.alg = &alg;
  const std::string hs = "(- (* 2 H) " + rat_str(D + 1) + ")";
  b.env["e1"] = e_of(alg, "X1+");
  b.env["e2"] = e_of(alg, "X2+");
  b.env["f1"] = e_of(alg, "(- X1-)");
  b.env["f2"] = e_of(alg, "(- X2-)");
  b.env["h1"] = e_of(alg, "(- " + hs + ")");
  b.env["h2"] = e_of(alg, hs);
  const int a[2][2] = {{2, -2}, {-2, 2}};
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const std::string I = std::to_string(i), J = std::to_string(j);
      b.identity("[e" + I + ", f" + J + "] = " + (i == j ? "h" + I : "0"), "(comm e" + I + " f" + J + ")",
                 i == j ? "h" + I : "0");
      const std::string aij = std::to_string(a[i - 1][j - 1]);
      b.identity("[h" + I + ", e" + J + "] = " + aij + " e" + J, "(comm h" + I + " e" + J + ")",
                 "(* " + aij + " e" + J + ")");
      b.identity("[h" + I + ", f" + J + "] = " + std::to_string(-a[i - 1][j - 1]) + " f" + J,
                 "(comm h" + I + " f" + J + ")", "(* " + std::to_string(-a[i - 1][j - 1]) + " f" + J + ")");
    }
  for (const auto& [x, y] : {std::pair{"e1", "e2"}, {"e2", "e1"}, {"f1", "f2"}, {"f2", "f1"}})
    b.identity(std::string("Serre [") + x + ", [" + x + ", [" + x + ", " + y + "]]] = 0",
               std::string("(comm ") + x + " (comm " + x + " (comm " + x + " " + y + ")))", "0");
  return b.s;
}

Suite order7() {
  Builder b;
  b.s.name = "order7";
  Algebra alg(params_from_config(fixtures::fig_order7()));
  b.alg = &alg;
  const Poly H = Poly::var();
  const RatFunc expected((H + Poly(1)) * H * pow(H - Poly(3), 3), pow(H + Poly(2), 3) * (H - Poly(1)) * (H - Poly(2)));
  b.add("R~ = (H+1) H (H-3)^3 / ((H+2)^3 (H-1)(H-2))", [&](std::string& detail) {
    detail = alg.rtilde_fn().str();
    return alg.rtilde_fn() == expected && alg.rtilde_from_orders() == expected;
  });
  b.add("p1 = p2 = (u-1/2)(u+1/2)^2(u-3/2)^2(u+3/2)^3(u-5/2)^3", [&](std::string&) {
    Poly p = u_minus(Rat(1, 2)) * pow(u_minus(Rat(-1, 2)), 2) * pow(u_minus(Rat(3, 2)), 2) *
             pow(u_minus(Rat(-3, 2)), 3) * pow(u_minus(Rat(5, 2)), 3);
    return alg.params().p1 == p && alg.params().p2 == p;
  });
  // (X1 X2)^k = X1^k X2^k f_k(H); X1 X2 is the sequence (2, 1).
  const Elem x12 = alg.x_seq({2, 1});
  std::vector<Elem> powers{alg.one()};
  for (int k = 1; k <= 7; ++k) powers.push_back(alg.mul(powers.back(), x12));
  b.add("f_k has a pole at 0 for 2 <= k <= 5, is regular nonzero at k = 6, has a simple zero at k = 7",
        [&](std::string& detail) {
          bool ok = true;
          for (int k = 2; k <= 7; ++k) {
            int v = vanishing_order(powers[k].coeff({k, k}), Rat(0));
            detail += (k > 2 ? " " : "") + std::string("k=") + std::to_string(k) + ":" + std::to_string(v);
            ok = ok && (k <= 5 ? v < 0 : v == k - 6);
          }
          return ok;
        });
  b.add("(X1 X2)^7 = 0 modulo A (H - 0)", [&](std::string&) { return alg.reduce_mod_weight(powers[7], 0) == 0; });
  b.add("(X1 X2)^6 != 0 modulo A (H - 0)", [&](std::string& detail) {
    Rat r = alg.reduce_mod_weight(powers[6], 0);
    Seq s = alg.min_ord_seq({6, 6}, 0);
    detail = "reduced coefficient " + rat_str(r) + " over X(" + seq_str(s) + ")";
    return r != 0;
  });
  b.add("nilpotency index of X1 X2 at 0 is 7", [&](std::string& detail) {
    NilIndex ni = alg.nilpotency_index(0, {2, 1});
    detail = "ord " + std::to_string(ni.ord) + ", index " + (ni.index ? std::to_string(*ni.index) : "infinite");
    return ni.index && *ni.index == 7;
  });
  return b.s;
}

std::vector<Suite> all_suites() {
  return {center_21_single(), lie_heisenberg(), finite_w(2), finite_w(3), affine_a11(2), affine_a11(3), order7()};
}

}  // namespace kfp::golden
