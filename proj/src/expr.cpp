#include <cctype>
#include <string>
#include <vector>

#include "kfp/algebra.hpp"
#include "kfp/errors.hpp"

namespace kfp {

namespace {

struct Node {
  std::string atom;
  std::vector<Node> kids;
  bool list = false;
};

class Reader {
 public:
  explicit Reader(const std::string& s) : s_(s) {}

  Node read() {
    skip();
    if (pos_ >= s_.size()) fail(Errc::InvalidInput, "unexpected end of expression");
    if (s_[pos_] == ')') fail(Errc::InvalidInput, "unexpected ')' at offset " + std::to_string(pos_));
    Node n;
    if (s_[pos_] == '(') {
      ++pos_;
      n.list = true;
      for (;;) {
        skip();
        if (pos_ >= s_.size()) fail(Errc::InvalidInput, "missing ')'");
        if (s_[pos_] == ')') {
          ++pos_;
          break;
        }
        n.kids.push_back(read());
      }
      if (n.kids.empty()) fail(Errc::InvalidInput, "empty list in expression");
      return n;
    }
    size_t start = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    n.atom = s_.substr(start, pos_ - start);
    return n;
  }

  bool done() {
    skip();
    return pos_ >= s_.size();
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  const std::string& s_;
  size_t pos_ = 0;
};

bool looks_numeric(const std::string& a) {
  return !a.empty() && (std::isdigit(static_cast<unsigned char>(a[0])) ||
                        (a.size() > 1 && a[0] == '-' && std::isdigit(static_cast<unsigned char>(a[1]))));
}

Elem eval(const Algebra& alg, const Node& n, const std::map<std::string, Elem>& env) {
  if (!n.list) {
    const std::string& a = n.atom;
    if (a == "X1+") return alg.gen(Gen::X1p);
    if (a == "X1-") return alg.gen(Gen::X1m);
    if (a == "X2+") return alg.gen(Gen::X2p);
    if (a == "X2-") return alg.gen(Gen::X2m);
    if (a == "H") return alg.h();
    if (looks_numeric(a)) return alg.scalar(RatFunc(parse_rat(a)));
    auto it = env.find(a);
    if (it == env.end()) fail(Errc::InvalidInput, "unknown symbol '" + a + "'");
    return it->second;
  }
  if (n.kids.front().list) fail(Errc::InvalidInput, "operator position holds a list");
  const std::string& op = n.kids.front().atom;
  std::vector<Elem> args;
  for (size_t i = 1; i < n.kids.size(); ++i) args.push_back(eval(alg, n.kids[i], env));
  auto arity = [&](size_t k) {
    if (args.size() != k) fail(Errc::InvalidInput, "'" + op + "' takes " + std::to_string(k) + " arguments");
  };
  if (op == "*") {
    Elem r = alg.one();
    for (const auto& e : args) r = alg.mul(r, e);
    return r;
  }
  if (op == "+") {
    Elem r = alg.zero();
    for (const auto& e : args) r += e;
    return r;
  }
  if (op == "-") {
    if (args.empty()) fail(Errc::InvalidInput, "'-' needs an argument");
    if (args.size() == 1) return -args[0];
    Elem r = args[0];
    for (size_t i = 1; i < args.size(); ++i) r -= args[i];
    return r;
  }
  if (op == "ad" || op == "comm") {
    arity(2);
    return alg.commutator(args[0], args[1]);
  }
  if (op == "star") {
    arity(1);
    return alg.star(args[0]);
  }
  if (op == "pow") {
    if (n.kids.size() != 3 || n.kids[2].list) fail(Errc::InvalidInput, "'pow' takes an element and an integer");
    Rat k = parse_rat(n.kids[2].atom);
    if (!is_integer(k) || k < 0) fail(Errc::InvalidInput, "'pow' exponent must be a non-negative integer");
    Elem r = alg.one();
    for (long i = 0; i < k.get_num().get_si(); ++i) r = alg.mul(r, args[0]);
    return r;
  }
  fail(Errc::InvalidInput, "unknown operator '" + op + "'");
}

}  // namespace

Elem parse_expr(const Algebra& alg, const std::string& text, const std::map<std::string, Elem>& env) {
  Reader rd(text);
  Node n = rd.read();
  if (!rd.done()) fail(Errc::InvalidInput, "trailing input after expression");
  return eval(alg, n, env);
}

IdentityCheck check_identity(const Algebra& alg, const std::string& lhs, const std::string& rhs,
                             const std::map<std::string, Elem>& env) {
  Elem d = parse_expr(alg, lhs, env) - parse_expr(alg, rhs, env);
  IdentityCheck r;
  r.equal = d.is_zero();
  if (!r.equal) r.diff = d.str();
  return r;
}

}  // namespace kfp
