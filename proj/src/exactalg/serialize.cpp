#include "exactalg/serialize.hpp"

#include <cctype>
#include <cstdlib>

namespace qsh {

namespace {

std::string rat64Str(const Rat64& r) {
  std::string s = std::to_string(r.n);
  if (r.d != 1) s += "/" + std::to_string(r.d);
  return s;
}

// exponent of one generator, rendered as "", "^3", "^-1", "^(3/2)", "^(a+1)"
std::string expSuffix(const GenExp& ge) {
  if (ge.f.empty()) {
    if (ge.e2 == 2) return "";
    if (ge.e2 % 2 == 0) return "^" + std::to_string(ge.e2 / 2);
    return "^(" + std::to_string(ge.e2) + "/2)";
  }
  std::string lin;
  if (ge.e2 != 0) {
    lin = (ge.e2 % 2 == 0) ? std::to_string(ge.e2 / 2)
                           : std::to_string(ge.e2) + "/2";
  }
  for (const auto& fp : ge.f) {
    Rat64 c = fp.c;
    bool neg = c.n < 0;
    if (neg) c.n = -c.n;
    std::string mag = (c.n == 1 && c.d == 1) ? gens().symName(fp.sym)
                                             : rat64Str(c) + "*" + gens().symName(fp.sym);
    if (lin.empty())
      lin = (neg ? "-" : "") + mag;
    else
      lin += (neg ? "-" : "+") + mag;
  }
  return "^(" + lin + ")";
}

int genFromName(const std::string& name) {
  auto br = name.find('[');
  if (br == std::string::npos) {
    int id = gens().findGen(name);
    if (id < 0 || gens().info(id).kind != GenKind::Param)
      throw ParseError("unknown parameter: " + name);
    return id;
  }
  std::string base = name.substr(0, br);
  const char* p = name.c_str() + br + 1;
  char* end = nullptr;
  long node = std::strtol(p, &end, 10);
  long row = 1;
  if (*end == ',') row = std::strtol(end + 1, &end, 10);
  if (*end != ']') throw ParseError("bad variable name: " + name);
  if (base == "x") return gX((int)node, (int)row);
  if (base == "w") return gW((int)node, (int)row);
  if (base == "z") return gZ((int)node, (int)row);
  throw ParseError("unknown variable family: " + name);
}

}  // namespace

std::string qToString(const Q& c) { return c.get_str(); }

std::string monoToString(const Mono& m) {
  if (m.isOne()) return "1";
  std::string s;
  for (size_t i = 0; i < m.g.size(); i++) {
    if (i) s += "*";
    s += genName(m.g[i].gen) + expSuffix(m.g[i]);
  }
  return s;
}

std::string polyToString(const Poly& p) {
  if (p.isZero()) return "0";
  std::string s;
  for (size_t i = 0; i < p.t.size(); i++) {
    Q c = p.t[i].c;
    bool neg = c < 0;
    if (neg) c = -c;
    std::string body;
    if (p.t[i].m.isOne())
      body = qToString(c);
    else if (c == 1)
      body = monoToString(p.t[i].m);
    else
      body = qToString(c) + "*" + monoToString(p.t[i].m);
    if (i == 0)
      s = (neg ? "-" : "") + body;
    else
      s += (neg ? " - " : " + ") + body;
  }
  return s;
}

std::string ratToString(const RatFunc& r) {
  auto [n, d] = r.canonicalPair();
  std::string s = "(" + polyToString(n) + ")";
  if (!d.isOne()) s += "/(" + polyToString(d) + ")";
  return s;
}

nlohmann::json polyToJson(const Poly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : p.t) {
    nlohmann::json mono = nlohmann::json::array();
    for (const auto& ge : t.m.g) {
      nlohmann::json e;
      e["g"] = genName(ge.gen);
      e["e2"] = ge.e2;
      if (!ge.f.empty()) {
        nlohmann::json fl = nlohmann::json::array();
        for (const auto& fp : ge.f)
          fl.push_back({gens().symName(fp.sym), fp.c.n, fp.c.d});
        e["f"] = fl;
      }
      mono.push_back(e);
    }
    terms.push_back({{"c", qToString(t.c)}, {"m", mono}});
  }
  return nlohmann::json{{"terms", terms}};
}

nlohmann::json ratToJson(const RatFunc& r) {
  auto [n, d] = r.canonicalPair();
  return nlohmann::json{{"num", polyToJson(n)}, {"den", polyToJson(d)}};
}

Poly polyFromJson(const nlohmann::json& j) {
  std::vector<Term> terms;
  for (const auto& jt : j.at("terms")) {
    Q c(jt.at("c").get<std::string>(), 10);
    c.canonicalize();
    Mono m;
    for (const auto& je : jt.at("m")) {
      GenExp ge;
      ge.gen = genFromName(je.at("g").get<std::string>());
      ge.e2 = je.at("e2").get<int64_t>();
      if (je.contains("f"))
        for (const auto& jf : je.at("f"))
          ge.f.push_back({gSym(jf.at(0).get<std::string>()),
                          Rat64(jf.at(1).get<int64_t>(), jf.at(2).get<int64_t>())});
      if (!ge.trivial()) m.g.push_back(ge);
    }
    std::sort(m.g.begin(), m.g.end(),
              [](const GenExp& a, const GenExp& b) { return genLess(a.gen, b.gen); });
    terms.push_back({c, m});
  }
  return Poly::fromTerms(std::move(terms));
}

RatFunc ratFromJson(const nlohmann::json& j) {
  return RatFunc::quotient(polyFromJson(j.at("num")), polyFromJson(j.at("den")));
}

// ---------------------------------------------------------------------------
// expression parser

namespace {

// value of an exponent expression: rational constant + linear formal part
struct ExpVal {
  Rat64 c{0, 1};
  std::vector<FormalPart> f;  // sorted by sym

  void addSym(int32_t sym, Rat64 k) {
    if (k.isZero()) return;
    auto it = f.begin();
    while (it != f.end() && it->sym < sym) ++it;
    if (it != f.end() && it->sym == sym) {
      it->c = it->c + k;
      if (it->c.isZero()) f.erase(it);
    } else {
      f.insert(it, {sym, k});
    }
  }
};

struct Parser {
  const std::string& s;
  size_t i = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at offset " + std::to_string(i) + " in \"" + s + "\"");
  }
  void ws() {
    while (i < s.size() && std::isspace((unsigned char)s[i])) i++;
  }
  char peek() {
    ws();
    return i < s.size() ? s[i] : '\0';
  }
  bool eat(char c) {
    if (peek() == c) {
      i++;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool atIdent() {
    char c = peek();
    return std::isalpha((unsigned char)c) || c == '_';
  }
  std::string ident() {
    ws();
    size_t b = i;
    while (i < s.size() &&
           (std::isalnum((unsigned char)s[i]) || s[i] == '_'))
      i++;
    if (b == i) fail("expected identifier");
    return s.substr(b, i - b);
  }
  std::string digits() {
    ws();
    size_t b = i;
    while (i < s.size() && std::isdigit((unsigned char)s[i])) i++;
    if (b == i) fail("expected number");
    return s.substr(b, i - b);
  }
  long smallInt() {
    ws();
    bool neg = eat('-');
    long v = std::stol(digits());
    return neg ? -v : v;
  }

  // ---- exponent sublanguage: identifiers are formal symbols ----

  ExpVal expAtom() {
    if (eat('(')) {
      ExpVal v = expExpr();
      expect(')');
      return v;
    }
    if (atIdent()) {
      ExpVal v;
      v.addSym(gSym(ident()), Rat64(1));
      return v;
    }
    ExpVal v;
    v.c = Rat64(std::stoll(digits()));
    return v;
  }

  ExpVal expFactor() {
    if (eat('-')) {
      ExpVal v = expFactor();
      v.c = -v.c;
      for (auto& fp : v.f) fp.c = -fp.c;
      return v;
    }
    return expAtom();
  }

  ExpVal expTerm() {
    ExpVal v = expFactor();
    for (;;) {
      if (eat('*')) {
        ExpVal w = expFactor();
        if (!v.f.empty() && !w.f.empty())
          fail("product of two formal exponents");
        if (v.f.empty()) std::swap(v, w);
        // now w is a pure rational
        v.c = v.c * w.c;
        for (auto& fp : v.f) fp.c = fp.c * w.c;
        std::vector<FormalPart> keep;
        for (auto& fp : v.f)
          if (!fp.c.isZero()) keep.push_back(fp);
        v.f = std::move(keep);
      } else if (eat('/')) {
        ExpVal w = expFactor();
        if (!w.f.empty() || w.c.isZero())
          fail("exponent division must be by a nonzero rational");
        Rat64 inv(w.c.d, w.c.n);
        v.c = v.c * inv;
        for (auto& fp : v.f) fp.c = fp.c * inv;
      } else {
        return v;
      }
    }
  }

  ExpVal expExpr() {
    ExpVal v = expTerm();
    for (;;) {
      if (eat('+')) {
        ExpVal w = expTerm();
        v.c = v.c + w.c;
        for (auto& fp : w.f) v.addSym(fp.sym, fp.c);
      } else if (eat('-')) {
        ExpVal w = expTerm();
        v.c = v.c - w.c;
        for (auto& fp : w.f) v.addSym(fp.sym, -fp.c);
      } else {
        return v;
      }
    }
  }

  ExpVal exponent() {
    if (eat('(')) {
      ExpVal v = expExpr();
      expect(')');
      return v;
    }
    ExpVal v;
    v.c = Rat64(smallInt());
    return v;
  }

  // ---- value language ----

  RatFunc applyPow(const RatFunc& base, const ExpVal& e) {
    if (e.f.empty() && e.c.isInt()) return base.pow(e.c.n);
    if (!base.den.empty() || !base.num.isMonomial() || base.num.lead().c != 1)
      fail("fractional or formal exponent requires a coefficient-one monomial base");
    Mono r;
    for (const auto& ge : base.num.lead().m.g) {
      GenExp o;
      o.gen = ge.gen;
      Rat64 scaled = Rat64(ge.e2) * e.c;
      if (!scaled.isInt()) fail("exponent leaves the half-integer lattice");
      o.e2 = scaled.n;
      if (!ge.f.empty() && !e.f.empty()) fail("product of two formal exponents");
      for (const auto& fp : ge.f) {
        Rat64 c = fp.c * e.c;
        if (!c.isZero()) o.f.push_back({fp.sym, c});
      }
      for (const auto& fp : e.f) {
        Rat64 c = Rat64(ge.e2, 2) * fp.c;
        if (!c.isZero()) o.f.push_back({fp.sym, c});
      }
      if (!o.trivial()) r.g.push_back(o);
    }
    return RatFunc::fromMono(r);
  }

  RatFunc atom() {
    if (eat('(')) {
      RatFunc v = expr();
      expect(')');
      return v;
    }
    if (atIdent()) {
      std::string name = ident();
      if (peek() == '[') {
        i++;
        long node = smallInt();
        long row = 1;
        if (eat(',')) row = smallInt();
        expect(']');
        int id;
        if (name == "x") id = gX((int)node, (int)row);
        else if (name == "w") id = gW((int)node, (int)row);
        else if (name == "z") id = gZ((int)node, (int)row);
        else fail("unknown variable family: " + name);
        return RatFunc::fromMono(Mono::of(id, 2));
      }
      int id = gens().findGen(name);
      if (id < 0 || gens().info(id).kind != GenKind::Param)
        fail("unknown parameter: " + name);
      return RatFunc::fromMono(Mono::of(id, 2));
    }
    return RatFunc::fromQ(Q(mpz_class(digits(), 10)));
  }

  RatFunc factor() {
    if (eat('-')) return -factor();
    RatFunc v = atom();
    while (peek() == '^') {
      i++;
      v = applyPow(v, exponent());
    }
    return v;
  }

  RatFunc term() {
    RatFunc v = factor();
    for (;;) {
      if (eat('*')) v = v * factor();
      else if (eat('/')) {
        RatFunc w = factor();
        if (w.isZero()) fail("division by zero");
        v = v / w;
      } else return v;
    }
  }

  RatFunc expr() {
    RatFunc v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }
};

}  // namespace

RatFunc parseRat(const std::string& s) {
  Parser p{s};
  RatFunc r = p.expr();
  p.ws();
  if (p.i != s.size()) p.fail("trailing input");
  return r;
}

Poly parsePoly(const std::string& s) {
  RatFunc r = parseRat(s);
  if (r.den.empty()) return r.num;
  auto [n, d] = r.canonicalPair();
  if (!d.isOne()) throw ParseError("not a polynomial: " + s);
  return n;
}

}  // namespace qsh
