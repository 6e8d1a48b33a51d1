#include "exactalg/ratfunc.hpp"

#include <algorithm>

#include "exactalg/serialize.hpp"

namespace qsh {

int polyCmp(const Poly& a, const Poly& b) {
  if (a.t.size() != b.t.size()) return a.t.size() < b.t.size() ? -1 : 1;
  for (size_t i = 0; i < a.t.size(); i++) {
    int mc = monoCmp(a.t[i].m, b.t[i].m);
    if (mc != 0) return mc;
    int cc = cmp(a.t[i].c, b.t[i].c);
    if (cc != 0) return cc;
  }
  return 0;
}

void RatFunc::pushDenFactor(Poly f, int mult) {
  if (mult <= 0) {
    if (mult == 0) return;
    throw std::runtime_error("pushDenFactor: negative multiplicity");
  }
  if (f.isZero()) throw PoleError("division by zero polynomial");
  if (num.isZero()) return;
  // normalize: strip monomial content, make leading coefficient 1; units fold
  // into the numerator
  Mono mc = f.monoContent();
  if (!mc.isOne()) f = f.mulTerm(1, mc.inverse());
  Q lc = f.lead().c;
  if (lc != 1) f = f.mulQ(1 / lc);
  // unit adjustment: dividing by (lc * mc)^mult
  Q cadj = 1;
  Mono madj = Mono::one();
  for (int i = 0; i < mult; i++) {
    cadj /= lc;
    madj = madj * mc.inverse();
  }
  num = num.mulTerm(cadj, madj);
  if (f.isConstant()) return;  // after normalization this means f == 1
  auto it = std::lower_bound(
      den.begin(), den.end(), f,
      [](const Factor& fa, const Poly& p) { return polyCmp(fa.p, p) < 0; });
  if (it != den.end() && polyCmp(it->p, f) == 0) it->m += mult;
  else den.insert(it, {std::move(f), mult});
}

void RatFunc::compact() {
  if (num.isZero()) { den.clear(); return; }
  for (size_t i = 0; i < den.size();) {
    bool removed = false;
    while (den[i].m > 0) {
      auto q = divExact(num, den[i].p);
      if (!q) break;
      num = std::move(*q);
      if (--den[i].m == 0) {
        den.erase(den.begin() + i);
        removed = true;
        break;
      }
    }
    if (!removed) i++;
  }
}

Poly RatFunc::denExpanded() const {
  Poly d = Poly::constant(1);
  for (const auto& f : den)
    for (int i = 0; i < f.m; i++) d = d * f.p;
  return d;
}

RatFunc RatFunc::quotient(const Poly& n, const Poly& d) {
  if (d.isZero()) throw PoleError("division by zero polynomial");
  RatFunc r(n);
  r.pushDenFactor(d);
  r.canonicalize();
  return r;
}

RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.isZero() || b.isZero()) return RatFunc();
  RatFunc r;
  // cross-cancellation first keeps numerators small
  Poly na = a.num, nb = b.num;
  std::vector<Factor> fa = a.den, fb = b.den;
  auto cancelInto = [](Poly& n, std::vector<Factor>& fs) {
    for (size_t i = 0; i < fs.size();) {
      bool erased = false;
      while (fs[i].m > 0) {
        auto q = divExact(n, fs[i].p);
        if (!q) break;
        n = std::move(*q);
        if (--fs[i].m == 0) {
          fs.erase(fs.begin() + i);
          erased = true;
          break;
        }
      }
      if (!erased) i++;
    }
  };
  cancelInto(na, fb);
  cancelInto(nb, fa);
  r.num = na * nb;
  // merge remaining factor multisets
  r.den.reserve(fa.size() + fb.size());
  size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    int c;
    if (i == fa.size()) c = 1;
    else if (j == fb.size()) c = -1;
    else c = polyCmp(fa[i].p, fb[j].p);
    if (c < 0) r.den.push_back(std::move(fa[i++]));
    else if (c > 0) r.den.push_back(std::move(fb[j++]));
    else {
      r.den.push_back({std::move(fa[i].p), fa[i].m + fb[j].m});
      i++; j++;
    }
  }
  return r;
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.isZero()) return b;
  if (b.isZero()) return a;
  RatFunc r;
  // denominator: factor-wise lcm; cofactors multiply the numerators
  Poly cofA = Poly::constant(1), cofB = Poly::constant(1);
  size_t i = 0, j = 0;
  while (i < a.den.size() || j < b.den.size()) {
    int c;
    if (i == a.den.size()) c = 1;
    else if (j == b.den.size()) c = -1;
    else c = polyCmp(a.den[i].p, b.den[j].p);
    if (c < 0) {
      r.den.push_back(a.den[i]);
      for (int k = 0; k < a.den[i].m; k++) cofB = cofB * a.den[i].p;
      i++;
    } else if (c > 0) {
      r.den.push_back(b.den[j]);
      for (int k = 0; k < b.den[j].m; k++) cofA = cofA * b.den[j].p;
      j++;
    } else {
      int mm = std::max(a.den[i].m, b.den[j].m);
      r.den.push_back({a.den[i].p, mm});
      for (int k = 0; k < mm - a.den[i].m; k++) cofA = cofA * a.den[i].p;
      for (int k = 0; k < mm - b.den[j].m; k++) cofB = cofB * b.den[j].p;
      i++; j++;
    }
  }
  r.num = a.num * cofA + b.num * cofB;
  if (r.num.isZero()) { r.den.clear(); return r; }
  r.compact();
  return r;
}

RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num = -r.num;
  return r;
}

RatFunc RatFunc::mulQ(const Q& c) const {
  if (c == 0) return RatFunc();
  RatFunc r = *this;
  r.num = r.num.mulQ(c);
  return r;
}

RatFunc RatFunc::mulPoly(const Poly& p) const { return *this * RatFunc(p); }

RatFunc RatFunc::inverse() const {
  if (isZero()) throw PoleError("inverse of zero");
  RatFunc r(denExpanded());
  r.pushDenFactor(num);
  return r;
}

RatFunc operator/(const RatFunc& a, const RatFunc& b) {
  return a * b.inverse();
}

RatFunc RatFunc::pow(int64_t k) const {
  if (k < 0) return inverse().pow(-k);
  RatFunc r = RatFunc::fromQ(1);
  RatFunc base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = (k >>= 1) ? base * base : RatFunc();
  }
  return r;
}

bool operator==(const RatFunc& a, const RatFunc& b) {
  if (a.isZero()) return b.isZero();
  if (b.isZero()) return false;
  // cancel shared factors, then cross-multiply the rest
  Poly cofA = Poly::constant(1), cofB = Poly::constant(1);
  size_t i = 0, j = 0;
  while (i < a.den.size() || j < b.den.size()) {
    int c;
    if (i == a.den.size()) c = 1;
    else if (j == b.den.size()) c = -1;
    else c = polyCmp(a.den[i].p, b.den[j].p);
    if (c < 0) {
      for (int k = 0; k < a.den[i].m; k++) cofB = cofB * a.den[i].p;
      i++;
    } else if (c > 0) {
      for (int k = 0; k < b.den[j].m; k++) cofA = cofA * b.den[j].p;
      j++;
    } else {
      int d = a.den[i].m - b.den[j].m;
      for (int k = 0; k < d; k++) cofB = cofB * a.den[i].p;
      for (int k = 0; k < -d; k++) cofA = cofA * b.den[j].p;
      i++; j++;
    }
  }
  return a.num * cofA == b.num * cofB;
}

std::pair<Poly, Poly> RatFunc::canonicalPair() const {
  if (num.isZero()) return {Poly(), Poly::constant(1)};
  Poly n = num, d = denExpanded();
  Poly g = gcdPoly(n, d);
  if (!g.isConstant() || !g.isOne()) {
    auto qn = divExact(n, g), qd = divExact(d, g);
    if (!qn || !qd) throw std::runtime_error("canonicalPair: gcd division failed");
    n = *qn;
    d = *qd;
  }
  // denominator: zero monomial content and leading coefficient 1
  Mono mc = d.monoContent();
  if (!mc.isOne()) {
    d = d.mulTerm(1, mc.inverse());
    n = n.mulTerm(1, mc.inverse());
  }
  Q lc = d.lead().c;
  if (lc != 1) {
    d = d.mulQ(1 / lc);
    n = n.mulQ(1 / lc);
  }
  return {std::move(n), std::move(d)};
}

void RatFunc::canonicalize() {
  auto [n, d] = canonicalPair();
  num = std::move(n);
  den.clear();
  if (!d.isOne()) pushDenFactor(std::move(d));
}

RatFunc RatFunc::substMono(
    const std::vector<std::pair<int, std::pair<Q, Mono>>>& assign) const {
  RatFunc r(num.substMono(assign));
  if (r.num.isZero() && !num.isZero()) {
    // numerator vanished under specialization: still need the denominator to
    // be nonzero for the value 0 to be legitimate
    for (const auto& f : den) {
      Poly fs = f.p.substMono(assign);
      if (fs.isZero())
        throw PoleError("pole hit: factor (" + polyToString(f.p) +
                        ") vanishes under substitution");
    }
    return RatFunc();
  }
  for (const auto& f : den) {
    Poly fs = f.p.substMono(assign);
    if (fs.isZero())
      throw PoleError("pole hit: factor (" + polyToString(f.p) +
                      ") vanishes under substitution");
    r.pushDenFactor(std::move(fs), f.m);
  }
  return r;
}

RatFunc RatFunc::substitute(
    const std::vector<std::pair<int, RatFunc>>& assign) const {
  auto evalPoly = [&](const Poly& p) {
    RatFunc acc;
    for (const auto& tm : p.t) {
      RatFunc term = RatFunc::fromQ(tm.c);
      Mono rest;
      for (const auto& e : tm.m.g) {
        const RatFunc* val = nullptr;
        for (const auto& kv : assign)
          if (kv.first == e.gen) { val = &kv.second; break; }
        if (!val) {
          rest.g.push_back(e);
          continue;
        }
        if (!e.f.empty())
          throw std::runtime_error(
              "substitute: formal exponent over a rational-function value");
        if (e.e2 % 2 != 0)
          throw std::runtime_error(
              "substitute: half-integer power of a rational-function value");
        term = term * val->pow(e.e2 / 2);
      }
      term = term * RatFunc::fromMono(rest);
      acc = acc + term;
    }
    return acc;
  };
  RatFunc r = evalPoly(num);
  for (const auto& f : den) {
    RatFunc fv = evalPoly(f.p);
    if (fv.isZero())
      throw PoleError("pole hit: factor (" + polyToString(f.p) +
                      ") vanishes under substitution");
    r = r / fv.pow(f.m);
  }
  return r;
}

size_t RatFunc::termCount() const {
  size_t n = num.size();
  for (const auto& f : den) n += f.p.size();
  return n;
}

RatFunc ratSum(const std::vector<RatFunc>& parts) {
  // union multiset of denominator factors (factor lists are sorted by polyCmp)
  std::vector<Factor> common;
  for (const auto& r : parts) {
    if (r.num.isZero()) continue;
    std::vector<Factor> merged;
    merged.reserve(common.size() + r.den.size());
    size_t i = 0, j = 0;
    while (i < common.size() || j < r.den.size()) {
      if (j == r.den.size()) { merged.push_back(common[i++]); continue; }
      if (i == common.size()) { merged.push_back(r.den[j++]); continue; }
      int c = polyCmp(common[i].p, r.den[j].p);
      if (c < 0) merged.push_back(common[i++]);
      else if (c > 0) merged.push_back(r.den[j++]);
      else {
        merged.push_back({common[i].p, std::max(common[i].m, r.den[j].m)});
        i++; j++;
      }
    }
    common = std::move(merged);
  }

  Poly total;
  for (const auto& r : parts) {
    if (r.num.isZero()) continue;
    std::vector<Poly> scale;
    size_t j = 0;
    for (const auto& cf : common) {
      int have = 0;
      if (j < r.den.size() && polyCmp(r.den[j].p, cf.p) == 0) have = r.den[j++].m;
      for (int t = have; t < cf.m; t++) scale.push_back(cf.p);
    }
    if (scale.empty()) {
      total = total + r.num;
    } else {
      scale.push_back(r.num);
      total = total + polyProd(std::move(scale));
    }
  }

  RatFunc out(std::move(total));
  for (const auto& cf : common) out.pushDenFactor(cf.p, cf.m);
  out.compact();
  return out;
}

}  // namespace qsh
