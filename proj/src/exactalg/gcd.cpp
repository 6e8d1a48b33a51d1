#include <algorithm>
#include <map>
#include <stdexcept>

#include "exactalg/poly.hpp"

// Multivariate gcd via content / primitive-part recursion with a primitive
// pseudo-remainder sequence in a chosen main variable.  Exact and
// deterministic; no modular arithmetic.  Monomials are units in the Laurent
// ring, so results are normalized to zero monomial content, integer coprime
// coefficients, positive leading coefficient.

namespace qsh {

namespace {

Poly normalizeGcdResult(const Poly& p) {
  if (p.isZero()) return p;
  Poly r = p.mulTerm(1, p.monoContent().inverse());
  return r.primitiveQ();
}

// degree in v measured on the doubled lattice (one v^(1/2) = one step)
int64_t degIn(const Poly& p, int v) { return p.degree2(v); }

// coefficient of v^(k/2) with v removed
Poly coeffOf(const Poly& p, int v, int64_t k) {
  std::vector<Term> out;
  for (const auto& tm : p.t) {
    if (tm.m.e2of(v) != k) continue;
    Term nt = tm;
    Mono strip = Mono::of(v, -k);
    nt.m = nt.m * strip;
    out.push_back(std::move(nt));
  }
  return Poly::fromTerms(std::move(out));
}

Poly mulByVar(const Poly& p, int v, int64_t k) {
  return p.mulTerm(1, Mono::of(v, k));
}

Poly gcdCore(Poly a, Poly b);

Poly contentIn(const Poly& p, int v) {
  Poly c;
  for (int64_t k = p.lowDegree2(v); k <= p.degree2(v); k++) {
    Poly cf = coeffOf(p, v, k);
    if (cf.isZero()) continue;
    c = gcdCore(c, cf);
    if (c.isConstant()) break;
  }
  return c;
}

Poly prem(const Poly& f, const Poly& g, int v) {
  int64_t df = degIn(f, v), dg = degIn(g, v);
  Poly lcG = coeffOf(g, v, dg);
  Poly r = f;
  int64_t e = df - dg + 1;
  while (!r.isZero() && degIn(r, v) >= dg) {
    int64_t dr = degIn(r, v);
    Poly lcR = coeffOf(r, v, dr);
    r = r * lcG - mulByVar(lcR * g, v, dr - dg);
    e--;
  }
  if (e > 0) {
    Poly scale = Poly::constant(1);
    for (int64_t i = 0; i < e; i++) scale = scale * lcG;
    r = r * scale;
  }
  return r;
}

Poly gcdCore(Poly a, Poly b) {
  if (a.isZero()) return normalizeGcdResult(b);
  if (b.isZero()) return normalizeGcdResult(a);
  a = normalizeGcdResult(a);
  b = normalizeGcdResult(b);
  if (a.isConstant() || b.isConstant()) return Poly::constant(1);
  if (a == b) return a;
  std::vector<int> ga, gb;
  a.listGens(ga);
  b.listGens(gb);
  std::vector<int> common;
  std::set_intersection(ga.begin(), ga.end(), gb.begin(), gb.end(),
                        std::back_inserter(common), genLess);
  if (common.empty()) return Poly::constant(1);
  // quick exits: one divides the other (frequent after arithmetic)
  if (a.size() <= b.size()) {
    if (divExact(b, a)) return a;
  } else if (divExact(a, b)) {
    return b;
  }
  int v = common[0];
  int64_t best = INT64_MAX;
  for (int g : common) {
    int64_t s = std::max(degIn(a, g), degIn(b, g));
    if (s < best) { best = s; v = g; }
  }
  Poly contA = contentIn(a, v), contB = contentIn(b, v);
  Poly cg = gcdCore(contA, contB);
  auto dividedBy = [](const Poly& p, const Poly& d) {
    if (d.isOne()) return p;
    auto q = divExact(p, d);
    if (!q) throw std::runtime_error("gcd: content division failed");
    return *q;
  };
  Poly F = dividedBy(a, contA), G = dividedBy(b, contB);
  if (degIn(F, v) < degIn(G, v)) std::swap(F, G);
  // primitive PRS
  while (true) {
    Poly R = prem(F, G, v);
    if (R.isZero()) break;
    if (degIn(R, v) == 0) {
      G = Poly::constant(1);
      break;
    }
    F = G;
    G = normalizeGcdResult(R);
    Poly cont = contentIn(G, v);
    G = dividedBy(G, cont);
    if (degIn(F, v) < degIn(G, v)) std::swap(F, G);
  }
  Poly ppg = dividedBy(G, contentIn(G, v));
  return normalizeGcdResult(cg * ppg);
}

// split a formal-exponent-bearing polynomial into formal-free pieces grouped
// by the formal signature of their monomials
std::vector<Poly> formalPieces(const Poly& p) {
  std::map<std::vector<std::pair<int32_t, std::vector<FormalPart>>>,
           std::vector<Term>>
      groups;
  for (const auto& tm : p.t) {
    std::vector<std::pair<int32_t, std::vector<FormalPart>>> sig;
    Mono stripped;
    for (const auto& e : tm.m.g) {
      if (!e.f.empty()) sig.push_back({e.gen, e.f});
      GenExp ne;
      ne.gen = e.gen;
      ne.e2 = e.e2;
      if (!ne.trivial()) stripped.g.push_back(ne);
    }
    groups[sig].push_back({tm.c, stripped});
  }
  std::vector<Poly> out;
  for (auto& kv : groups) out.push_back(Poly::fromTerms(std::move(kv.second)));
  return out;
}

}  // namespace

Poly gcdPoly(const Poly& a, const Poly& b) {
  if (a.hasFormal() || b.hasFormal()) {
    // Formal exponent symbols enter only through invertible monomial factors,
    // so common divisors in the mixed case are found among the formal-free
    // signature pieces of both inputs.
    Poly g;
    for (const Poly& piece : formalPieces(a)) g = gcdCore(g, piece);
    for (const Poly& piece : formalPieces(b)) g = gcdCore(g, piece);
    return g;
  }
  return gcdCore(a, b);
}

}  // namespace qsh
