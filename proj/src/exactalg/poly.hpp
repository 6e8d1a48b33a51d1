#pragma once

#include <gmpxx.h>

#include <map>
#include <optional>
#include <vector>

#include "exactalg/monomial.hpp"

namespace qsh {

using Q = mpq_class;

struct Term {
  Q c;
  Mono m;
};

// Multivariate Laurent polynomial over Q with half-integer exponents (stored
// doubled) and formal exponent symbols.  Terms are kept sorted descending in
// the canonical monomial order with no zero coefficients and no duplicate
// monomials; that normal form makes equality structural.
class Poly {
public:
  std::vector<Term> t;

  Poly() = default;
  static Poly zero() { return {}; }
  static Poly constant(const Q& c);
  static Poly fromMono(const Mono& m, const Q& c = 1);
  static Poly gen(int id, int64_t e2 = 2);
  static Poly fromTerms(std::vector<Term> terms);  // normalizes

  bool isZero() const { return t.empty(); }
  bool isConstant() const { return t.empty() || (t.size() == 1 && t[0].m.isOne()); }
  bool isMonomial() const { return t.size() == 1; }
  bool isOne() const;
  size_t size() const { return t.size(); }

  const Term& lead() const { return t.front(); }

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator-(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
  Poly operator-() const;

  Poly mulQ(const Q& c) const;
  Poly mulTerm(const Q& c, const Mono& m) const;
  Poly pow(int64_t k) const;

  // Componentwise minimum exponent vector over all terms (the monomial
  // content in the Laurent ring); one() for constants.
  Mono monoContent() const;
  // Positive rational content; primitive part has integer coprime
  // coefficients and positive leading coefficient.
  Q contentQ() const;
  Poly primitiveQ() const;

  int64_t degree2(int gen) const;     // max doubled exponent of gen
  int64_t lowDegree2(int gen) const;  // min doubled exponent of gen
  void listGens(std::vector<int>& out) const;  // gens appearing, sorted, deduped
  bool hasFormal() const;

  // Simultaneous substitution gen -> coeff * mono for the listed generators.
  // Exponent arithmetic stays on the doubled lattice; raising a nontrivial
  // coefficient to a genuinely half-integer power is an error.
  Poly substMono(const std::vector<std::pair<int, std::pair<Q, Mono>>>& assign) const;

  // Exact division; nullopt if divisor does not divide (Laurent semantics:
  // divisibility of primitive parts, monomial factors are units).
  friend std::optional<Poly> divExact(const Poly& a, const Poly& b);
};

// Multivariate gcd, exact and deterministic: monomial and rational content
// split off, then primitive-PRS (subresultant) recursion over a main
// variable.  Result is primitive with positive leading coefficient and zero
// monomial content; gcd of anything with zero is the other input.
Poly gcdPoly(const Poly& a, const Poly& b);

// Product of many polynomials, multiplied pairwise in a balanced tree so the
// operands stay comparable in size.  Empty input gives 1.
Poly polyProd(std::vector<Poly> fs);

}  // namespace qsh
