#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "exactalg/poly.hpp"

namespace qsh {

// Raised when a substitution lands on a zero of a denominator factor that did
// not cancel symbolically; carries the vanishing factor.
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& what) : std::runtime_error(what) {}
};

struct Factor {
  Poly p;   // zero monomial content, leading coefficient 1, non-constant
  int m;    // multiplicity >= 1
};

// Exact rational function num / prod(den factors).  The denominator is kept
// as a multiset of normalized factors: arithmetic cancels factor-by-factor
// via exact division, which avoids multivariate gcd on the hot paths.  The
// representation is not forced to lowest terms at every step; equality and
// zero tests are exact regardless (cross multiplication), and canonicalPair()
// produces the unique reduced form (gcd-reduced, denominator with leading
// coefficient 1 and zero monomial content), which serialization uses.
class RatFunc {
public:
  Poly num;
  std::vector<Factor> den;  // sorted by factor order, distinct factors

  RatFunc() = default;
  explicit RatFunc(Poly n) : num(std::move(n)) {}
  static RatFunc fromQ(const Q& c) { return RatFunc(Poly::constant(c)); }
  static RatFunc fromMono(const Mono& m, const Q& c = 1) {
    return RatFunc(Poly::fromMono(m, c));
  }
  // num / den with full normalization to the canonical reduced form
  static RatFunc quotient(const Poly& n, const Poly& d);

  bool isZero() const { return num.isZero(); }
  bool isOne() const { return den.empty() && num.isOne(); }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b);
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b);
  RatFunc operator-() const;
  friend bool operator==(const RatFunc& a, const RatFunc& b);
  friend bool operator!=(const RatFunc& a, const RatFunc& b) {
    return !(a == b);
  }

  RatFunc mulQ(const Q& c) const;
  RatFunc mulPoly(const Poly& p) const;
  RatFunc inverse() const;
  RatFunc pow(int64_t k) const;

  // divide by one more denominator factor (normalizes f, folds units into num)
  void pushDenFactor(Poly f, int mult = 1);
  // cancel denominator factors into num where exact division succeeds
  void compact();

  Poly denExpanded() const;
  // unique reduced form (num, den)
  std::pair<Poly, Poly> canonicalPair() const;
  // replace the representation by its canonical form
  void canonicalize();

  RatFunc substMono(
      const std::vector<std::pair<int, std::pair<Q, Mono>>>& assign) const;
  // general substitution gen -> rational function
  RatFunc substitute(const std::vector<std::pair<int, RatFunc>>& assign) const;

  size_t termCount() const;
};

// deterministic total order on polynomials (used to sort factor lists)
int polyCmp(const Poly& a, const Poly& b);

// Sum of many rational functions over one shared denominator: the union of
// the factored denominators is built first, every numerator is scaled by its
// missing factors, and the numerators are added once.  Far cheaper than
// folding operator+ when the parts share most of their poles, as coset
// expansions do.  The result is compacted but not gcd-reduced.
RatFunc ratSum(const std::vector<RatFunc>& parts);

}  // namespace qsh
