#pragma once

#include <memory>
#include <vector>

#include "exactalg/ratfunc.hpp"
#include "shuffle/spec.hpp"

namespace qsh {

// Per-node grading cap.  Guards against accidentally launching an enormous
// symmetrization; raise it deliberately (CLI --max-grading) when needed.
int& gradingCap();

// One term of the coset expansion of a product: everything needed to evaluate
// F(x_S) G(x_{S^c}) * prod(zeta) at a substitution point without expanding the
// zeta factors symbolically.
struct CosetTerm {
  RatFunc fg;
  std::vector<Poly> num;
  std::vector<std::pair<Poly, int>> den;

  // expand into a single rational function
  RatFunc expand() const;
  // substitute and expand; throws PoleError if a denominator factor vanishes
  RatFunc evalAt(
      const std::vector<std::pair<int, std::pair<Q, Mono>>>& assign) const;
};

class ShuffleElement {
 public:
  std::shared_ptr<const AlgebraSpec> alg;
  std::vector<int> k;
  RatFunc val;

  ShuffleElement() = default;
  ShuffleElement(std::shared_ptr<const AlgebraSpec> a, std::vector<int> kk,
                 RatFunc v);

  static ShuffleElement unit(std::shared_ptr<const AlgebraSpec> a);

  bool isZero() const { return val.isZero(); }
  int total() const;
  bool sameShape(const ShuffleElement& o) const;

  friend ShuffleElement operator+(const ShuffleElement& a,
                                  const ShuffleElement& b);
  friend ShuffleElement operator-(const ShuffleElement& a,
                                  const ShuffleElement& b);
  ShuffleElement mulQ(const Q& c) const;
  ShuffleElement mulCoeff(const RatFunc& c) const;  // x-free coefficient
  friend bool operator==(const ShuffleElement& a, const ShuffleElement& b);
  friend bool operator!=(const ShuffleElement& a, const ShuffleElement& b) {
    return !(a == b);
  }
};

// sum over independent row permutations at every node
RatFunc symmetrize(const RatFunc& f, const std::vector<int>& k);

// true when f is invariant under all same-node row transpositions
bool isSymmetric(const RatFunc& f, const std::vector<int>& k);

// coset expansion of F * G; exact as long as F and G are symmetric
std::vector<CosetTerm> cosetTerms(const ShuffleElement& F,
                                  const ShuffleElement& G);

ShuffleElement shuffleProduct(const ShuffleElement& F, const ShuffleElement& G);
inline ShuffleElement operator*(const ShuffleElement& F,
                                const ShuffleElement& G) {
  return shuffleProduct(F, G);
}

// F*G - base^{2p} G*F, where base is the family's distinguished parameter and
// p may be half-integral (base^{2p} must land on the exponent lattice)
ShuffleElement qBracket(const ShuffleElement& F, const ShuffleElement& G,
                        const Rat64& p);
inline ShuffleElement commutator(const ShuffleElement& F,
                                 const ShuffleElement& G) {
  return qBracket(F, G, Rat64(0));
}

}  // namespace qsh
