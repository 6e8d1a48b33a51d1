#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "exactalg/ratfunc.hpp"
#include "shuffle/spec.hpp"

namespace qsh {

// Row layout and shift conventions of the localized difference-operator
// algebra attached to a family: commuting variables w_{i,r} (with
// half-integer powers for the Cartan-type families), commuting invertible
// shifts D_{i,r}, and coefficients localized at the family's multiplicative
// set.  All cross relations reduce to D_{i,r} moving past powers of w_{i,r},
// picking up powers of the base parameter; quiver algebras additionally
// carry adjoined formal powers w^gamma that D crosses with the opposite
// exponent sign, matching the defining relations of that localization.
class OpAlgebra {
 public:
  std::shared_ptr<const AlgebraSpec> spec;
  std::vector<int> rows;  // a_i per node

  static std::shared_ptr<const OpAlgebra> make(
      std::shared_ptr<const AlgebraSpec> spec, std::vector<int> rows);

  int nodes() const { return (int)rows.size(); }
  int totalRows() const { return total_; }
  int flat(int node, int row) const;          // row is 1-based
  std::pair<int, int> unflat(int idx) const;  // inverse of flat

  // Doubled exponent picked up on the base parameter when one power of
  // D_{i,*} crosses one doubled-lattice unit of w_{i,*}.
  int64_t shiftPerUnit(int node) const;

  // Image under conjugation by D_{node,row}^m.
  Poly transport(const Poly& p, int node, int row, int m) const;
  RatFunc transport(const RatFunc& c, int node, int row, int m) const;

 private:
  int total_ = 0;
  std::vector<int> offset_;
};

// Exponent vector of a product of shifts, flattened by OpAlgebra::flat.
struct DKey {
  std::vector<int32_t> e;
  bool isZero() const;
  friend bool operator<(const DKey& a, const DKey& b) { return a.e < b.e; }
  friend bool operator==(const DKey& a, const DKey& b) { return a.e == b.e; }
};

// Finite sum  sum_k c_k(w) D^k  with coefficients written to the left of the
// shifts.  The term map never holds a zero coefficient, so emptiness is the
// zero test; coefficient equality is exact via cross multiplication.
class DiffOperator {
 public:
  std::shared_ptr<const OpAlgebra> alg;
  std::map<DKey, RatFunc> terms;

  DiffOperator() = default;
  explicit DiffOperator(std::shared_ptr<const OpAlgebra> a)
      : alg(std::move(a)) {}

  static DiffOperator coeff(std::shared_ptr<const OpAlgebra> a, RatFunc c);
  static DiffOperator shift(std::shared_ptr<const OpAlgebra> a, int node,
                            int row, int m);
  static DiffOperator wgen(std::shared_ptr<const OpAlgebra> a, int node,
                           int row, int64_t e2);

  bool isZero() const { return terms.empty(); }
  DKey zeroKey() const;
  void addTerm(DKey k, RatFunc c);  // merges, drops a resulting zero

  friend DiffOperator operator+(const DiffOperator& A, const DiffOperator& B);
  friend DiffOperator operator-(const DiffOperator& A, const DiffOperator& B);
  friend DiffOperator operator*(const DiffOperator& A, const DiffOperator& B);
  DiffOperator operator-() const;
  DiffOperator mulQ(const Q& c) const;
  DiffOperator mulCoeff(const RatFunc& c) const;  // multiply from the left
  friend bool operator==(const DiffOperator& A, const DiffOperator& B);
  friend bool operator!=(const DiffOperator& A, const DiffOperator& B) {
    return !(A == B);
  }

  // Canonical text form, terms in key order, shifts printed rightmost.
  std::string str() const;
};

// A*B - base^{2p} B*A; 2p must land on the integer exponent lattice of the
// base parameter.  Both products are accumulated per key and summed once
// over a shared denominator, so cancelling poles never expand.
DiffOperator opBracket(const DiffOperator& A, const DiffOperator& B, Rat64 p);

inline DiffOperator opCommutator(const DiffOperator& A,
                                 const DiffOperator& B) {
  return opBracket(A, B, Rat64(0));
}

// Macdonald difference operator D^k_a in the toroidal gl1 algebra:
// sum over k-subsets J of the rows, prod_{r in J, s notin J}
// (w_r - q2^{-1} w_s)/(w_r - w_s) prod_{r in J} D_r^{-1}.
DiffOperator macdonaldOp(std::shared_ptr<const OpAlgebra> a, int k);

}  // namespace qsh
