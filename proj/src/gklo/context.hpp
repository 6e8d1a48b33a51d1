#pragma once

#include <string>

#include "diffop/op.hpp"

namespace qsh {

// Framing data layered over an operator algebra: N_i framing parameters per
// node, formal by default, each entering through the node's framing product
// Z_i.  W_i and W_{i,r} are the standard w-products; all three take an
// invertible monomial argument so the factors stay Laurent polynomials.
class GKLOContext {
 public:
  std::shared_ptr<const OpAlgebra> alg;
  std::vector<int> frames;
  // one value per framing slot when specialized; empty means all formal
  std::vector<std::vector<Q>> zvals;

  static GKLOContext make(std::shared_ptr<const AlgebraSpec> spec,
                          std::vector<int> rows, std::vector<int> frames);

  // cyclic-family frame counts N_i = b_i + 2 a_i - a_{i-1} - a_{i+1}
  static std::vector<int> framesFromShifts(const CartanData& cd,
                                           const std::vector<int>& rows,
                                           const std::vector<int>& b);

  int nodes() const { return alg->nodes(); }
  const AlgebraSpec& spec() const { return *alg->spec; }

  // replace the formal framing parameters by nonzero rationals
  void specializeZ(std::vector<std::vector<Q>> values);

  Poly Zi(int node, const Mono& u) const;
  Poly Wi(int node, const Mono& u) const;
  Poly Wir(int node, int r, const Mono& u) const;  // omits row r
};

// Key/value context files ('#' comments):
//   family affine            (toroidal-gl1 | toroidal-sln | quiver)
//   cartan path/to/file      (affine)
//   quiver path/to/file      (quiver)
//   n 3                      (toroidal-sln)
//   a 2 2
//   N 1 0                    (or, cyclic family only:  b 1 1 1)
//   z formal                 (or a flat list of rationals, node by node)
GKLOContext parseContextText(const std::string& text);
GKLOContext parseContextFile(const std::string& path);

}  // namespace qsh
