#pragma once

#include "shuffle/element.hpp"

namespace qsh {

// distinguished elements built from a symmetric coefficient function g;
// defined for the affine and toroidal families
ShuffleElement makeE(std::shared_ptr<const AlgebraSpec> alg,
                     const std::vector<int>& k, const RatFunc& g);
ShuffleElement makeF(std::shared_ptr<const AlgebraSpec> alg,
                     const std::vector<int>& k, const RatFunc& g);

// single-node power elements x^n prod (x_r - q^{-2} x_s) and their relatives
ShuffleElement makeEkn(std::shared_ptr<const AlgebraSpec> alg, int k,
                       int64_t n);
ShuffleElement makeM(std::shared_ptr<const AlgebraSpec> alg, int k, int64_t n);

// iterated twisted brackets that rebuild E_{k,n} and M_{k,n} from degree one
ShuffleElement bracketChainE(std::shared_ptr<const AlgebraSpec> alg, int k,
                             int64_t n);
ShuffleElement bracketChainM(std::shared_ptr<const AlgebraSpec> alg, int k,
                             int64_t n);

// cyclic-family elements: row-product insertions marked at nodes 0 and p
ShuffleElement makeGamma0(std::shared_ptr<const AlgebraSpec> alg, int p, int k);
// deformed variant with a formal marker parameter and site weights s_i
// (the weights multiply to one; the last is eliminated)
ShuffleElement makeFmu(std::shared_ptr<const AlgebraSpec> alg, int k,
                       const std::string& muParam);

// Schur polynomial s_lambda(x_{0,1},...,x_{0,kvars}) via the alternant ratio
Poly schurPoly(std::vector<int> lambda, int kvars);

// the inversion isomorphism from the three-parameter single-node family to
// its divided-difference presentation (q1 -> Q, q2 -> 1/t, x -> 1/x)
ShuffleElement etaImage(const ShuffleElement& f);
// closed form of the image of makeE(gl1, {alpha}, g)
ShuffleElement etaOfE(int alpha, const RatFunc& g);

}  // namespace qsh
