#pragma once

#include "gklo/context.hpp"
#include "shuffle/element.hpp"

namespace qsh {

// Which half of the algebra an element lives in: Plus maps through the
// Y-factors onto negative shifts, Minus through the primed Y-factors onto
// positive shifts.
enum class Half { Plus, Minus };

// Y_{i,r}(u) (Plus) or Y'_{i,r}(u) (Minus)
RatFunc yFactor(const GKLOContext& c, Half h, int node, int row,
                const Mono& u);

// Diagonal image of the node's Cartan current at argument u.  The same
// rational function serves both series directions; no expansion is taken.
RatFunc psiImage(const GKLOContext& c, int node, const Mono& u);

// Generic evaluation: sum over per-row composition tuples of Y-products,
// the element at the shifted points, and the pair weights.  Throws PoleError
// when a substitution lands on a denominator zero that did not cancel.
// Compositions are processed in parallel when threads > 1; the reduction
// order is fixed, so results do not depend on the thread count.
DiffOperator phiHat(const GKLOContext& c, Half h, const ShuffleElement& E,
                    int threads = 1);

// Image of F * G evaluated coset term by coset term, never expanding the
// product element itself.
DiffOperator phiHatProduct(const GKLOContext& c, Half h,
                           const ShuffleElement& F, const ShuffleElement& G,
                           int threads = 1);

// Mode image of the node's generating current (Plus: e-modes, Minus:
// f-modes), assembled directly from the displayed assignment rather than
// through the composition sum.
DiffOperator generatorImage(const GKLOContext& c, Half h, int node, int64_t n);

// Subset-sum closed form of the image of makeE (Plus) or makeF (Minus);
// defined for the affine and toroidal families.  Returns the zero operator
// when some k_i exceeds a_i.
DiffOperator closedFormImage(const GKLOContext& c, Half h,
                             const std::vector<int>& k, const RatFunc& g);

// k-th Macdonald operator on a rows; inverted gives the variant with both
// parameters inverted (positive shifts).
DiffOperator macdonaldOperator(int k, int a, bool inverted = false);

}  // namespace qsh
