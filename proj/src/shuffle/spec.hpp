#pragma once

#include <memory>
#include <string>
#include <vector>

#include "exactalg/ratfunc.hpp"
#include "shuffle/cartan.hpp"

namespace qsh {

enum class Family { Affine, ToroidalGL1, ToroidalSLN, Quiver, Dfk };

// zeta_{ij}(z/w) with concrete monomial arguments, returned as factor lists
// so that products of many zeta's can be expanded in a controlled order.
// num entries may be Laurent; den entries are (factor, multiplicity) pairs
// meant for RatFunc::pushDenFactor.
struct ZetaParts {
  std::vector<Poly> num;
  std::vector<std::pair<Poly, int>> den;
};

// One specialization realizing a wheel: substitute each listed x-generator by
// the given monomial (an auxiliary variable times parameter powers) and the
// cleared numerator must vanish.  `unsupported` marks quiver weight groups of
// multiplicity > 1, where only the divisibility form of the condition applies.
struct WheelInstance {
  std::string desc;
  std::vector<std::pair<int, Mono>> subst;
  bool unsupported = false;
};

class AlgebraSpec {
 public:
  Family family = Family::Affine;
  int n = 0;  // number of nodes
  CartanData cartan;
  QuiverData quiver;

  const std::string& name() const { return name_; }

  bool zetaTrivial(int i, int j) const;
  ZetaParts zeta(int i, int j, const Mono& z, const Mono& w) const;

  // Denominator factors of the graded component for grading k, with
  // multiplicities, in a fixed canonical order.
  std::vector<std::pair<Poly, int>> polePattern(const std::vector<int>& k) const;

  // All wheel specializations applicable at grading k (may be empty).
  std::vector<WheelInstance> wheelInstances(const std::vector<int>& k) const;

  // Parameter whose integer powers appear in twisted brackets.
  int baseParam() const;

  static std::shared_ptr<const AlgebraSpec> affine(CartanData cd);
  static std::shared_ptr<const AlgebraSpec> sl2();
  static std::shared_ptr<const AlgebraSpec> toroidalGL1();
  static std::shared_ptr<const AlgebraSpec> toroidalSLN(int nodes);
  static std::shared_ptr<const AlgebraSpec> quiverAlg(QuiverData qd);
  static std::shared_ptr<const AlgebraSpec> dfk();

  // Selector strings: "affine:<cartan-file>", "toroidal-gl1",
  // "toroidal-sln:<n>", "quiver:<quiver-file>", "dfk".
  static std::shared_ptr<const AlgebraSpec> fromName(const std::string& sel);

 private:
  std::string name_;
};

}  // namespace qsh
