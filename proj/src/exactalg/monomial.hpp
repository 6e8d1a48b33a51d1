#pragma once

#include <cstdint>
#include <vector>

#include "exactalg/gens.hpp"
#include "exactalg/rat64.hpp"

namespace qsh {

// One adjoined-symbol contribution to an exponent: coefficient c on symbol sym.
struct FormalPart {
  int32_t sym;
  Rat64 c;
  friend bool operator==(const FormalPart& a, const FormalPart& b) {
    return a.sym == b.sym && a.c == b.c;
  }
  // arbitrary strict order so parts can key ordered containers
  friend bool operator<(const FormalPart& a, const FormalPart& b) {
    if (a.sym != b.sym) return a.sym < b.sym;
    if (a.c.n != b.c.n) return a.c.n < b.c.n;
    return a.c.d < b.c.d;
  }
};

// Exponent of a single generator: a half-integer stored on the doubled
// lattice (e2 = twice the exponent) plus a rational combination of adjoined
// exponent symbols.  The entry is trivial iff e2 == 0 and f is empty.
struct GenExp {
  int32_t gen;
  int64_t e2 = 0;
  std::vector<FormalPart> f;  // sorted by sym, no zero coefficients

  bool trivial() const { return e2 == 0 && f.empty(); }
  friend bool operator==(const GenExp& a, const GenExp& b) {
    return a.gen == b.gen && a.e2 == b.e2 && a.f == b.f;
  }
};

// A monomial: sparse exponent vector over the generator registry, entries
// sorted by the canonical generator order, no trivial entries.
struct Mono {
  std::vector<GenExp> g;

  bool isOne() const { return g.empty(); }
  int64_t grade2() const;  // sum of doubled exponents (formal parts grade 0)

  const GenExp* find(int gen) const;
  int64_t e2of(int gen) const;

  Mono inverse() const;
  Mono pow(int64_t k) const;

  friend Mono operator*(const Mono& a, const Mono& b);
  friend bool operator==(const Mono& a, const Mono& b) { return a.g == b.g; }
  friend bool operator!=(const Mono& a, const Mono& b) { return !(a.g == b.g); }

  size_t hash() const;

  // builders
  static Mono one() { return {}; }
  static Mono of(int gen, int64_t e2);
  Mono& mulGen(int gen, int64_t e2);            // in place, re-sorts
  Mono& mulFormal(int gen, int32_t sym, Rat64 c);
};

// Canonical monomial order: graded (by grade2), ties broken lexicographically
// over generators in canonical order, higher exponent on an earlier generator
// winning; formal parts compared last, per generator.  Returns <0, 0, >0.
int monoCmp(const Mono& a, const Mono& b);
inline bool monoLess(const Mono& a, const Mono& b) { return monoCmp(a, b) < 0; }

struct MonoHash {
  size_t operator()(const Mono& m) const { return m.hash(); }
};

}  // namespace qsh
