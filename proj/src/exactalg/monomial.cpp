#include "exactalg/monomial.hpp"

#include <algorithm>

namespace qsh {

int64_t Mono::grade2() const {
  int64_t s = 0;
  for (const auto& e : g) s += e.e2;
  return s;
}

const GenExp* Mono::find(int gen) const {
  for (const auto& e : g)
    if (e.gen == gen) return &e;
  return nullptr;
}

int64_t Mono::e2of(int gen) const {
  const GenExp* e = find(gen);
  return e ? e->e2 : 0;
}

static std::vector<FormalPart> addFormal(const std::vector<FormalPart>& a,
                                         const std::vector<FormalPart>& b) {
  std::vector<FormalPart> r;
  r.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].sym < b[j].sym)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].sym < a[i].sym) {
      r.push_back(b[j++]);
    } else {
      Rat64 c = a[i].c + b[j].c;
      if (!c.isZero()) r.push_back({a[i].sym, c});
      i++; j++;
    }
  }
  return r;
}

Mono operator*(const Mono& a, const Mono& b) {
  Mono r;
  r.g.reserve(a.g.size() + b.g.size());
  size_t i = 0, j = 0;
  while (i < a.g.size() || j < b.g.size()) {
    bool takeA = j == b.g.size() ||
                 (i < a.g.size() && genLess(a.g[i].gen, b.g[j].gen));
    bool takeB = i == a.g.size() ||
                 (j < b.g.size() && genLess(b.g[j].gen, a.g[i].gen));
    if (takeA) {
      r.g.push_back(a.g[i++]);
    } else if (takeB) {
      r.g.push_back(b.g[j++]);
    } else {
      GenExp e;
      e.gen = a.g[i].gen;
      e.e2 = a.g[i].e2 + b.g[j].e2;
      e.f = addFormal(a.g[i].f, b.g[j].f);
      if (!e.trivial()) r.g.push_back(std::move(e));
      i++; j++;
    }
  }
  return r;
}

Mono Mono::inverse() const {
  Mono r = *this;
  for (auto& e : r.g) {
    e.e2 = -e.e2;
    for (auto& fp : e.f) fp.c = -fp.c;
  }
  return r;
}

Mono Mono::pow(int64_t k) const {
  if (k == 0) return {};
  Mono r = *this;
  for (auto& e : r.g) {
    e.e2 *= k;
    for (auto& fp : e.f) fp.c = fp.c * Rat64(k);
  }
  // scaling by nonzero k keeps entries nontrivial
  return r;
}

Mono Mono::of(int gen, int64_t e2) {
  Mono m;
  if (e2 != 0) m.g.push_back({gen, e2, {}});
  return m;
}

Mono& Mono::mulGen(int gen, int64_t e2) {
  if (e2 == 0) return *this;
  *this = *this * Mono::of(gen, e2);
  return *this;
}

Mono& Mono::mulFormal(int gen, int32_t sym, Rat64 c) {
  if (c.isZero()) return *this;
  Mono m;
  GenExp e;
  e.gen = gen;
  e.f.push_back({sym, c});
  m.g.push_back(std::move(e));
  *this = *this * m;
  return *this;
}

static int formalCmp(const std::vector<FormalPart>& a,
                     const std::vector<FormalPart>& b) {
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    // missing symbol counts as coefficient 0
    if (j == b.size() || (i < a.size() && a[i].sym < b[j].sym)) {
      if (!(a[i].c < Rat64(0))) return 1;
      return -1;
    }
    if (i == a.size() || b[j].sym < a[i].sym) {
      if (!(b[j].c < Rat64(0))) return -1;
      return 1;
    }
    if (a[i].c != b[j].c) return a[i].c < b[j].c ? -1 : 1;
    i++; j++;
  }
  return 0;
}

int monoCmp(const Mono& a, const Mono& b) {
  int64_t ga = a.grade2(), gb = b.grade2();
  if (ga != gb) return ga < gb ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < a.g.size() || j < b.g.size()) {
    // next generator in canonical order present in either monomial
    if (j == b.g.size() || (i < a.g.size() && genLess(a.g[i].gen, b.g[j].gen))) {
      // a has exponent on an earlier generator, b has 0 there
      if (a.g[i].e2 != 0) return a.g[i].e2 > 0 ? 1 : -1;
      return formalCmp(a.g[i].f, {});
    }
    if (i == a.g.size() || genLess(b.g[j].gen, a.g[i].gen)) {
      if (b.g[j].e2 != 0) return b.g[j].e2 > 0 ? -1 : 1;
      return -formalCmp(b.g[j].f, {});
    }
    if (a.g[i].e2 != b.g[j].e2) return a.g[i].e2 < b.g[j].e2 ? -1 : 1;
    int fc = formalCmp(a.g[i].f, b.g[j].f);
    if (fc != 0) return fc;
    i++; j++;
  }
  return 0;
}

size_t Mono::hash() const {
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (const auto& e : g) {
    mix((uint64_t)e.gen);
    mix((uint64_t)e.e2);
    for (const auto& fp : e.f) {
      mix((uint64_t)fp.sym);
      mix((uint64_t)fp.c.n);
      mix((uint64_t)fp.c.d);
    }
  }
  return (size_t)h;
}

}  // namespace qsh
