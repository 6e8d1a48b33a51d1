#include "shuffle/element.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "exactalg/gens.hpp"

namespace qsh {

int& gradingCap() {
  static int cap = 6;
  return cap;
}

namespace {

using Assign = std::vector<std::pair<int, std::pair<Q, Mono>>>;

void checkGrading(const std::shared_ptr<const AlgebraSpec>& alg,
                  const std::vector<int>& k) {
  if (!alg) throw std::runtime_error("shuffle element without an algebra");
  if ((int)k.size() != alg->n)
    throw std::runtime_error("grading length does not match node count");
  for (int ki : k) {
    if (ki < 0) throw std::runtime_error("negative grading");
    if (ki > gradingCap())
      throw std::runtime_error(
          "grading " + std::to_string(ki) + " exceeds the cap " +
          std::to_string(gradingCap()) + " (raise with --max-grading)");
  }
}

// every x-variable of f must be one of x_{i,r}, r <= k_i
void checkVars(const RatFunc& f, const std::vector<int>& k) {
  auto scanPoly = [&](const Poly& p) {
    for (const auto& tm : p.t)
      for (const auto& e : tm.m.g) {
        const GenInfo& gi = gens().info(e.gen);
        if (gi.kind == GenKind::Param) continue;
        if (gi.kind != GenKind::XVar)
          throw std::runtime_error("shuffle element uses non-x variable " +
                                   gi.name);
        if (gi.node < 0 || gi.node >= (int)k.size() || gi.row < 1 ||
            gi.row > k[gi.node])
          throw std::runtime_error("shuffle element uses out-of-range " +
                                   gi.name);
      }
  };
  scanPoly(f.num);
  for (const auto& fac : f.den) scanPoly(fac.p);
}

// next lexicographic combination of size m from {1..n}; false when exhausted
bool nextCombo(std::vector<int>& c, int n) {
  int m = (int)c.size();
  for (int i = m - 1; i >= 0; i--) {
    if (c[i] < n - (m - 1 - i)) {
      c[i]++;
      for (int j = i + 1; j < m; j++) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

RatFunc CosetTerm::expand() const {
  if (fg.isZero()) return RatFunc();
  std::vector<Poly> fs = num;
  fs.push_back(fg.num);
  RatFunc r(polyProd(std::move(fs)));
  r.den = fg.den;
  for (const auto& [p, m] : den) r.pushDenFactor(p, m);
  return r;
}

RatFunc CosetTerm::evalAt(const Assign& assign) const {
  RatFunc r = fg.substMono(assign);
  for (const auto& p : num) r = r.mulPoly(p.substMono(assign));
  for (const auto& [p, m] : den) r.pushDenFactor(p.substMono(assign), m);
  return r;
}

ShuffleElement::ShuffleElement(std::shared_ptr<const AlgebraSpec> a,
                               std::vector<int> kk, RatFunc v)
    : alg(std::move(a)), k(std::move(kk)), val(std::move(v)) {
  checkGrading(alg, k);
  checkVars(val, k);
}

ShuffleElement ShuffleElement::unit(std::shared_ptr<const AlgebraSpec> a) {
  int n = a->n;
  return ShuffleElement(std::move(a), std::vector<int>(n, 0),
                        RatFunc::fromQ(1));
}

int ShuffleElement::total() const {
  return std::accumulate(k.begin(), k.end(), 0);
}

bool ShuffleElement::sameShape(const ShuffleElement& o) const {
  return alg && o.alg && alg->family == o.alg->family && k == o.k;
}

ShuffleElement operator+(const ShuffleElement& a, const ShuffleElement& b) {
  if (a.isZero() && a.total() == 0) return b;
  if (b.isZero() && b.total() == 0) return a;
  if (!a.sameShape(b))
    throw std::runtime_error("adding shuffle elements of different gradings");
  return ShuffleElement(a.alg, a.k, a.val + b.val);
}

ShuffleElement operator-(const ShuffleElement& a, const ShuffleElement& b) {
  return a + b.mulQ(-1);
}

ShuffleElement ShuffleElement::mulQ(const Q& c) const {
  return ShuffleElement(alg, k, val.mulQ(c));
}

ShuffleElement ShuffleElement::mulCoeff(const RatFunc& c) const {
  checkVars(c, std::vector<int>(k.size(), 0));
  return ShuffleElement(alg, k, val * c);
}

bool operator==(const ShuffleElement& a, const ShuffleElement& b) {
  if (a.isZero() && b.isZero()) return true;
  if (!a.sameShape(b)) return false;
  return a.val == b.val;
}

RatFunc symmetrize(const RatFunc& f, const std::vector<int>& k) {
  // odometer over tuples of per-node permutations, applied in lex order
  int n = (int)k.size();
  std::vector<std::vector<int>> perm(n);
  for (int i = 0; i < n; i++) {
    perm[i].resize(k[i]);
    std::iota(perm[i].begin(), perm[i].end(), 1);
  }
  std::vector<RatFunc> parts;
  for (;;) {
    Assign assign;
    bool identity = true;
    for (int i = 0; i < n; i++)
      for (int r = 1; r <= k[i]; r++) {
        if (perm[i][r - 1] != r) identity = false;
        assign.push_back(
            {gX(i, r), {Q(1), Mono::of(gX(i, perm[i][r - 1]), 2)}});
      }
    parts.push_back(identity ? f : f.substMono(assign));
    int i = n - 1;
    while (i >= 0 && !std::next_permutation(perm[i].begin(), perm[i].end()))
      i--;
    if (i < 0) break;
    // next_permutation already reset the exhausted tails to identity
  }
  return ratSum(parts);
}

bool isSymmetric(const RatFunc& f, const std::vector<int>& k) {
  for (int i = 0; i < (int)k.size(); i++)
    for (int r = 1; r + 1 <= k[i]; r++) {
      Assign swap = {{gX(i, r), {Q(1), Mono::of(gX(i, r + 1), 2)}},
                     {gX(i, r + 1), {Q(1), Mono::of(gX(i, r), 2)}}};
      if (f.substMono(swap) != f) return false;
    }
  return true;
}

std::vector<CosetTerm> cosetTerms(const ShuffleElement& F,
                                  const ShuffleElement& G) {
  if (!F.alg || !G.alg || F.alg->family != G.alg->family ||
      F.alg->n != G.alg->n)
    throw std::runtime_error("multiplying elements of different algebras");
  const AlgebraSpec& alg = *F.alg;
  int n = alg.n;
  std::vector<int> m(n);
  for (int i = 0; i < n; i++) {
    m[i] = F.k[i] + G.k[i];
    if (m[i] > gradingCap())
      throw std::runtime_error(
          "product grading " + std::to_string(m[i]) + " exceeds the cap " +
          std::to_string(gradingCap()) + " (raise with --max-grading)");
  }

  // per-node subsets S_i of {1..m_i} with |S_i| = F.k[i], lex order
  std::vector<std::vector<int>> S(n);
  for (int i = 0; i < n; i++) {
    S[i].resize(F.k[i]);
    std::iota(S[i].begin(), S[i].end(), 1);
  }

  std::vector<CosetTerm> out;
  for (;;) {
    std::vector<std::vector<int>> comp(n);  // complements, increasing
    for (int i = 0; i < n; i++) {
      std::vector<bool> in(m[i] + 1, false);
      for (int v : S[i]) in[v] = true;
      for (int v = 1; v <= m[i]; v++)
        if (!in[v]) comp[i].push_back(v);
    }

    Assign renF, renG;
    for (int i = 0; i < n; i++) {
      for (int r = 1; r <= F.k[i]; r++)
        renF.push_back({gX(i, r), {Q(1), Mono::of(gX(i, S[i][r - 1]), 2)}});
      for (int s = 1; s <= G.k[i]; s++)
        renG.push_back({gX(i, s), {Q(1), Mono::of(gX(i, comp[i][s - 1]), 2)}});
    }

    CosetTerm term;
    term.fg = F.val.substMono(renF) * G.val.substMono(renG);
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++) {
        if (alg.zetaTrivial(i, j)) continue;
        for (int a : S[i])
          for (int b : comp[j]) {
            ZetaParts z =
                alg.zeta(i, j, Mono::of(gX(i, a), 2), Mono::of(gX(j, b), 2));
            for (auto& p : z.num) term.num.push_back(std::move(p));
            for (auto& p : z.den) term.den.push_back(std::move(p));
          }
      }
    out.push_back(std::move(term));

    int i = n - 1;
    while (i >= 0 && !nextCombo(S[i], m[i])) {
      std::iota(S[i].begin(), S[i].end(), 1);
      i--;
    }
    if (i < 0) break;
  }
  return out;
}

ShuffleElement shuffleProduct(const ShuffleElement& F,
                              const ShuffleElement& G) {
  std::vector<int> m(F.k.size());
  for (size_t i = 0; i < m.size(); i++) m[i] = F.k[i] + G.k[i];
  if (F.isZero() || G.isZero())
    return ShuffleElement(F.alg, m, RatFunc());
  std::vector<RatFunc> parts;
  for (const CosetTerm& t : cosetTerms(F, G)) parts.push_back(t.expand());
  return ShuffleElement(F.alg, m, ratSum(parts));
}

ShuffleElement qBracket(const ShuffleElement& F, const ShuffleElement& G,
                        const Rat64& p) {
  Rat64 e2 = p * Rat64(4);
  if (e2.d != 1)
    throw std::runtime_error("bracket twist off the exponent lattice");
  std::vector<int> m(F.k.size());
  for (size_t i = 0; i < m.size(); i++) m[i] = F.k[i] + G.k[i];
  if (F.isZero() || G.isZero()) return ShuffleElement(F.alg, m, RatFunc());

  // one signed sum over the coset terms of both orders: the shared poles are
  // cleared once instead of per product
  Poly tw = Poly::fromMono(Mono::of(F.alg->baseParam(), e2.n), -1);
  std::vector<RatFunc> parts;
  for (const CosetTerm& t : cosetTerms(F, G)) parts.push_back(t.expand());
  for (const CosetTerm& t : cosetTerms(G, F))
    parts.push_back(t.expand().mulPoly(tw));
  return ShuffleElement(F.alg, m, ratSum(parts));
}

}  // namespace qsh
