#include "shuffle/special.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "exactalg/gens.hpp"

namespace qsh {

namespace {

Poly lin(const Q& ca, const Mono& a, const Q& cb, const Mono& b) {
  return Poly::fromTerms({{ca, a}, {cb, b}});
}

Mono xm(int node, int row) { return Mono::of(gX(node, row), 2); }

Mono pm(const char* param, int64_t e2) { return Mono::of(gParam(param), e2); }

struct SpecialShape {
  Mono cnum;          // x_{i,r} - cnum_i x_{i,s} numerator twist, per node
  RatFunc pref;       // scalar prefactor
  bool denRev;        // false: den (x_{j,s} - x_{i,r}); true: (x_{i,r} - x_{j,s})
};

ShuffleElement buildSpecial(std::shared_ptr<const AlgebraSpec> alg,
                            const std::vector<int>& k, const RatFunc& g,
                            bool etype) {
  if ((int)k.size() != alg->n)
    throw std::runtime_error("grading length does not match node count");
  if (!isSymmetric(g, k))
    throw std::runtime_error("coefficient function is not symmetric");

  RatFunc pref = RatFunc::fromQ(1);
  std::vector<Mono> twist(alg->n);
  switch (alg->family) {
    case Family::Affine: {
      for (int i = 0; i < alg->n; i++) {
        int64_t d = alg->cartan.d[i];
        int64_t ki = k[i];
        twist[i] = pm("q", -4 * d);
        Poly unit = etype ? lin(1, pm("q", 2 * d), -1, pm("q", -2 * d))
                          : lin(1, Mono::one(), -1, pm("q", 4 * d));
        pref = pref.mulPoly(unit.pow(ki));
        pref = pref * RatFunc::fromMono(
                          pm("q", (etype ? 2 : -2) * d * (ki * ki - ki)));
      }
      break;
    }
    case Family::ToroidalGL1: {
      int64_t kk = k[0];
      twist[0] = pm("q1", -2);
      Poly unit = etype ? lin(1, pm("q1", -2), -1, Mono::one())
                        : lin(1, Mono::one(), -1, pm("q1", 2));
      pref = pref.mulPoly(unit.pow(kk));
      pref = pref * RatFunc::fromMono(pm("q1", kk * kk - kk));
      pref = pref * RatFunc::fromMono(
                        pm("q2", etype ? kk * kk - kk : kk - kk * kk));
      break;
    }
    case Family::ToroidalSLN: {
      for (int i = 0; i < alg->n; i++) {
        int64_t ki = k[i];
        twist[i] = pm("q", -4);
        Poly unit = etype ? lin(1, pm("q", 2), -1, pm("q", -2))
                          : lin(1, Mono::one(), -1, pm("q", 4));
        pref = pref.mulPoly(unit.pow(ki));
        pref = pref *
               RatFunc::fromMono(pm("q", (etype ? 2 : -2) * (ki * ki - ki)));
      }
      break;
    }
    default:
      throw std::runtime_error("special elements are not defined for " +
                               alg->name());
  }

  RatFunc v = g * pref;
  for (int i = 0; i < alg->n; i++)
    for (int r = 1; r <= k[i]; r++)
      for (int s = 1; s <= k[i]; s++) {
        if (r == s) continue;
        v = v.mulPoly(lin(1, xm(i, r), -1, xm(i, s) * twist[i]));
      }

  if (alg->family == Family::ToroidalGL1) {
    for (int r = 1; r <= k[0]; r++)
      for (int s = 1; s <= k[0]; s++) {
        if (r == s) continue;
        v.pushDenFactor(lin(1, xm(0, r), -1, xm(0, s)));
      }
  } else {
    for (auto [i, j] : alg->cartan.orient)
      for (int r = 1; r <= k[i]; r++)
        for (int s = 1; s <= k[j]; s++)
          v.pushDenFactor(etype ? lin(1, xm(j, s), -1, xm(i, r))
                                : lin(1, xm(i, r), -1, xm(j, s)));
  }
  return ShuffleElement(std::move(alg), k, std::move(v));
}

}  // namespace

ShuffleElement makeE(std::shared_ptr<const AlgebraSpec> alg,
                     const std::vector<int>& k, const RatFunc& g) {
  return buildSpecial(std::move(alg), k, g, true);
}

ShuffleElement makeF(std::shared_ptr<const AlgebraSpec> alg,
                     const std::vector<int>& k, const RatFunc& g) {
  return buildSpecial(std::move(alg), k, g, false);
}

ShuffleElement makeEkn(std::shared_ptr<const AlgebraSpec> alg, int k,
                       int64_t n) {
  if (alg->n != 1 || alg->family != Family::Affine)
    throw std::runtime_error("power elements need the single-node family");
  Poly p = Poly::constant(1);
  for (int r = 1; r <= k; r++) p = p * Poly::fromMono(Mono::of(gX(0, r), 2 * n));
  for (int r = 1; r <= k; r++)
    for (int s = 1; s <= k; s++) {
      if (r == s) continue;
      p = p * lin(1, xm(0, r), -1, xm(0, s) * pm("q", -4));
    }
  return ShuffleElement(std::move(alg), {k}, RatFunc(std::move(p)));
}

ShuffleElement makeM(std::shared_ptr<const AlgebraSpec> alg, int k,
                     int64_t n) {
  ShuffleElement e = makeEkn(alg, k, 1 - k - n);
  return ShuffleElement(
      e.alg, e.k,
      e.val * RatFunc::fromMono(pm("q", 2LL * k * (k - 1))));
}

ShuffleElement bracketChainE(std::shared_ptr<const AlgebraSpec> alg, int k,
                             int64_t n) {
  ShuffleElement b = makeEkn(alg, 1, n + 2 * (k - 1));
  for (int j = k - 2; j >= 0; j--)
    b = qBracket(makeEkn(alg, 1, n + 2 * j), b, Rat64(-(k - j)));
  return b;
}

ShuffleElement bracketChainM(std::shared_ptr<const AlgebraSpec> alg, int k,
                             int64_t n) {
  ShuffleElement b = makeEkn(alg, 1, k - n - 1);
  for (int j = 2; j <= k; j++)
    b = qBracket(b, makeEkn(alg, 1, k - n - 2 * j + 1), Rat64(j));
  return b;
}

ShuffleElement makeGamma0(std::shared_ptr<const AlgebraSpec> alg, int p,
                          int k) {
  if (alg->family != Family::ToroidalSLN)
    throw std::runtime_error("row-product elements need the cyclic family");
  int n = alg->n;
  if (p < 0 || p >= n) throw std::runtime_error("marker node out of range");
  Poly g = Poly::constant(1);
  for (int i = 0; i < n; i++) {
    int64_t e = 1 + (i == 0 ? 1 : 0) - (i == p ? 1 : 0);
    for (int r = 1; r <= k; r++)
      g = g * Poly::fromMono(Mono::of(gX(i, r), 2 * e));
  }
  return makeE(std::move(alg), std::vector<int>(n, k), RatFunc(std::move(g)));
}

ShuffleElement makeFmu(std::shared_ptr<const AlgebraSpec> alg, int k,
                       const std::string& muParam) {
  if (alg->family != Family::ToroidalSLN)
    throw std::runtime_error("deformed elements need the cyclic family");
  int n = alg->n;
  Mono mu = Mono::of(gParam(muParam), 2);
  Poly g = Poly::constant(1);
  Mono prefix = Mono::one();
  for (int i = 0; i < n; i++) {
    // site weights multiply to one, so the last prefix collapses
    Mono pfx = (i == n - 1) ? Mono::one()
                            : (prefix = prefix * pm(("s" + std::to_string(i)).c_str(), 2));
    Mono rowsHere = Mono::one(), rowsNext = Mono::one();
    for (int r = 1; r <= k; r++) {
      rowsHere = rowsHere * xm(i, r);
      rowsNext = rowsNext * xm((i + 1) % n, r);
    }
    g = g * lin(1, pfx * rowsHere, -1, mu * rowsNext);
  }
  return makeE(std::move(alg), std::vector<int>(n, k), RatFunc(std::move(g)));
}

Poly schurPoly(std::vector<int> lambda, int kvars) {
  lambda.resize(kvars, 0);
  if (!std::is_sorted(lambda.rbegin(), lambda.rend()))
    throw std::runtime_error("partition must be non-increasing");
  std::vector<int> perm(kvars);
  std::iota(perm.begin(), perm.end(), 0);
  Poly alt, vand;
  auto alternant = [&](const std::vector<int>& mu) {
    std::vector<Term> terms;
    std::vector<int> pr = perm;
    do {
      int inv = 0;
      for (int a = 0; a < kvars; a++)
        for (int b = a + 1; b < kvars; b++)
          if (pr[a] > pr[b]) inv++;
      Mono m;
      for (int i = 0; i < kvars; i++)
        m = m * Mono::of(gX(0, i + 1), 2LL * mu[pr[i]]);
      terms.push_back({(inv % 2 == 0) ? Q(1) : Q(-1), m});
    } while (std::next_permutation(pr.begin(), pr.end()));
    return Poly::fromTerms(std::move(terms));
  };
  std::vector<int> mu(kvars), delta(kvars);
  for (int i = 0; i < kvars; i++) {
    delta[i] = kvars - 1 - i;
    mu[i] = lambda[i] + delta[i];
  }
  alt = alternant(mu);
  vand = alternant(delta);
  auto quo = divExact(alt, vand);
  if (!quo)
    throw std::runtime_error("alternant ratio failed to divide");
  return *quo;
}

ShuffleElement etaImage(const ShuffleElement& f) {
  if (f.alg->family != Family::ToroidalGL1)
    throw std::runtime_error("eta expects the three-parameter single-node family");
  int k = f.k[0];
  std::vector<std::pair<int, std::pair<Q, Mono>>> sub = {
      {gParam("q1"), {Q(1), pm("Q", 2)}},
      {gParam("q2"), {Q(1), pm("t", -2)}}};
  for (int r = 1; r <= k; r++)
    sub.push_back({gX(0, r), {Q(1), Mono::of(gX(0, r), -2)}});
  RatFunc v = f.val.substMono(sub);
  v = v * RatFunc::fromMono(pm("Q", -(int64_t)k * (k - 1)));
  for (int r = 1; r <= k; r++)
    for (int s = 1; s <= k; s++) {
      if (r == s) continue;
      v = v.mulPoly(lin(1, xm(0, r), -1, xm(0, s)));
      v.pushDenFactor(lin(1, xm(0, r), -1, xm(0, s) * pm("Q", -2)));
    }
  return ShuffleElement(AlgebraSpec::dfk(), {k}, std::move(v));
}

ShuffleElement etaOfE(int alpha, const RatFunc& g) {
  std::vector<std::pair<int, std::pair<Q, Mono>>> sub = {
      {gParam("q1"), {Q(1), pm("Q", 2)}},
      {gParam("q2"), {Q(1), pm("t", -2)}}};
  for (int r = 1; r <= alpha; r++)
    sub.push_back({gX(0, r), {Q(1), Mono::of(gX(0, r), -2)}});
  RatFunc v = g.substMono(sub);
  int64_t a = alpha;
  v = v * RatFunc::fromMono(pm("t", a - a * a));
  v = v.mulPoly(lin(1, pm("Q", -2), -1, Mono::one()).pow(a));
  return ShuffleElement(AlgebraSpec::dfk(), {alpha}, std::move(v));
}

}  // namespace qsh
