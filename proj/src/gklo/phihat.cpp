#include "gklo/phihat.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qsh {

namespace {

using Assign = std::vector<std::pair<int, std::pair<Q, Mono>>>;

Poly lin(const Q& ca, const Mono& a, const Q& cb, const Mono& b) {
  return Poly::fromMono(a, ca) + Poly::fromMono(b, cb);
}

Mono pm(const char* name, int64_t e2) { return Mono::of(gParam(name), e2); }

// nodes j carrying an oriented edge j -> i
std::vector<int> origins(const CartanData& cd, int i) {
  std::vector<int> out;
  for (const auto& e : cd.orient)
    if (e.second == i) out.push_back(e.first);
  return out;
}

// nodes j carrying an oriented edge i -> j
std::vector<int> targets(const CartanData& cd, int i) {
  std::vector<int> out;
  for (const auto& e : cd.orient)
    if (e.first == i) out.push_back(e.second);
  return out;
}

bool orientHas(const CartanData& cd, int i, int j) {
  for (const auto& e : cd.orient)
    if (e.first == i && e.second == j) return true;
  return false;
}

// Doubled exponent of the node parameter in terms of the base parameter.
int64_t qUnit(const AlgebraSpec& sp, int node) {
  if (sp.family == Family::Affine) return 2 * sp.cartan.d[node];
  return 2;
}

// The r-th tower of a composition entry m_{i,r} is evaluated at the points
// w_{i,r} q_i^{-2(p-1)} (negative direction) or w_{i,r} q_i^{2p} (positive
// direction), p = 1..m_{i,r}; the gl1 steps are single powers of q1 and the
// quiver steps single powers of q, run in the opposite direction.
Mono evalPoint(const GKLOContext& c, Half h, int node, int row, int p) {
  const AlgebraSpec& sp = c.spec();
  Mono m = Mono::of(gW(node, row), 2);
  int64_t e2 = 0;
  switch (sp.family) {
    case Family::Affine:
    case Family::ToroidalSLN: {
      int64_t u = qUnit(sp, node);
      e2 = (h == Half::Plus) ? -2 * u * (p - 1) : 2 * u * p;
      break;
    }
    case Family::ToroidalGL1:
      e2 = (h == Half::Plus) ? -2 * (int64_t)(p - 1) : 2 * (int64_t)p;
      break;
    case Family::Quiver:
      e2 = (h == Half::Plus) ? 2 * (int64_t)(p - 1) : -2 * (int64_t)p;
      break;
    default:
      throw std::invalid_argument("family has no operator image");
  }
  if (e2 != 0) m.mulGen(sp.baseParam(), e2);
  return m;
}

// multiply acc by zeta_{ij}(z/w)^{-1}
void mulZetaInv(RatFunc& acc, const AlgebraSpec& sp, int i, int j,
                const Mono& z, const Mono& w) {
  ZetaParts zp = sp.zeta(i, j, z, w);
  for (const auto& [f, m] : zp.den)
    for (int t = 0; t < m; ++t) acc = acc.mulPoly(f);
  for (const auto& f : zp.num) acc.pushDenFactor(f);
}

// multiply acc by phi(a/b)^{-1} = (a-b)^2 / ((q1^{1/2}a - q1^{-1/2}b)
// (q2^{1/2}a - q2^{-1/2}b))
void mulPhiInvGl1(RatFunc& acc, const Mono& a, const Mono& b) {
  Poly diff = lin(1, a, -1, b);
  acc = acc.mulPoly(diff);
  acc = acc.mulPoly(diff);
  acc.pushDenFactor(lin(1, a * pm("q1", 1), -1, b * pm("q1", -1)));
  acc.pushDenFactor(lin(1, a * pm("q2", 1), -1, b * pm("q2", -1)));
}

// multiply acc by the quiver pair factor phi_{ij}(a/b) =
// ((a-b)/(a q^{-1} - b))^{delta_ij} * prod_{edges i->j} (1/t_e - a/b)^{-1}
void mulPhiQuiver(RatFunc& acc, const QuiverData& qd, int i, int j,
                  const Mono& a, const Mono& b) {
  if (i == j) {
    acc = acc.mulPoly(lin(1, a, -1, b));
    acc.pushDenFactor(lin(1, a * pm("q", -2), -1, b));
  }
  for (const auto& e : qd.edges)
    if (e.src == i && e.dst == j)
      acc.pushDenFactor(lin(1, Mono::of(e.wparam, -2), -1, a * b.inverse()));
}

struct Slot {
  int node;
  int row;
  int p;
  Mono pt;
};

// All the interaction weights between evaluation points of one composition.
void applyPairWeights(const GKLOContext& c, Half h,
                      const std::vector<Slot>& slots, RatFunc& base) {
  const AlgebraSpec& sp = c.spec();
  const size_t ns = slots.size();

  // within one tower: zeta^{-1} between successive points, earlier p first
  // on the negative side and later p first on the positive side
  for (size_t A = 0; A + 1 < ns; ++A)
    for (size_t B = A + 1; B < ns; ++B) {
      const Slot& a = slots[A];
      const Slot& b = slots[B];
      if (a.node != b.node || a.row != b.row) continue;
      if (h == Half::Plus)
        mulZetaInv(base, sp, a.node, a.node, a.pt, b.pt);
      else
        mulZetaInv(base, sp, a.node, a.node, b.pt, a.pt);
      if (sp.family == Family::Quiver)
        for (const auto& e : sp.quiver.edges)
          if (e.src == a.node && e.dst == a.node)
            base = base.mulPoly(Poly::fromMono(Mono::of(e.wparam, 2)));
    }

  switch (sp.family) {
    case Family::Affine:
    case Family::ToroidalSLN: {
      const CartanData& cd = sp.cartan;
      for (size_t A = 0; A < ns; ++A)
        for (size_t B = 0; B < ns; ++B) {
          if (A == B) continue;
          const Slot& a = slots[A];
          const Slot& b = slots[B];
          if (a.node == b.node) {
            // every ordered pair of slots in distinct towers of one node
            if (a.row == b.row) continue;
            if (h == Half::Plus) {
              mulZetaInv(base, sp, a.node, a.node, a.pt, b.pt);
            } else {
              base = base.mulPoly(
                  Poly::fromMono(pm("q", -qUnit(sp, a.node))));
              mulZetaInv(base, sp, a.node, a.node, b.pt, a.pt);
            }
            continue;
          }
          if (h == Half::Plus) {
            if (orientHas(cd, b.node, a.node))
              mulZetaInv(base, sp, a.node, b.node, a.pt, b.pt);
          } else {
            if (orientHas(cd, a.node, b.node))
              mulZetaInv(base, sp, b.node, a.node, b.pt, a.pt);
          }
        }
      break;
    }
    case Family::ToroidalGL1:
      for (size_t A = 0; A < ns; ++A)
        for (size_t B = 0; B < ns; ++B) {
          if (A == B) continue;
          const Slot& a = slots[A];
          const Slot& b = slots[B];
          if (a.row == b.row) continue;
          if (h == Half::Plus)
            mulPhiInvGl1(base, a.pt, b.pt);
          else
            mulPhiInvGl1(base, b.pt, a.pt);
        }
      break;
    case Family::Quiver:
      for (size_t A = 0; A < ns; ++A)
        for (size_t B = 0; B < ns; ++B) {
          if (A == B) continue;
          const Slot& a = slots[A];
          const Slot& b = slots[B];
          if (a.node == b.node && a.row == b.row) continue;
          if (h == Half::Plus)
            mulPhiQuiver(base, sp.quiver, a.node, b.node, a.pt, b.pt);
          else
            mulPhiQuiver(base, sp.quiver, b.node, a.node, b.pt, a.pt);
        }
      break;
    default:
      break;
  }
}

// scalar prefactor of the whole image, as a monomial in the parameters
Mono globalPrefactor(const GKLOContext& c, Half h, const std::vector<int>& k) {
  const AlgebraSpec& sp = c.spec();
  Mono g;
  switch (sp.family) {
    case Family::Affine:
      if (h == Half::Plus)
        for (int i = 0; i < sp.n; ++i) {
          int64_t e = (int64_t)k[i] - (int64_t)k[i] * k[i];
          if (e != 0) g.mulGen(gParam("q"), 2 * sp.cartan.d[i] * e);
        }
      break;
    case Family::ToroidalSLN:
      if (h == Half::Plus) {
        int64_t s = 0;
        for (int ki : k) s += (int64_t)ki - (int64_t)ki * ki;
        if (s != 0) g.mulGen(gParam("q"), 2 * s);
      }
      break;
    case Family::Quiver:
      // both halves carry prod over loop edges of t_e^{(k_i - k_i^2)/2}
      for (const auto& e : sp.quiver.edges)
        if (e.src == e.dst) {
          int64_t ki = k[e.src];
          if (ki != 0 && ki != 1) g.mulGen(e.wparam, ki - ki * ki);
        }
      break;
    default:
      break;
  }
  return g;
}

// enumerate compositions of k into `parts` ordered nonnegative parts
void listCompositions(int k, int parts, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (k == 0) out.push_back({});
    return;
  }
  std::vector<int> cur(parts, 0);
  std::function<void(int, int)> rec = [&](int idx, int rem) {
    if (idx == parts - 1) {
      cur[idx] = rem;
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= rem; ++v) {
      cur[idx] = v;
      rec(idx + 1, rem - v);
    }
  };
  rec(0, k);
}

// Touch every generator the evaluation can reach.  The registry appends on
// first sight, so worker threads must only ever look generators up.
void preRegister(const GKLOContext& c, const std::vector<int>& k) {
  c.spec().baseParam();
  gParam("q");
  gParam("q1");
  gParam("q2");
  gParam("d");
  for (int i = 0; i < c.nodes(); ++i) {
    for (int r = 1; r <= c.alg->rows[i]; ++r) gW(i, r);
    for (int s = 1; s <= c.frames[i]; ++s) gZ(i, s);
    for (int t = 1; t <= k[i]; ++t) gX(i, t);
  }
}

// Shared driver: one summand per composition tuple, evaluated independently
// and folded in composition order so the result does not depend on the
// thread count.  `emit` maps the x-assignment of a composition to the value
// parts of the element being pushed through.
DiffOperator phiHatCore(
    const GKLOContext& c, Half h, const std::vector<int>& k,
    const std::function<std::vector<RatFunc>(const Assign&)>& emit,
    int threads) {
  const AlgebraSpec& sp = c.spec();
  const int n = c.nodes();
  if ((int)k.size() != n)
    throw std::invalid_argument("grading length does not match node count");
  for (int ki : k)
    if (ki < 0) throw std::invalid_argument("negative grading");
  preRegister(c, k);

  const Mono gpref = globalPrefactor(c, h, k);

  std::vector<std::vector<std::vector<int>>> comps(n);
  size_t total = 1;
  for (int i = 0; i < n; ++i) {
    listCompositions(k[i], c.alg->rows[i], comps[i]);
    total *= comps[i].size();
  }
  DiffOperator out(c.alg);
  if (total == 0) return out;  // k_i > 0 over an empty row set

  auto evalOne = [&](size_t ci) -> std::pair<DKey, std::vector<RatFunc>> {
    std::vector<const std::vector<int>*> m(n);
    size_t rest = ci;
    for (int i = 0; i < n; ++i) {
      const size_t sz = comps[i].size();
      m[i] = &comps[i][rest % sz];
      rest /= sz;
    }
    std::vector<Slot> slots;
    Assign assign;
    DKey key;
    key.e.assign(c.alg->totalRows(), 0);
    for (int i = 0; i < n; ++i) {
      int t = 0;
      for (int r = 1; r <= c.alg->rows[i]; ++r) {
        const int mr = (*m[i])[r - 1];
        key.e[c.alg->flat(i, r)] = (h == Half::Plus) ? -mr : mr;
        for (int p = 1; p <= mr; ++p) {
          Mono pt = evalPoint(c, h, i, r, p);
          slots.push_back({i, r, p, pt});
          assign.push_back({gX(i, ++t), {Q(1), pt}});
        }
      }
    }
    RatFunc base = RatFunc::fromMono(gpref);
    for (const Slot& s : slots)
      base = base * yFactor(c, h, s.node, s.row, s.pt);
    applyPairWeights(c, h, slots, base);
    std::vector<RatFunc> parts;
    for (RatFunc& v : emit(assign)) {
      if (v.isZero()) continue;
      RatFunc s = base * v;
      if (!s.isZero()) parts.push_back(std::move(s));
    }
    return {std::move(key), std::move(parts)};
  };

  std::vector<std::pair<DKey, std::vector<RatFunc>>> results(total);
  if (threads <= 1 || total <= 1) {
    for (size_t ci = 0; ci < total; ++ci) results[ci] = evalOne(ci);
  } else {
    std::vector<std::exception_ptr> errs(total);
    std::atomic<size_t> next{0};
    const int tn = (int)std::min<size_t>((size_t)threads, total);
    std::vector<std::thread> pool;
    pool.reserve(tn);
    for (int t = 0; t < tn; ++t)
      pool.emplace_back([&] {
        for (;;) {
          const size_t ci = next.fetch_add(1);
          if (ci >= total) return;
          try {
            results[ci] = evalOne(ci);
          } catch (...) {
            errs[ci] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (size_t ci = 0; ci < total; ++ci)
      if (errs[ci]) std::rethrow_exception(errs[ci]);
  }

  std::map<DKey, std::vector<RatFunc>> acc;
  for (auto& [key, parts] : results) {
    if (parts.empty()) continue;
    auto& v = acc[key];
    for (auto& p : parts) v.push_back(std::move(p));
  }
  for (auto& [key, parts] : acc) {
    RatFunc s = ratSum(parts);
    if (!s.isZero()) out.addTerm(key, std::move(s));
  }
  return out;
}

void checkElement(const GKLOContext& c, const ShuffleElement& E) {
  if (E.alg.get() != &c.spec())
    throw std::invalid_argument("element algebra does not match the context");
}

}  // namespace

RatFunc yFactor(const GKLOContext& c, Half h, int node, int row,
                const Mono& u) {
  const AlgebraSpec& sp = c.spec();
  RatFunc y = RatFunc::fromQ(1);
  switch (sp.family) {
    case Family::Affine: {
      const CartanData& cd = sp.cartan;
      const int64_t di = cd.d[node];
      Mono pref;
      if (h == Half::Plus) {
        y.pushDenFactor(lin(1, pm("q", 2 * di), -1, pm("q", -2 * di)));
        for (int t = 1; t <= c.alg->rows[node]; ++t) pref.mulGen(gW(node, t), 2);
        for (int j : origins(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t)
            pref.mulGen(gW(j, t), cd.c[j][node]);
        if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
        y = y.mulPoly(c.Zi(node, u));
        for (int j : origins(cd, node))
          for (int p = 1; p <= -cd.c[j][node]; ++p) {
            Mono arg = u;
            arg.mulGen(gParam("q"), 2 * cd.d[j] * (cd.c[j][node] + 2 * p) * -1);
            y = y.mulPoly(c.Wi(j, arg));
          }
        y.pushDenFactor(c.Wir(node, row, u));
      } else {
        y.pushDenFactor(Poly::constant(1) -
                        Poly::fromMono(pm("q", 4 * di)));
        for (int j : targets(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t)
            pref.mulGen(gW(j, t), cd.c[j][node]);
        if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
        for (int j : targets(cd, node))
          for (int p = 1; p <= -cd.c[j][node]; ++p) {
            Mono arg = u;
            arg.mulGen(gParam("q"), 2 * cd.d[j] * (cd.c[j][node] + 2 * p) * -1);
            y = y.mulPoly(c.Wi(j, arg));
          }
        Mono arg = u;
        arg.mulGen(gParam("q"), -4 * di);
        y.pushDenFactor(c.Wir(node, row, arg));
      }
      break;
    }
    case Family::ToroidalGL1: {
      const int a = c.alg->rows[0];
      if (h == Half::Plus) {
        y = RatFunc::fromQ(-1);
        y.pushDenFactor(Poly::constant(1) - Poly::fromMono(pm("q1", -2)));
        y = y.mulPoly(c.Zi(0, u));
        for (int s = 1; s <= a; ++s) {
          if (s == row) continue;
          Mono ws = Mono::of(gW(0, s), 2);
          y = y.mulPoly(lin(1, u, -1, ws * pm("q2", -2)));
          y.pushDenFactor(lin(1, u, -1, ws));
        }
      } else {
        y.pushDenFactor(Poly::constant(1) - Poly::fromMono(pm("q1", 2)));
        Mono uq = u;
        uq.mulGen(gParam("q1"), -2);
        for (int s = 1; s <= a; ++s) {
          if (s == row) continue;
          Mono ws = Mono::of(gW(0, s), 2);
          y = y.mulPoly(lin(1, uq, -1, ws * pm("q2", 2)));
          y.pushDenFactor(lin(1, uq, -1, ws));
        }
      }
      break;
    }
    case Family::ToroidalSLN: {
      const CartanData& cd = sp.cartan;
      Mono pref;
      if (h == Half::Plus) {
        y.pushDenFactor(lin(1, pm("q", 2), -1, pm("q", -2)));
        for (int t = 1; t <= c.alg->rows[node]; ++t) pref.mulGen(gW(node, t), 2);
        for (int j : origins(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t) pref.mulGen(gW(j, t), -1);
        if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
        y = y.mulPoly(c.Zi(node, u));
        for (int j : origins(cd, node)) {
          Mono arg = u;
          arg.mulGen(gParam("q"), -2);
          arg.mulGen(gParam("d"), 2 * cd.m[node][j]);
          y = y.mulPoly(c.Wi(j, arg));
        }
        y.pushDenFactor(c.Wir(node, row, u));
      } else {
        y.pushDenFactor(Poly::constant(1) - Poly::fromMono(pm("q", 4)));
        for (int j : targets(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t) pref.mulGen(gW(j, t), -1);
        if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
        for (int j : targets(cd, node)) {
          Mono arg = u;
          arg.mulGen(gParam("q"), -2);
          arg.mulGen(gParam("d"), 2 * cd.m[node][j]);
          y = y.mulPoly(c.Wi(j, arg));
        }
        Mono arg = u;
        arg.mulGen(gParam("q"), -4);
        y.pushDenFactor(c.Wir(node, row, arg));
      }
      break;
    }
    case Family::Quiver: {
      const QuiverData& qd = sp.quiver;
      Mono pref;
      Mono uinv = u.inverse();
      if (h == Half::Plus) {
        for (const auto& e : qd.edges) {
          if (e.src != node || e.dst == node) continue;
          for (int s = 1; s <= c.alg->rows[e.dst]; ++s)
            pref.mulFormal(gW(e.dst, s), e.logsym, Rat64(1));
        }
        if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
        y = y.mulPoly(c.Zi(node, u));
        for (const auto& e : qd.edges) {
          if (e.src != node) continue;
          if (e.dst != node) {
            for (int s = 1; s <= c.alg->rows[e.dst]; ++s)
              y = y.mulPoly(lin(1, Mono::of(e.wparam, -2), -1,
                                u * Mono::of(gW(e.dst, s), -2)));
          } else {
            for (int s = 1; s <= c.alg->rows[node]; ++s) {
              if (s == row) continue;
              y = y.mulPoly(lin(1, Mono::of(e.wparam, -2), -1,
                                u * Mono::of(gW(node, s), -2)));
            }
          }
        }
        for (int s = 1; s <= c.alg->rows[node]; ++s) {
          if (s == row) continue;
          y.pushDenFactor(
              lin(1, Mono::one(), -1, u * Mono::of(gW(node, s), -2)));
        }
      } else {
        for (const auto& e : qd.edges) {
          if (e.dst != node || e.src == node) continue;
          for (int s = 1; s <= c.alg->rows[e.src]; ++s)
            pref.mulFormal(gW(e.src, s), e.logsym, Rat64(-1));
        }
        if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
        for (const auto& e : qd.edges) {
          if (e.dst != node) continue;
          if (e.src != node) {
            for (int s = 1; s <= c.alg->rows[e.src]; ++s)
              y = y.mulPoly(lin(1, Mono::one(), -1,
                                Mono::of(gW(e.src, s), 2) *
                                    Mono::of(e.wparam, 2) * uinv *
                                    pm("q", -2)));
          } else {
            for (int s = 1; s <= c.alg->rows[node]; ++s) {
              if (s == row) continue;
              y = y.mulPoly(lin(1, Mono::one(), -1,
                                Mono::of(gW(node, s), 2) *
                                    Mono::of(e.wparam, 2) * uinv *
                                    pm("q", -2)));
            }
          }
        }
        for (int s = 1; s <= c.alg->rows[node]; ++s) {
          if (s == row) continue;
          y.pushDenFactor(lin(1, Mono::one(), -1,
                              Mono::of(gW(node, s), 2) * uinv * pm("q", -2)));
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("family has no operator image");
  }
  return y;
}

RatFunc psiImage(const GKLOContext& c, int node, const Mono& u) {
  const AlgebraSpec& sp = c.spec();
  RatFunc y = RatFunc::fromQ(1);
  switch (sp.family) {
    case Family::Affine: {
      const CartanData& cd = sp.cartan;
      Mono pref;
      for (int t = 1; t <= c.alg->rows[node]; ++t) pref.mulGen(gW(node, t), 2);
      for (int j = 0; j < cd.n; ++j) {
        if (!cd.adjacent(node, j)) continue;
        for (int t = 1; t <= c.alg->rows[j]; ++t)
          pref.mulGen(gW(j, t), cd.c[j][node]);
      }
      y = y.mulPoly(Poly::fromMono(pref));
      y = y.mulPoly(c.Zi(node, u));
      for (int j = 0; j < cd.n; ++j) {
        if (!cd.adjacent(node, j)) continue;
        for (int p = 1; p <= -cd.c[j][node]; ++p) {
          Mono arg = u;
          arg.mulGen(gParam("q"), 2 * cd.d[j] * (cd.c[j][node] + 2 * p) * -1);
          y = y.mulPoly(c.Wi(j, arg));
        }
      }
      y.pushDenFactor(c.Wi(node, u));
      Mono arg = u;
      arg.mulGen(gParam("q"), -4 * cd.d[node]);
      y.pushDenFactor(c.Wi(node, arg));
      break;
    }
    case Family::ToroidalGL1: {
      y = y.mulPoly(c.Zi(0, u));
      for (int r = 1; r <= c.alg->rows[0]; ++r) {
        Mono wr = Mono::of(gW(0, r), 2);
        y = y.mulPoly(lin(1, u, -1, wr * pm("q2", -2)));
        y = y.mulPoly(lin(1, u, -1, wr * (pm("q1", 2) * pm("q2", 2))));
        y.pushDenFactor(lin(1, u, -1, wr));
        y.pushDenFactor(lin(1, u, -1, wr * pm("q1", 2)));
      }
      break;
    }
    case Family::ToroidalSLN: {
      const CartanData& cd = sp.cartan;
      Mono pref;
      for (int t = 1; t <= c.alg->rows[node]; ++t) pref.mulGen(gW(node, t), 2);
      for (int j = 0; j < cd.n; ++j) {
        if (!cd.adjacent(node, j)) continue;
        for (int t = 1; t <= c.alg->rows[j]; ++t) pref.mulGen(gW(j, t), -1);
      }
      y = y.mulPoly(Poly::fromMono(pref));
      y = y.mulPoly(c.Zi(node, u));
      for (int j = 0; j < cd.n; ++j) {
        if (!cd.adjacent(node, j)) continue;
        Mono arg = u;
        arg.mulGen(gParam("q"), -2);
        arg.mulGen(gParam("d"), 2 * cd.m[node][j]);
        y = y.mulPoly(c.Wi(j, arg));
      }
      y.pushDenFactor(c.Wi(node, u));
      Mono arg = u;
      arg.mulGen(gParam("q"), -4);
      y.pushDenFactor(c.Wi(node, arg));
      break;
    }
    case Family::Quiver: {
      const QuiverData& qd = sp.quiver;
      y = RatFunc(lin(1, pm("q", -2), -1, Mono::one()));
      for (const auto& e : qd.edges) {
        if (e.src != node || e.dst != node) continue;
        y.pushDenFactor(lin(1, Mono::of(e.wparam, -2), -1, Mono::one()));
        y.pushDenFactor(
            lin(1, Mono::one(), -1, Mono::of(e.wparam, 2) * pm("q", -2)));
      }
      Mono pref;
      for (const auto& e : qd.edges) {
        if (e.src == node && e.dst != node)
          for (int s = 1; s <= c.alg->rows[e.dst]; ++s)
            pref.mulFormal(gW(e.dst, s), e.logsym, Rat64(1));
        if (e.dst == node && e.src != node)
          for (int s = 1; s <= c.alg->rows[e.src]; ++s)
            pref.mulFormal(gW(e.src, s), e.logsym, Rat64(-1));
      }
      if (!pref.isOne()) y = y.mulPoly(Poly::fromMono(pref));
      y = y.mulPoly(c.Zi(node, u));
      Mono uinv = u.inverse();
      for (const auto& e : qd.edges) {
        if (e.src == node)
          for (int s = 1; s <= c.alg->rows[e.dst]; ++s)
            y = y.mulPoly(lin(1, Mono::of(e.wparam, -2), -1,
                              u * Mono::of(gW(e.dst, s), -2)));
        if (e.dst == node)
          for (int s = 1; s <= c.alg->rows[e.src]; ++s)
            y = y.mulPoly(lin(1, Mono::one(), -1,
                              Mono::of(gW(e.src, s), 2) *
                                  Mono::of(e.wparam, 2) * uinv * pm("q", -2)));
      }
      for (int r = 1; r <= c.alg->rows[node]; ++r) {
        y.pushDenFactor(
            lin(1, Mono::one(), -1, u * Mono::of(gW(node, r), -2)));
        y.pushDenFactor(lin(1, Mono::one(), -1,
                            Mono::of(gW(node, r), 2) * uinv * pm("q", -2)));
      }
      break;
    }
    default:
      throw std::invalid_argument("family has no operator image");
  }
  return y;
}

DiffOperator phiHat(const GKLOContext& c, Half h, const ShuffleElement& E,
                    int threads) {
  checkElement(c, E);
  return phiHatCore(
      c, h, E.k,
      [&](const Assign& a) {
        std::vector<RatFunc> parts;
        RatFunc v = E.val.substMono(a);
        if (!v.isZero()) parts.push_back(std::move(v));
        return parts;
      },
      threads);
}

DiffOperator phiHatProduct(const GKLOContext& c, Half h,
                           const ShuffleElement& F, const ShuffleElement& G,
                           int threads) {
  checkElement(c, F);
  checkElement(c, G);
  const auto terms = cosetTerms(F, G);
  std::vector<int> k(F.k.size());
  for (size_t i = 0; i < k.size(); ++i) k[i] = F.k[i] + G.k[i];
  return phiHatCore(
      c, h, k,
      [&](const Assign& a) {
        std::vector<RatFunc> parts;
        parts.reserve(terms.size());
        for (const CosetTerm& t : terms) {
          RatFunc v = t.evalAt(a);
          if (!v.isZero()) parts.push_back(std::move(v));
        }
        return parts;
      },
      threads);
}

DiffOperator generatorImage(const GKLOContext& c, Half h, int node,
                            int64_t n) {
  const AlgebraSpec& sp = c.spec();
  DiffOperator out(c.alg);
  const int rows = c.alg->rows[node];
  switch (sp.family) {
    case Family::Affine: {
      const CartanData& cd = sp.cartan;
      const int64_t di = cd.d[node];
      if (h == Half::Plus) {
        RatFunc scalar = RatFunc::fromMono(pm("q", 2 * di), Q(-1));
        scalar.pushDenFactor(Poly::constant(1) -
                             Poly::fromMono(pm("q", 4 * di)));
        Mono pref;
        for (int t = 1; t <= rows; ++t) pref.mulGen(gW(node, t), 2);
        for (int j : origins(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t)
            pref.mulGen(gW(j, t), cd.c[j][node]);
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(node, r), 2);
          RatFunc term = scalar.mulPoly(Poly::fromMono(pref));
          term = term.mulPoly(Poly::fromMono(wr.pow(n)));
          term = term.mulPoly(c.Zi(node, wr));
          for (int j : origins(cd, node))
            for (int p = 1; p <= -cd.c[j][node]; ++p) {
              Mono arg = wr;
              arg.mulGen(gParam("q"),
                         2 * cd.d[j] * (cd.c[j][node] + 2 * p) * -1);
              term = term.mulPoly(c.Wi(j, arg));
            }
          term.pushDenFactor(c.Wir(node, r, wr));
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(node, r)] = -1;
          out.addTerm(std::move(key), std::move(term));
        }
      } else {
        RatFunc scalar = RatFunc::fromQ(1);
        scalar.pushDenFactor(Poly::constant(1) -
                             Poly::fromMono(pm("q", 4 * di)));
        Mono pref;
        for (int j : targets(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t)
            pref.mulGen(gW(j, t), cd.c[j][node]);
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(node, r), 2);
          Mono z = wr;
          z.mulGen(gParam("q"), 4 * di);  // delta pins z at q_i^2 w_{node,r}
          RatFunc term = scalar.mulPoly(Poly::fromMono(pref));
          term = term.mulPoly(Poly::fromMono(z.pow(n)));
          for (int j : targets(cd, node))
            for (int p = 1; p <= -cd.c[j][node]; ++p) {
              Mono arg = z;
              arg.mulGen(gParam("q"),
                         2 * cd.d[j] * (cd.c[j][node] + 2 * p) * -1);
              term = term.mulPoly(c.Wi(j, arg));
            }
          term.pushDenFactor(c.Wir(node, r, wr));
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(node, r)] = 1;
          out.addTerm(std::move(key), std::move(term));
        }
      }
      break;
    }
    case Family::ToroidalGL1: {
      if (h == Half::Plus) {
        RatFunc scalar = RatFunc::fromQ(-1);
        scalar.pushDenFactor(Poly::constant(1) -
                             Poly::fromMono(pm("q1", -2)));
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(0, r), 2);
          RatFunc term = scalar.mulPoly(Poly::fromMono(wr.pow(n)));
          term = term.mulPoly(c.Zi(0, wr));
          for (int s = 1; s <= rows; ++s) {
            if (s == r) continue;
            Mono ws = Mono::of(gW(0, s), 2);
            term = term.mulPoly(lin(1, wr, -1, ws * pm("q2", -2)));
            term.pushDenFactor(lin(1, wr, -1, ws));
          }
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(0, r)] = -1;
          out.addTerm(std::move(key), std::move(term));
        }
      } else {
        RatFunc scalar = RatFunc::fromQ(1);
        scalar.pushDenFactor(Poly::constant(1) - Poly::fromMono(pm("q1", 2)));
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(0, r), 2);
          Mono z = wr;
          z.mulGen(gParam("q1"), 2);
          RatFunc term = scalar.mulPoly(Poly::fromMono(z.pow(n)));
          for (int s = 1; s <= rows; ++s) {
            if (s == r) continue;
            Mono ws = Mono::of(gW(0, s), 2);
            term = term.mulPoly(lin(1, wr, -1, ws * pm("q2", 2)));
            term.pushDenFactor(lin(1, wr, -1, ws));
          }
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(0, r)] = 1;
          out.addTerm(std::move(key), std::move(term));
        }
      }
      break;
    }
    case Family::ToroidalSLN: {
      const CartanData& cd = sp.cartan;
      if (h == Half::Plus) {
        RatFunc scalar = RatFunc::fromMono(pm("q", 2), Q(-1));
        scalar.pushDenFactor(Poly::constant(1) - Poly::fromMono(pm("q", 4)));
        Mono pref;
        for (int t = 1; t <= rows; ++t) pref.mulGen(gW(node, t), 2);
        for (int j : origins(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t) pref.mulGen(gW(j, t), -1);
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(node, r), 2);
          RatFunc term = scalar.mulPoly(Poly::fromMono(pref));
          term = term.mulPoly(Poly::fromMono(wr.pow(n)));
          term = term.mulPoly(c.Zi(node, wr));
          for (int j : origins(cd, node)) {
            Mono arg = wr;
            arg.mulGen(gParam("q"), -2);
            arg.mulGen(gParam("d"), 2 * cd.m[node][j]);
            term = term.mulPoly(c.Wi(j, arg));
          }
          term.pushDenFactor(c.Wir(node, r, wr));
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(node, r)] = -1;
          out.addTerm(std::move(key), std::move(term));
        }
      } else {
        RatFunc scalar = RatFunc::fromQ(1);
        scalar.pushDenFactor(Poly::constant(1) - Poly::fromMono(pm("q", 4)));
        Mono pref;
        for (int j : targets(cd, node))
          for (int t = 1; t <= c.alg->rows[j]; ++t) pref.mulGen(gW(j, t), -1);
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(node, r), 2);
          Mono z = wr;
          z.mulGen(gParam("q"), 4);
          RatFunc term = scalar.mulPoly(Poly::fromMono(pref));
          term = term.mulPoly(Poly::fromMono(z.pow(n)));
          for (int j : targets(cd, node)) {
            Mono arg = z;
            arg.mulGen(gParam("q"), -2);
            arg.mulGen(gParam("d"), 2 * cd.m[node][j]);
            term = term.mulPoly(c.Wi(j, arg));
          }
          term.pushDenFactor(c.Wir(node, r, wr));
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(node, r)] = 1;
          out.addTerm(std::move(key), std::move(term));
        }
      }
      break;
    }
    case Family::Quiver: {
      const QuiverData& qd = sp.quiver;
      Mono pref;
      if (h == Half::Plus) {
        for (const auto& e : qd.edges) {
          if (e.src != node || e.dst == node) continue;
          for (int s = 1; s <= c.alg->rows[e.dst]; ++s)
            pref.mulFormal(gW(e.dst, s), e.logsym, Rat64(1));
        }
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(node, r), 2);
          RatFunc term = RatFunc::fromMono(pref * wr.pow(n));
          term = term.mulPoly(c.Zi(node, wr));
          for (const auto& e : qd.edges) {
            if (e.src != node) continue;
            if (e.dst != node) {
              for (int s = 1; s <= c.alg->rows[e.dst]; ++s)
                term = term.mulPoly(lin(1, Mono::of(e.wparam, -2), -1,
                                        wr * Mono::of(gW(e.dst, s), -2)));
            } else {
              for (int s = 1; s <= rows; ++s) {
                if (s == r) continue;
                term = term.mulPoly(lin(1, Mono::of(e.wparam, -2), -1,
                                        wr * Mono::of(gW(node, s), -2)));
              }
            }
          }
          for (int s = 1; s <= rows; ++s) {
            if (s == r) continue;
            term.pushDenFactor(
                lin(1, Mono::one(), -1, wr * Mono::of(gW(node, s), -2)));
          }
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(node, r)] = -1;
          out.addTerm(std::move(key), std::move(term));
        }
      } else {
        for (const auto& e : qd.edges) {
          if (e.dst != node || e.src == node) continue;
          for (int s = 1; s <= c.alg->rows[e.src]; ++s)
            pref.mulFormal(gW(e.src, s), e.logsym, Rat64(-1));
        }
        for (int r = 1; r <= rows; ++r) {
          Mono wr = Mono::of(gW(node, r), 2);
          Mono z = wr;
          z.mulGen(gParam("q"), -2);  // delta pins q z at w_{node,r}
          Mono wrinv = wr.inverse();
          RatFunc term = RatFunc::fromMono(pref * z.pow(n));
          for (const auto& e : qd.edges) {
            if (e.dst != node) continue;
            if (e.src != node) {
              for (int s = 1; s <= c.alg->rows[e.src]; ++s)
                term = term.mulPoly(lin(1, Mono::one(), -1,
                                        Mono::of(gW(e.src, s), 2) *
                                            Mono::of(e.wparam, 2) * wrinv));
            } else {
              for (int s = 1; s <= rows; ++s) {
                if (s == r) continue;
                term = term.mulPoly(lin(1, Mono::one(), -1,
                                        Mono::of(gW(node, s), 2) *
                                            Mono::of(e.wparam, 2) * wrinv));
              }
            }
          }
          for (int s = 1; s <= rows; ++s) {
            if (s == r) continue;
            term.pushDenFactor(lin(1, Mono::one(), -1,
                                   Mono::of(gW(node, s), 2) * wrinv));
          }
          DKey key;
          key.e.assign(c.alg->totalRows(), 0);
          key.e[c.alg->flat(node, r)] = 1;
          out.addTerm(std::move(key), std::move(term));
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("family has no operator image");
  }
  return out;
}

DiffOperator closedFormImage(const GKLOContext& c, Half h,
                             const std::vector<int>& k, const RatFunc& g) {
  const AlgebraSpec& sp = c.spec();
  const int n = c.nodes();
  if ((int)k.size() != n)
    throw std::invalid_argument("grading length does not match node count");
  for (int ki : k)
    if (ki < 0) throw std::invalid_argument("negative grading");
  if (sp.family == Family::Quiver || sp.family == Family::Dfk)
    throw std::invalid_argument("no closed-form image for this family");

  DiffOperator out(c.alg);

  // per-node k-subsets of the rows, lexicographic
  std::vector<std::vector<std::vector<int>>> subs(n);
  size_t total = 1;
  for (int i = 0; i < n; ++i) {
    const int a = c.alg->rows[i];
    if (k[i] > a) return out;  // no admissible subsets: the image is zero
    std::vector<int> cur(k[i]);
    std::function<void(int, int)> rec = [&](int idx, int lo) {
      if (idx == k[i]) {
        subs[i].push_back(cur);
        return;
      }
      for (int v = lo; v <= a - (k[i] - idx) + 1; ++v) {
        cur[idx] = v;
        rec(idx + 1, v + 1);
      }
    };
    rec(0, 1);
    total *= subs[i].size();
  }

  const CartanData& cd = sp.cartan;

  // grading-level prefactor: w powers common to every subset, and the
  // positive-direction scalar
  Mono gpref;
  switch (sp.family) {
    case Family::Affine:
      for (int i = 0; i < n; ++i) {
        int64_t e2 = 0;
        if (h == Half::Plus) {
          e2 = 2 * (int64_t)k[i];
          for (int j : targets(cd, i)) e2 += (int64_t)cd.c[i][j] * k[j];
        } else {
          for (int j : origins(cd, i)) e2 += (int64_t)cd.c[i][j] * k[j];
        }
        if (e2 != 0)
          for (int t = 1; t <= c.alg->rows[i]; ++t) gpref.mulGen(gW(i, t), e2);
      }
      if (h == Half::Minus)
        for (int i = 0; i < n; ++i) {
          int64_t e = (int64_t)k[i] - 1;
          for (int j : targets(cd, i))
            e += (int64_t)(cd.c[i][j] - 2) * k[i] * k[j];
          if (e != 0) gpref.mulGen(gParam("q"), 2 * cd.d[i] * e);
        }
      break;
    case Family::ToroidalSLN: {
      for (int i = 0; i < n; ++i) {
        int64_t e2 = 0;
        if (h == Half::Plus) {
          e2 = 2 * (int64_t)k[i];
          for (int j : targets(cd, i)) e2 -= (int64_t)k[j];
        } else {
          for (int j : origins(cd, i)) e2 -= (int64_t)k[j];
        }
        if (e2 != 0)
          for (int t = 1; t <= c.alg->rows[i]; ++t) gpref.mulGen(gW(i, t), e2);
      }
      int64_t de2 = 0;
      int64_t qe2 = 0;
      for (int i = 0; i < n; ++i) {
        const int j = (i + 1) % n;
        if (h == Half::Plus) {
          if (orientHas(cd, j, i)) de2 += 2 * (int64_t)k[i] * k[j];
        } else {
          if (orientHas(cd, i, j)) de2 += 2 * (int64_t)k[i] * k[j];
          qe2 -= 6 * (int64_t)k[i] * k[j];
        }
      }
      if (de2 != 0) gpref.mulGen(gParam("d"), de2);
      if (qe2 != 0) gpref.mulGen(gParam("q"), qe2);
      break;
    }
    default:
      break;
  }

  for (size_t ci = 0; ci < total; ++ci) {
    std::vector<const std::vector<int>*> J(n);
    size_t rest = ci;
    for (int i = 0; i < n; ++i) {
      const size_t sz = subs[i].size();
      J[i] = &subs[i][rest % sz];
      rest /= sz;
    }
    std::vector<std::vector<char>> inJ(n);
    for (int i = 0; i < n; ++i) {
      inJ[i].assign(c.alg->rows[i] + 1, 0);
      for (int r : *J[i]) inJ[i][r] = 1;
    }

    RatFunc s = RatFunc::fromMono(gpref);
    DKey key;
    key.e.assign(c.alg->totalRows(), 0);
    Assign ga;
    for (int i = 0; i < n; ++i) {
      int t = 0;
      for (int r : *J[i]) {
        key.e[c.alg->flat(i, r)] = (h == Half::Plus) ? -1 : 1;
        Mono arg = Mono::of(gW(i, r), 2);
        if (h == Half::Minus) {
          switch (sp.family) {
            case Family::Affine:
              arg.mulGen(gParam("q"), 4 * cd.d[i]);
              break;
            case Family::ToroidalGL1:
              arg.mulGen(gParam("q1"), 2);
              break;
            case Family::ToroidalSLN:
              arg.mulGen(gParam("q"), 4);
              break;
            default:
              break;
          }
        }
        ga.push_back({gX(i, ++t), {Q(1), arg}});
      }
    }

    // cross-node numerator factors along the oriented edges
    if (sp.family == Family::Affine) {
      for (int i = 0; i < n; ++i) {
        const auto& js =
            (h == Half::Plus) ? origins(cd, i) : targets(cd, i);
        for (int j : js)
          for (int r : *J[i]) {
            Mono wri = Mono::of(gW(i, r), -2);
            for (int sr = 1; sr <= c.alg->rows[j]; ++sr) {
              int lo = 1;
              int hi = -cd.c[j][i];
              if (h == Half::Plus)
                hi -= inJ[j][sr];
              else
                lo += inJ[j][sr];
              for (int p = lo; p <= hi; ++p) {
                Mono m = Mono::of(gW(j, sr), 2) * wri;
                m.mulGen(gParam("q"), 2 * cd.d[j] * (cd.c[j][i] + 2 * p));
                if (h == Half::Minus) m.mulGen(gParam("q"), -4 * cd.d[i]);
                s = s.mulPoly(lin(1, Mono::one(), -1, m));
              }
            }
          }
      }
    } else if (sp.family == Family::ToroidalSLN) {
      for (int i = 0; i < n; ++i) {
        const auto& js =
            (h == Half::Plus) ? origins(cd, i) : targets(cd, i);
        for (int j : js)
          for (int r : *J[i]) {
            Mono wri = Mono::of(gW(i, r), -2);
            for (int sr = 1; sr <= c.alg->rows[j]; ++sr) {
              if (inJ[j][sr]) continue;
              Mono m = Mono::of(gW(j, sr), 2) * wri;
              m.mulGen(gParam("q"), (h == Half::Plus) ? 2 : -2);
              m.mulGen(gParam("d"), 2 * cd.m[j][i]);
              s = s.mulPoly(lin(1, Mono::one(), -1, m));
            }
          }
      }
    } else if (sp.family == Family::ToroidalGL1) {
      const Mono qfac =
          (h == Half::Plus) ? pm("q2", -2) : pm("q2", 2);
      for (int r : *J[0]) {
        Mono wr = Mono::of(gW(0, r), 2);
        for (int sr = 1; sr <= c.alg->rows[0]; ++sr) {
          if (inJ[0][sr]) continue;
          Mono ws = Mono::of(gW(0, sr), 2);
          s = s.mulPoly(lin(1, wr, -1, ws * qfac));
          s.pushDenFactor(lin(1, wr, -1, ws));
        }
      }
    }

    // same-node denominators for the Cartan-type families
    if (sp.family != Family::ToroidalGL1) {
      for (int i = 0; i < n; ++i)
        for (int r : *J[i]) {
          Mono wri = Mono::of(gW(i, r), -2);
          for (int sr = 1; sr <= c.alg->rows[i]; ++sr) {
            if (inJ[i][sr]) continue;
            s.pushDenFactor(
                lin(1, Mono::one(), -1, Mono::of(gW(i, sr), 2) * wri));
          }
        }
    }

    RatFunc gv = g.substMono(ga);
    if (gv.isZero()) continue;
    s = s * gv;

    if (h == Half::Plus)
      for (int i = 0; i < n; ++i)
        for (int r : *J[i]) s = s.mulPoly(c.Zi(i, Mono::of(gW(i, r), 2)));

    // subset-dependent w powers
    if (sp.family != Family::ToroidalGL1) {
      for (int i = 0; i < n; ++i) {
        int64_t e2 = 2 * ((int64_t)k[i] - 1);
        const auto& js =
            (h == Half::Plus) ? origins(cd, i) : targets(cd, i);
        for (int j : js) e2 -= 2 * (int64_t)k[j];
        if (e2 == 0) continue;
        Mono m;
        for (int r : *J[i]) m.mulGen(gW(i, r), e2);
        if (!m.isOne()) s = s.mulPoly(Poly::fromMono(m));
      }
    }

    if (!s.isZero()) out.addTerm(std::move(key), std::move(s));
  }
  return out;
}

DiffOperator macdonaldOperator(int k, int a, bool inverted) {
  if (a < 0 || k < 0) throw std::invalid_argument("negative size");
  auto spec = AlgebraSpec::toroidalGL1();
  GKLOContext c = GKLOContext::make(spec, {a}, {0});
  return closedFormImage(c, inverted ? Half::Minus : Half::Plus, {k},
                         RatFunc::fromQ(1));
}

}  // namespace qsh
