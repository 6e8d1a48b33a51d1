#include "exactalg/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace qsh {

Poly Poly::constant(const Q& c) {
  Poly p;
  if (c != 0) p.t.push_back({c, Mono::one()});
  return p;
}

Poly Poly::fromMono(const Mono& m, const Q& c) {
  Poly p;
  if (c != 0) p.t.push_back({c, m});
  return p;
}

Poly Poly::gen(int id, int64_t e2) { return fromMono(Mono::of(id, e2)); }

Poly Poly::fromTerms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return monoCmp(a.m, b.m) > 0; });
  Poly p;
  p.t.reserve(terms.size());
  for (auto& tm : terms) {
    if (tm.c == 0) continue;
    if (!p.t.empty() && p.t.back().m == tm.m) {
      p.t.back().c += tm.c;
      if (p.t.back().c == 0) p.t.pop_back();
    } else {
      p.t.push_back(std::move(tm));
    }
  }
  return p;
}

bool Poly::isOne() const {
  return t.size() == 1 && t[0].m.isOne() && t[0].c == 1;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.t.size() != b.t.size()) return false;
  for (size_t i = 0; i < a.t.size(); i++)
    if (a.t[i].c != b.t[i].c || !(a.t[i].m == b.t[i].m)) return false;
  return true;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly r;
  r.t.reserve(a.t.size() + b.t.size());
  size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    int cmp;
    if (i == a.t.size()) cmp = -1;
    else if (j == b.t.size()) cmp = 1;
    else cmp = monoCmp(a.t[i].m, b.t[j].m);
    if (cmp > 0) {
      r.t.push_back(a.t[i++]);
    } else if (cmp < 0) {
      r.t.push_back(b.t[j++]);
    } else {
      Q c = a.t[i].c + b.t[j].c;
      if (c != 0) r.t.push_back({std::move(c), a.t[i].m});
      i++; j++;
    }
  }
  return r;
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& tm : r.t) tm.c = -tm.c;
  return r;
}

Poly Poly::mulQ(const Q& c) const {
  if (c == 0) return {};
  Poly r = *this;
  for (auto& tm : r.t) tm.c *= c;
  return r;
}

Poly Poly::mulTerm(const Q& c, const Mono& m) const {
  if (c == 0) return {};
  Poly r;
  r.t.reserve(t.size());
  for (const auto& tm : t) r.t.push_back({tm.c * c, tm.m * m});
  // multiplying by a fixed monomial preserves the term order
  return r;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.isZero() || b.isZero()) return {};
  if (a.isMonomial()) return b.mulTerm(a.t[0].c, a.t[0].m);
  if (b.isMonomial()) return a.mulTerm(b.t[0].c, b.t[0].m);
  if (a.t.size() * b.t.size() <= 64) {
    std::vector<Term> acc;
    acc.reserve(a.t.size() * b.t.size());
    for (const auto& ta : a.t)
      for (const auto& tb : b.t) acc.push_back({ta.c * tb.c, ta.m * tb.m});
    return Poly::fromTerms(std::move(acc));
  }
  std::unordered_map<Mono, Q, MonoHash> acc;
  acc.reserve(a.t.size() * b.t.size() / 4 + 8);
  for (const auto& ta : a.t)
    for (const auto& tb : b.t) {
      Mono m = ta.m * tb.m;
      auto it = acc.find(m);
      if (it == acc.end()) acc.emplace(std::move(m), ta.c * tb.c);
      else it->second += ta.c * tb.c;
    }
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (kv.second != 0) out.push_back({std::move(kv.second), kv.first});
  return Poly::fromTerms(std::move(out));
}

Poly Poly::pow(int64_t k) const {
  if (k < 0) throw std::runtime_error("Poly::pow: negative exponent");
  Poly r = Poly::constant(1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) r = r * base;
    base = (k >>= 1) ? base * base : Poly();
  }
  return r;
}

Mono Poly::monoContent() const {
  if (t.empty()) return Mono::one();
  if (t.size() == 1) return t[0].m;
  std::vector<int> gensHere;
  listGens(gensHere);
  Mono m;
  for (int gid : gensHere) {
    std::vector<int32_t> syms;
    for (const auto& tm : t) {
      const GenExp* e = tm.m.find(gid);
      if (e)
        for (const auto& fp : e->f) syms.push_back(fp.sym);
    }
    std::sort(syms.begin(), syms.end());
    syms.erase(std::unique(syms.begin(), syms.end()), syms.end());
    int64_t mn = 0;
    std::vector<Rat64> fmn(syms.size());
    bool first = true;
    for (const auto& tm : t) {
      const GenExp* e = tm.m.find(gid);
      int64_t e2 = e ? e->e2 : 0;
      std::vector<Rat64> fc(syms.size());
      if (e)
        for (const auto& fp : e->f) {
          auto it = std::lower_bound(syms.begin(), syms.end(), fp.sym);
          fc[it - syms.begin()] = fp.c;
        }
      if (first) {
        mn = e2;
        fmn = fc;
        first = false;
      } else {
        mn = std::min(mn, e2);
        for (size_t k = 0; k < fc.size(); k++)
          if (fc[k] < fmn[k]) fmn[k] = fc[k];
      }
    }
    GenExp e;
    e.gen = gid;
    e.e2 = mn;
    for (size_t k = 0; k < syms.size(); k++)
      if (!fmn[k].isZero()) e.f.push_back({syms[k], fmn[k]});
    if (!e.trivial()) m.g.push_back(std::move(e));
  }
  return m;
}

Q Poly::contentQ() const {
  if (t.empty()) return 0;
  mpz_class num = 0, den = 1;
  for (const auto& tm : t) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), tm.c.get_num().get_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), tm.c.get_den().get_mpz_t());
  }
  Q c(num, den);
  c.canonicalize();
  return c;
}

Poly Poly::primitiveQ() const {
  if (t.empty()) return {};
  Q c = contentQ();
  if (t[0].c < 0) c = -c;
  Poly r = *this;
  for (auto& tm : r.t) tm.c /= c;
  return r;
}

int64_t Poly::degree2(int gen) const {
  int64_t d = INT64_MIN;
  for (const auto& tm : t) d = std::max(d, tm.m.e2of(gen));
  return t.empty() ? 0 : d;
}

int64_t Poly::lowDegree2(int gen) const {
  int64_t d = INT64_MAX;
  for (const auto& tm : t) d = std::min(d, tm.m.e2of(gen));
  return t.empty() ? 0 : d;
}

void Poly::listGens(std::vector<int>& out) const {
  for (const auto& tm : t)
    for (const auto& e : tm.m.g) out.push_back(e.gen);
  std::sort(out.begin(), out.end(), genLess);
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

bool Poly::hasFormal() const {
  for (const auto& tm : t)
    for (const auto& e : tm.m.g)
      if (!e.f.empty()) return true;
  return false;
}

Poly Poly::substMono(
    const std::vector<std::pair<int, std::pair<Q, Mono>>>& assign) const {
  std::vector<Term> out;
  out.reserve(t.size());
  for (const auto& tm : t) {
    Q c = tm.c;
    Mono m;
    for (const auto& e : tm.m.g) {
      const std::pair<Q, Mono>* val = nullptr;
      for (const auto& kv : assign)
        if (kv.first == e.gen) { val = &kv.second; break; }
      if (!val) {
        Mono keep;
        keep.g.push_back(e);
        m = m * keep;
        continue;
      }
      // coefficient part: val.first ^ (e2/2)
      if (val->first != 1) {
        if (e.e2 % 2 != 0)
          throw std::runtime_error(
              "substMono: half-integer power of a non-unit coefficient");
        if (!e.f.empty())
          throw std::runtime_error(
              "substMono: formal exponent over a non-unit coefficient");
        int64_t k = e.e2 / 2;
        Q p;
        if (k >= 0) {
          mpz_pow_ui(p.get_num_mpz_t(), val->first.get_num().get_mpz_t(), k);
          mpz_pow_ui(p.get_den_mpz_t(), val->first.get_den().get_mpz_t(), k);
        } else {
          if (val->first == 0)
            throw std::runtime_error("substMono: negative power of zero");
          mpz_pow_ui(p.get_num_mpz_t(), val->first.get_den().get_mpz_t(), -k);
          mpz_pow_ui(p.get_den_mpz_t(), val->first.get_num().get_mpz_t(), -k);
        }
        p.canonicalize();
        c *= p;
      }
      // monomial part: M ^ (e2/2 + formal)
      for (const auto& me : val->second.g) {
        GenExp ne;
        ne.gen = me.gen;
        // integer part: me.e2 * e.e2 / 2 must stay on the doubled lattice
        __int128 prod = (__int128)me.e2 * e.e2;
        if (prod % 2 != 0)
          throw std::runtime_error(
              "substMono: substitution leaves the half-integer lattice");
        ne.e2 = (int64_t)(prod / 2);
        // formal part of the target exponent scales by me.e2/2
        for (const auto& fp : e.f) {
          Rat64 nc = fp.c * Rat64(me.e2, 2);
          if (!nc.isZero()) ne.f.push_back({fp.sym, nc});
        }
        // formal part of the assignment value scales by e.e2/2
        for (const auto& fp : me.f) {
          Rat64 nc = fp.c * Rat64(e.e2, 2);
          if (!nc.isZero()) {
            bool merged = false;
            for (auto& ex : ne.f)
              if (ex.sym == fp.sym) { ex.c = ex.c + nc; merged = true; break; }
            if (!merged) ne.f.push_back({fp.sym, nc});
          }
        }
        std::sort(ne.f.begin(), ne.f.end(),
                  [](const FormalPart& a, const FormalPart& b) {
                    return a.sym < b.sym;
                  });
        ne.f.erase(std::remove_if(ne.f.begin(), ne.f.end(),
                                  [](const FormalPart& fp) {
                                    return fp.c.isZero();
                                  }),
                   ne.f.end());
        if (!ne.trivial()) {
          Mono one;
          one.g.push_back(std::move(ne));
          m = m * one;
        }
      }
    }
    if (c != 0) out.push_back({std::move(c), std::move(m)});
  }
  return Poly::fromTerms(std::move(out));
}

std::optional<Poly> divExact(const Poly& a, const Poly& b) {
  if (b.isZero()) throw std::runtime_error("divExact: division by zero");
  if (a.isZero()) return Poly();
  if (b.isMonomial())
    return a.mulTerm(1 / b.t[0].c, b.t[0].m.inverse());
  // reduce to genuine polynomial division via monomial units
  Mono ca = a.monoContent(), cb = b.monoContent();
  Poly A = a.mulTerm(1, ca.inverse());
  Poly B = b.mulTerm(1, cb.inverse());
  Mono shift = ca * cb.inverse();
  Poly q;
  Poly r = A;
  const Term& lb = B.lead();
  while (!r.isZero()) {
    // quotient term candidate: lead(r) / lead(B); exponents must stay
    // admissible (no negative exponents relative to the cleared form)
    Mono qm = r.lead().m * lb.m.inverse();
    for (const auto& e : qm.g) {
      if (e.e2 < 0) return std::nullopt;
      for (const auto& fp : e.f)
        if (fp.c < Rat64(0)) return std::nullopt;
    }
    Q qc = r.lead().c / lb.c;
    Poly tq = Poly::fromMono(qm, qc);
    q = q + tq;
    r = r - B.mulTerm(qc, qm);
    if (!r.isZero() && monoCmp(r.lead().m, lb.m) < 0) return std::nullopt;
  }
  return q.mulTerm(1, shift);
}

Poly polyProd(std::vector<Poly> fs) {
  if (fs.empty()) return Poly::constant(1);
  while (fs.size() > 1) {
    std::vector<Poly> next;
    next.reserve(fs.size() / 2 + 1);
    for (size_t i = 0; i + 1 < fs.size(); i += 2)
      next.push_back(fs[i] * fs[i + 1]);
    if (fs.size() % 2) next.push_back(std::move(fs.back()));
    fs = std::move(next);
  }
  return fs[0];
}

}  // namespace qsh
