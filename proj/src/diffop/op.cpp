#include "diffop/op.hpp"

#include <algorithm>
#include <stdexcept>

#include "exactalg/serialize.hpp"

namespace qsh {

std::shared_ptr<const OpAlgebra> OpAlgebra::make(
    std::shared_ptr<const AlgebraSpec> spec, std::vector<int> rows) {
  if (!spec) throw std::runtime_error("OpAlgebra: null family");
  if (spec->family == Family::Dfk)
    throw std::runtime_error(
        "OpAlgebra: the divided-difference presentation has no shift "
        "realization here");
  if ((int)rows.size() != spec->n)
    throw std::runtime_error("OpAlgebra: row profile has wrong length");
  auto alg = std::make_shared<OpAlgebra>();
  alg->spec = std::move(spec);
  alg->rows = std::move(rows);
  alg->offset_.resize(alg->rows.size());
  for (size_t i = 0; i < alg->rows.size(); ++i) {
    if (alg->rows[i] < 0) throw std::runtime_error("OpAlgebra: negative row count");
    alg->offset_[i] = alg->total_;
    alg->total_ += alg->rows[i];
  }
  return alg;
}

int OpAlgebra::flat(int node, int row) const {
  if (node < 0 || node >= nodes() || row < 1 || row > rows[node])
    throw std::runtime_error("OpAlgebra: row index out of range");
  return offset_[node] + row - 1;
}

std::pair<int, int> OpAlgebra::unflat(int idx) const {
  int node = (int)(std::upper_bound(offset_.begin(), offset_.end(), idx) -
                   offset_.begin()) - 1;
  return {node, idx - offset_[node] + 1};
}

int64_t OpAlgebra::shiftPerUnit(int node) const {
  switch (spec->family) {
    case Family::Affine:
      return 2 * spec->cartan.d[node];
    case Family::ToroidalGL1:
      return 1;
    case Family::ToroidalSLN:
      return 2;
    case Family::Quiver:
      return -1;
    case Family::Dfk:
      break;
  }
  throw std::runtime_error("OpAlgebra: no shift rule for this family");
}

Poly OpAlgebra::transport(const Poly& p, int node, int row, int m) const {
  if (m == 0 || p.isZero()) return p;
  const int wid = gW(node, row);
  const int qid = spec->baseParam();
  const int64_t s = shiftPerUnit(node);
  std::vector<Term> out;
  out.reserve(p.t.size());
  for (const auto& tm : p.t) {
    const GenExp* e = tm.m.find(wid);
    if (!e) {
      out.push_back(tm);
      continue;
    }
    Mono nm = tm.m;
    if (e->e2 != 0) nm.mulGen(qid, s * m * e->e2);
    for (const auto& fp : e->f) {
      if (spec->family != Family::Quiver)
        throw std::runtime_error(
            "transport: formal variable power outside a quiver algebra");
      // adjoined formal powers cross the shift with the opposite sign of
      // the integer-lattice rule, and the pickup q^{log(t)} collapses to an
      // honest power of the edge weight t
      const QuiverEdge* edge = nullptr;
      for (const auto& qe : spec->quiver.edges)
        if (qe.logsym == fp.sym) {
          edge = &qe;
          break;
        }
      if (!edge)
        throw std::runtime_error("transport: unknown formal exponent symbol");
      Rat64 tot = fp.c * Rat64(m);
      if ((2 * tot.n) % tot.d != 0)
        throw std::runtime_error("transport: weight pickup below the "
                                 "half-integer lattice");
      nm.mulGen(edge->wparam, 2 * tot.n / tot.d);
    }
    out.push_back({tm.c, std::move(nm)});
  }
  return Poly::fromTerms(std::move(out));
}

RatFunc OpAlgebra::transport(const RatFunc& c, int node, int row, int m) const {
  if (m == 0) return c;
  RatFunc r(transport(c.num, node, row, m));
  for (const auto& f : c.den) r.pushDenFactor(transport(f.p, node, row, m), f.m);
  return r;
}

bool DKey::isZero() const {
  return std::all_of(e.begin(), e.end(), [](int32_t v) { return v == 0; });
}

DKey DiffOperator::zeroKey() const {
  DKey k;
  k.e.assign(alg->totalRows(), 0);
  return k;
}

DiffOperator DiffOperator::coeff(std::shared_ptr<const OpAlgebra> a,
                                 RatFunc c) {
  DiffOperator op(std::move(a));
  if (!c.isZero()) op.terms.emplace(op.zeroKey(), std::move(c));
  return op;
}

DiffOperator DiffOperator::shift(std::shared_ptr<const OpAlgebra> a, int node,
                                 int row, int m) {
  DiffOperator op(std::move(a));
  DKey k = op.zeroKey();
  k.e[op.alg->flat(node, row)] = m;
  op.terms.emplace(std::move(k), RatFunc(Poly::constant(1)));
  return op;
}

DiffOperator DiffOperator::wgen(std::shared_ptr<const OpAlgebra> a, int node,
                                int row, int64_t e2) {
  a->flat(node, row);  // range check
  return coeff(std::move(a), RatFunc::fromMono(Mono::of(gW(node, row), e2)));
}

void DiffOperator::addTerm(DKey k, RatFunc c) {
  if (c.isZero()) return;
  auto it = terms.find(k);
  if (it == terms.end()) {
    terms.emplace(std::move(k), std::move(c));
    return;
  }
  RatFunc merged = ratSum({it->second, c});
  if (merged.isZero())
    terms.erase(it);
  else
    it->second = std::move(merged);
}

namespace {

void requireSame(const DiffOperator& A, const DiffOperator& B) {
  if (!A.alg || !B.alg || A.alg->spec->name() != B.alg->spec->name() ||
      A.alg->rows != B.alg->rows)
    throw std::runtime_error("operator arithmetic across distinct algebras");
}

using Accum = std::map<DKey, std::vector<RatFunc>>;

// scale, if given, multiplies every product term (used for twisted brackets)
void mulInto(Accum& acc, const DiffOperator& A, const DiffOperator& B,
             const Poly* scale) {
  const OpAlgebra& alg = *A.alg;
  for (const auto& [ka, ca] : A.terms)
    for (const auto& [kb, cb] : B.terms) {
      RatFunc c = cb;
      for (int idx = 0; idx < alg.totalRows(); ++idx)
        if (ka.e[idx] != 0) {
          auto [node, row] = alg.unflat(idx);
          c = alg.transport(c, node, row, ka.e[idx]);
        }
      c = ca * c;
      if (scale) c = c.mulPoly(*scale);
      if (c.isZero()) continue;
      DKey k;
      k.e.resize(ka.e.size());
      for (size_t t = 0; t < ka.e.size(); ++t) k.e[t] = ka.e[t] + kb.e[t];
      acc[std::move(k)].push_back(std::move(c));
    }
}

DiffOperator finalize(std::shared_ptr<const OpAlgebra> alg, Accum acc) {
  DiffOperator out(std::move(alg));
  for (auto& [k, parts] : acc) {
    RatFunc c = parts.size() == 1 ? std::move(parts.front()) : ratSum(parts);
    if (!c.isZero()) out.terms.emplace(k, std::move(c));
  }
  return out;
}

}  // namespace

DiffOperator operator+(const DiffOperator& A, const DiffOperator& B) {
  requireSame(A, B);
  Accum acc;
  for (const auto& [k, c] : A.terms) acc[k].push_back(c);
  for (const auto& [k, c] : B.terms) acc[k].push_back(c);
  return finalize(A.alg, std::move(acc));
}

DiffOperator operator-(const DiffOperator& A, const DiffOperator& B) {
  return A + B.mulQ(-1);
}

DiffOperator DiffOperator::operator-() const { return mulQ(-1); }

DiffOperator operator*(const DiffOperator& A, const DiffOperator& B) {
  requireSame(A, B);
  Accum acc;
  mulInto(acc, A, B, nullptr);
  return finalize(A.alg, std::move(acc));
}

DiffOperator DiffOperator::mulQ(const Q& c) const {
  DiffOperator out(alg);
  if (c == 0) return out;
  for (const auto& [k, v] : terms) out.terms.emplace(k, v.mulQ(c));
  return out;
}

DiffOperator DiffOperator::mulCoeff(const RatFunc& c) const {
  DiffOperator out(alg);
  if (c.isZero()) return out;
  for (const auto& [k, v] : terms) {
    RatFunc nv = c * v;
    if (!nv.isZero()) out.terms.emplace(k, std::move(nv));
  }
  return out;
}

bool operator==(const DiffOperator& A, const DiffOperator& B) {
  requireSame(A, B);
  if (A.terms.size() != B.terms.size()) return false;
  auto ia = A.terms.begin();
  auto ib = B.terms.begin();
  for (; ia != A.terms.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first)) return false;
    if (ia->second != ib->second) return false;
  }
  return true;
}

std::string DiffOperator::str() const {
  if (terms.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms) {
    if (!s.empty()) s += " + ";
    s += ratToString(c);
    for (int idx = 0; idx < alg->totalRows(); ++idx)
      if (k.e[idx] != 0) {
        auto [node, row] = alg->unflat(idx);
        s += " D[" + std::to_string(node) + "," + std::to_string(row) + "]";
        if (k.e[idx] != 1) s += "^" + std::to_string(k.e[idx]);
      }
  }
  return s;
}

DiffOperator opBracket(const DiffOperator& A, const DiffOperator& B, Rat64 p) {
  requireSame(A, B);
  Rat64 e2 = Rat64(4) * p;
  if (e2.d != 1)
    throw std::runtime_error("opBracket: twist exponent off the lattice");
  Poly scale =
      Poly::fromMono(Mono::of(A.alg->spec->baseParam(), e2.n), -1);
  Accum acc;
  mulInto(acc, A, B, nullptr);
  mulInto(acc, B, A, &scale);
  return finalize(A.alg, std::move(acc));
}

DiffOperator macdonaldOp(std::shared_ptr<const OpAlgebra> a, int k) {
  if (a->spec->family != Family::ToroidalGL1)
    throw std::runtime_error("macdonaldOp: needs the toroidal gl1 algebra");
  const int n = a->totalRows();
  if (k < 0 || k > n) throw std::runtime_error("macdonaldOp: bad order");
  const int q2 = gParam("q2");
  auto w = [](int r) { return Mono::of(gW(0, r), 2); };
  DiffOperator out(a);
  std::vector<int> J(k);
  for (int i = 0; i < k; ++i) J[i] = i + 1;
  while (true) {
    RatFunc c(Poly::constant(1));
    DKey key;
    key.e.assign(n, 0);
    for (int r : J) key.e[a->flat(0, r)] = -1;
    for (int r : J)
      for (int s = 1; s <= n; ++s) {
        if (std::find(J.begin(), J.end(), s) != J.end()) continue;
        Poly num = Poly::fromTerms(
            {{1, w(r)}, {-1, w(s) * Mono::of(q2, -2)}});
        c = c.mulPoly(num);
        c.pushDenFactor(Poly::fromTerms({{1, w(r)}, {-1, w(s)}}));
      }
    out.addTerm(std::move(key), std::move(c));
    // next k-subset of {1..n} in lexicographic order
    int i = k - 1;
    while (i >= 0 && J[i] == n - k + i + 1) --i;
    if (i < 0) break;
    ++J[i];
    for (int j = i + 1; j < k; ++j) J[j] = J[j - 1] + 1;
  }
  return out;
}

}  // namespace qsh
