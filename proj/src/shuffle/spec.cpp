#include "shuffle/spec.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "exactalg/gens.hpp"

namespace qsh {

namespace {

Poly lin(const Q& ca, const Mono& a, const Q& cb, const Mono& b) {
  return Poly::fromTerms({{ca, a}, {cb, b}});
}

Mono xm(int node, int row) { return Mono::of(gX(node, row), 2); }

Mono pm(const char* param, int64_t e2) { return Mono::of(gParam(param), e2); }

}  // namespace

bool AlgebraSpec::zetaTrivial(int i, int j) const {
  switch (family) {
    case Family::Affine:
      return i != j && cartan.c[i][j] == 0;
    case Family::ToroidalSLN: {
      int diff = ((j - i) % n + n) % n;
      return diff != 0 && diff != 1 && diff != n - 1;
    }
    case Family::Quiver: {
      if (i == j) return false;
      for (const auto& e : quiver.edges)
        if ((e.src == i && e.dst == j) || (e.src == j && e.dst == i))
          return false;
      return true;
    }
    case Family::ToroidalGL1:
    case Family::Dfk:
      return false;
  }
  return true;
}

ZetaParts AlgebraSpec::zeta(int i, int j, const Mono& z, const Mono& w) const {
  ZetaParts out;
  switch (family) {
    case Family::Affine: {
      if (i != j && cartan.c[i][j] == 0) return out;
      // (z - q_i^{-c_ij} w)/(z - w) with q_i = q^{d_i}
      int64_t e2 = -2LL * cartan.d[i] * cartan.c[i][j];
      out.num.push_back(lin(1, z, -1, w * Mono::of(gParam("q"), e2)));
      out.den.push_back({lin(1, z, -1, w), 1});
      return out;
    }
    case Family::ToroidalGL1: {
      // (z - q1^{-1}w)(z - q2^{-1}w)(z - q3^{-1}w)/(z-w)^3, q3 = (q1 q2)^{-1}
      out.num.push_back(lin(1, z, -1, w * pm("q1", -2)));
      out.num.push_back(lin(1, z, -1, w * pm("q2", -2)));
      out.num.push_back(lin(1, z, -1, w * pm("q1", 2) * pm("q2", 2)));
      out.den.push_back({lin(1, z, -1, w), 3});
      return out;
    }
    case Family::ToroidalSLN: {
      int diff = ((j - i) % n + n) % n;
      if (diff == 0) {
        out.num.push_back(lin(1, z, -1, w * pm("q", -4)));
        out.den.push_back({lin(1, z, -1, w), 1});
      } else if (diff == 1) {
        out.num.push_back(lin(1, z * pm("d", -2), -1, w * pm("q", 2)));
        out.den.push_back({lin(1, z, -1, w), 1});
      } else if (diff == n - 1) {
        out.num.push_back(lin(1, z, -1, w * pm("q", 2) * pm("d", -2)));
        out.den.push_back({lin(1, z, -1, w), 1});
      }
      return out;
    }
    case Family::Quiver: {
      if (i == j) {
        out.num.push_back(lin(1, z * pm("q", -2), -1, w));
        out.den.push_back({lin(1, z, -1, w), 1});
      }
      for (const auto& e : quiver.edges) {
        Mono t2 = Mono::of(e.wparam, 2);
        if (e.src == i && e.dst == j)
          out.num.push_back(lin(1, Mono::of(e.wparam, -2), -1, z * w.inverse()));
        if (e.src == j && e.dst == i)
          out.num.push_back(
              lin(1, Mono::one(), -1, z.inverse() * w * pm("q", -2) * t2));
      }
      return out;
    }
    case Family::Dfk: {
      // (1 - t x)(1 - Q t^{-1}x)/((1 - x)(1 - Q x)) at x = z/w, scaled by w^2
      out.num.push_back(lin(1, w, -1, z * pm("t", 2)));
      out.num.push_back(lin(1, w, -1, z * pm("Q", 2) * pm("t", -2)));
      out.den.push_back({lin(1, w, -1, z), 1});
      out.den.push_back({lin(1, w, -1, z * pm("Q", 2)), 1});
      return out;
    }
  }
  return out;
}

std::vector<std::pair<Poly, int>> AlgebraSpec::polePattern(
    const std::vector<int>& k) const {
  std::vector<std::pair<Poly, int>> out;
  switch (family) {
    case Family::Affine:
      for (int i = 0; i < n; i++)
        for (int j = i + 1; j < n; j++) {
          if (!cartan.adjacent(i, j)) continue;
          for (int r = 1; r <= k[i]; r++)
            for (int s = 1; s <= k[j]; s++)
              out.push_back({lin(1, xm(i, r), -1, xm(j, s)), 1});
        }
      return out;
    case Family::ToroidalGL1:
      for (int r = 1; r <= k[0]; r++)
        for (int s = r + 1; s <= k[0]; s++)
          out.push_back({lin(1, xm(0, r), -1, xm(0, s)), 2});
      return out;
    case Family::ToroidalSLN:
      for (int i = 0; i < n; i++) {
        int j = (i + 1) % n;
        for (int r = 1; r <= k[i]; r++)
          for (int s = 1; s <= k[j]; s++)
            out.push_back({lin(1, xm(i, r), -1, xm(j, s)), 1});
      }
      return out;
    case Family::Quiver:
      return out;
    case Family::Dfk:
      for (int r = 1; r <= k[0]; r++)
        for (int s = 1; s <= k[0]; s++) {
          if (r == s) continue;
          out.push_back({lin(1, xm(0, r), -1, xm(0, s) * pm("Q", -2)), 1});
        }
      return out;
  }
  return out;
}

std::vector<WheelInstance> AlgebraSpec::wheelInstances(
    const std::vector<int>& k) const {
  std::vector<WheelInstance> out;
  Mono aux = Mono::of(gZ(0, 1), 2);
  switch (family) {
    case Family::Affine: {
      for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
          if (!cartan.adjacent(i, j)) continue;
          int rows = 1 - cartan.c[i][j];
          if (k[i] < rows || k[j] < 1) continue;
          WheelInstance wi;
          wi.desc = "i=" + std::to_string(i) + " j=" + std::to_string(j);
          for (int r = 1; r <= rows; r++)
            wi.subst.push_back(
                {gX(i, r), aux * pm("q", 4LL * cartan.d[i] * (r - 1))});
          wi.subst.push_back(
              {gX(j, 1), aux * pm("q", -2LL * cartan.d[i] * cartan.c[i][j])});
          out.push_back(std::move(wi));
        }
      return out;
    }
    case Family::ToroidalGL1:
    case Family::Dfk: {
      if (k[0] < 3) return out;
      // {x1/x2, x2/x3, x3/x1} = {p0, p1, p2} over all arrangements
      std::vector<Mono> p;
      std::vector<std::string> pn;
      if (family == Family::ToroidalGL1) {
        p = {pm("q1", 2), pm("q2", 2), pm("q1", -2) * pm("q2", -2)};
        pn = {"q1", "q2", "q3"};
      } else {
        p = {pm("Q", 2), pm("t", -2), pm("t", 2) * pm("Q", -2)};
        pn = {"Q", "1/t", "t/Q"};
      }
      int idx[3] = {0, 1, 2};
      std::sort(idx, idx + 3);
      do {
        WheelInstance wi;
        wi.desc = "ratios (" + pn[idx[0]] + "," + pn[idx[1]] + "," + pn[idx[2]] + ")";
        wi.subst.push_back({gX(0, 1), aux * p[idx[0]] * p[idx[1]]});
        wi.subst.push_back({gX(0, 2), aux * p[idx[1]]});
        wi.subst.push_back({gX(0, 3), aux});
        out.push_back(std::move(wi));
      } while (std::next_permutation(idx, idx + 3));
      return out;
    }
    case Family::ToroidalSLN: {
      for (int i = 0; i < n; i++)
        for (int eps : {1, -1}) {
          int j = ((i + eps) % n + n) % n;
          if (k[i] < 2 || k[j] < 1) continue;
          WheelInstance wi;
          wi.desc = "i=" + std::to_string(i) +
                    (eps == 1 ? " eps=+1" : " eps=-1");
          wi.subst.push_back({gX(i, 1), aux * pm("q", 4)});
          wi.subst.push_back({gX(j, 1), aux * pm("q", 2) * pm("d", -2LL * eps)});
          wi.subst.push_back({gX(i, 2), aux});
          out.push_back(std::move(wi));
        }
      return out;
    }
    case Family::Quiver: {
      // doubled edge set: every arrow plus its reverse with weight q/t_e
      struct Arrow {
        int src, dst;
        Mono weight;
        std::string desc;
      };
      std::map<std::pair<int, int>, std::vector<Arrow>> groups;
      for (const auto& e : quiver.edges) {
        Mono t2 = Mono::of(e.wparam, 2);
        groups[{e.src, e.dst}].push_back(
            {e.src, e.dst, t2, e.weight});
        groups[{e.dst, e.src}].push_back(
            {e.dst, e.src, pm("q", 2) * t2.inverse(), "q/" + e.weight});
      }
      for (auto& [key, arrows] : groups) {
        auto [i, j] = key;
        bool applies = (i == j) ? k[i] >= 3 : (k[i] >= 2 && k[j] >= 1);
        if (!applies) continue;
        for (size_t a = 0; a < arrows.size(); a++) {
          bool dup = false;
          for (size_t b = 0; b < arrows.size(); b++)
            if (b != a && monoCmp(arrows[a].weight, arrows[b].weight) == 0)
              dup = true;
          WheelInstance wi;
          wi.desc = "edge " + arrows[a].desc + " (" + std::to_string(i) +
                    "->" + std::to_string(j) + ")";
          if (dup) {
            wi.desc += " multiplicity>1";
            wi.unsupported = true;
            out.push_back(std::move(wi));
            continue;
          }
          // x_{i,a} = q t_e^{-1} x_{j,b} = q x_{i,c}
          wi.subst.push_back({gX(i, 1), aux * pm("q", 2)});
          if (i == j) {
            wi.subst.push_back({gX(i, 2), aux * arrows[a].weight});
            wi.subst.push_back({gX(i, 3), aux});
          } else {
            wi.subst.push_back({gX(j, 1), aux * arrows[a].weight});
            wi.subst.push_back({gX(i, 2), aux});
          }
          out.push_back(std::move(wi));
        }
      }
      return out;
    }
  }
  return out;
}

int AlgebraSpec::baseParam() const {
  switch (family) {
    case Family::ToroidalGL1:
      return gParam("q1");
    case Family::Dfk:
      return gParam("Q");
    default:
      return gParam("q");
  }
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::affine(CartanData cd) {
  cd.validate();
  auto sp = std::make_shared<AlgebraSpec>();
  sp->family = Family::Affine;
  sp->n = cd.n;
  sp->cartan = std::move(cd);
  sp->name_ = "affine";
  return sp;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::sl2() {
  return affine(cartanSL2());
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::toroidalGL1() {
  auto sp = std::make_shared<AlgebraSpec>();
  sp->family = Family::ToroidalGL1;
  sp->n = 1;
  sp->name_ = "toroidal-gl1";
  return sp;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::toroidalSLN(int nodes) {
  auto sp = std::make_shared<AlgebraSpec>();
  sp->family = Family::ToroidalSLN;
  sp->n = nodes;
  sp->cartan = cartanCyclic(nodes);
  sp->name_ = "toroidal-sln:" + std::to_string(nodes);
  return sp;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::quiverAlg(QuiverData qd) {
  qd.validate();
  auto sp = std::make_shared<AlgebraSpec>();
  sp->family = Family::Quiver;
  sp->n = qd.n;
  sp->quiver = std::move(qd);
  sp->name_ = "quiver";
  return sp;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::dfk() {
  auto sp = std::make_shared<AlgebraSpec>();
  sp->family = Family::Dfk;
  sp->n = 1;
  sp->name_ = "dfk";
  return sp;
}

std::shared_ptr<const AlgebraSpec> AlgebraSpec::fromName(
    const std::string& sel) {
  auto colon = sel.find(':');
  std::string head = sel.substr(0, colon);
  std::string tail =
      colon == std::string::npos ? std::string() : sel.substr(colon + 1);
  if (head == "affine") {
    if (tail.empty())
      throw std::runtime_error("affine family needs a cartan file: affine:<path>");
    return affine(parseCartanFile(tail));
  }
  if (head == "toroidal-gl1") return toroidalGL1();
  if (head == "toroidal-sln") {
    if (tail.empty())
      throw std::runtime_error("toroidal-sln needs a rank: toroidal-sln:<n>");
    return toroidalSLN(std::stoi(tail));
  }
  if (head == "quiver") {
    if (tail.empty())
      throw std::runtime_error("quiver family needs a file: quiver:<path>");
    return quiverAlg(parseQuiverFile(tail));
  }
  if (head == "dfk") return dfk();
  throw std::runtime_error("unknown algebra family '" + sel + "'");
}

}  // namespace qsh
