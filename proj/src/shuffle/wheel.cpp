#include "shuffle/wheel.hpp"

namespace qsh {

const char* wheelStatusName(WheelStatus s) {
  switch (s) {
    case WheelStatus::Pass: return "pass";
    case WheelStatus::Fail: return "fail";
    case WheelStatus::Vacuous: return "vacuous";
    case WheelStatus::Unsupported: return "unsupported";
  }
  return "?";
}

WheelReport checkWheel(const ShuffleElement& f) {
  WheelReport rep;
  auto [num, den] = f.val.canonicalPair();

  Poly pole = Poly::constant(1);
  for (const auto& [p, m] : f.alg->polePattern(f.k)) pole = pole * p.pow(m);

  Poly cleared;
  if (den.isOne()) {
    cleared = num * pole;
  } else {
    auto quo = divExact(pole, den);
    if (!quo) {
      rep.membershipOk = false;
      return rep;
    }
    cleared = num * *quo;
  }

  for (const auto& wi : f.alg->wheelInstances(f.k)) {
    if (wi.unsupported) {
      rep.items.push_back({wi.desc, WheelStatus::Unsupported});
      continue;
    }
    std::vector<std::pair<int, std::pair<Q, Mono>>> assign;
    assign.reserve(wi.subst.size());
    for (const auto& [gen, m] : wi.subst) assign.push_back({gen, {Q(1), m}});
    Poly sub = cleared.substMono(assign);
    rep.items.push_back(
        {wi.desc, sub.isZero() ? WheelStatus::Pass : WheelStatus::Fail});
  }
  return rep;
}

}  // namespace qsh
