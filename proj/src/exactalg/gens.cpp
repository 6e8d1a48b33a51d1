#include "exactalg/gens.hpp"

#include <stdexcept>

namespace qsh {

static uint64_t makeKey(GenKind kind, int a, int b) {
  // kind in top bits, then node, then row; parameters use (rank, 0)
  return (uint64_t(kind) << 56) | (uint64_t(uint32_t(a + 1)) << 24) |
         uint64_t(uint32_t(b + 1));
}

GenTable::GenTable() {
  // Standard parameters registered up front in a fixed order so the canonical
  // monomial order does not depend on which algebra gets built first.
  for (const char* p : {"q", "q1", "q2", "d", "Q", "theta", "mu", "nu",
                        "s0", "s1", "s2", "t"})
    param(p);
}

int GenTable::param(const std::string& name) {
  int id = findGen(name);
  if (id >= 0) {
    if (gens_[id].kind != GenKind::Param)
      throw std::runtime_error("generator kind clash for " + name);
    return id;
  }
  GenInfo gi;
  gi.name = name;
  gi.kind = GenKind::Param;
  gi.rank = nextParamRank_++;
  gi.sortKey = makeKey(GenKind::Param, gi.rank, 0);
  gens_.push_back(gi);
  return (int)gens_.size() - 1;
}

int GenTable::var(GenKind kind, int node, int row) {
  if (kind == GenKind::Param) throw std::runtime_error("var: bad kind");
  uint64_t key = makeKey(kind, node, row);
  for (int i = 0; i < (int)gens_.size(); i++)
    if (gens_[i].sortKey == key) return i;
  GenInfo gi;
  const char* base = kind == GenKind::XVar ? "x" : kind == GenKind::WVar ? "w" : "z";
  gi.name = std::string(base) + "[" + std::to_string(node) + "," +
            std::to_string(row) + "]";
  gi.kind = kind;
  gi.node = node;
  gi.row = row;
  gi.sortKey = key;
  gens_.push_back(gi);
  return (int)gens_.size() - 1;
}

int GenTable::formalSym(const std::string& name) {
  for (int i = 0; i < (int)syms_.size(); i++)
    if (syms_[i] == name) return i;
  syms_.push_back(name);
  return (int)syms_.size() - 1;
}

int GenTable::findGen(const std::string& name) const {
  for (int i = 0; i < (int)gens_.size(); i++)
    if (gens_[i].name == name) return i;
  return -1;
}

int GenTable::findSym(const std::string& name) const {
  for (int i = 0; i < (int)syms_.size(); i++)
    if (syms_[i] == name) return i;
  return -1;
}

GenTable& gens() {
  static GenTable t;
  return t;
}

int gParam(const std::string& name) { return gens().param(name); }
int gX(int node, int row) { return gens().var(GenKind::XVar, node, row); }
int gW(int node, int row) { return gens().var(GenKind::WVar, node, row); }
int gZ(int node, int row) { return gens().var(GenKind::ZVar, node, row); }
int gSym(const std::string& name) { return gens().formalSym(name); }
const std::string& genName(int id) { return gens().info(id).name; }
bool genLess(int a, int b) { return gens().sortKey(a) < gens().sortKey(b); }

}  // namespace qsh
