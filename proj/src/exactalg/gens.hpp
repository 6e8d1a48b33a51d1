#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qsh {

// Generator kinds.  The kind participates in the canonical generator order:
// parameters sort before frame variables (z), which sort before operator
// variables (w), which sort before shuffle variables (x).  Within a kind,
// parameters sort by registration rank and variables by (node, row).
enum class GenKind : uint8_t { Param = 0, ZVar = 1, WVar = 2, XVar = 3 };

struct GenInfo {
  std::string name;
  GenKind kind;
  int node = -1;
  int row = -1;        // 1-based for variables
  int rank = -1;       // registration rank for parameters
  uint64_t sortKey = 0;
};

// Process-wide append-only registry.  Ids are dense ints; the canonical
// monomial order compares generators through sortKey, so it does not depend
// on interleaving of registrations across kinds.
class GenTable {
public:
  GenTable();

  int param(const std::string& name);
  int var(GenKind kind, int node, int row);
  int formalSym(const std::string& name);  // adjoined exponent symbols

  const GenInfo& info(int id) const { return gens_[id]; }
  uint64_t sortKey(int id) const { return gens_[id].sortKey; }
  const std::string& symName(int sym) const { return syms_[sym]; }
  int findGen(const std::string& name) const;   // -1 if absent
  int findSym(const std::string& name) const;   // -1 if absent
  int size() const { return (int)gens_.size(); }

private:
  std::vector<GenInfo> gens_;
  std::vector<std::string> syms_;
  int nextParamRank_ = 0;
};

GenTable& gens();

// Convenience accessors (get-or-register).
int gParam(const std::string& name);
int gX(int node, int row);
int gW(int node, int row);
int gZ(int node, int row);
int gSym(const std::string& name);
const std::string& genName(int id);
bool genLess(int a, int b);

}  // namespace qsh
