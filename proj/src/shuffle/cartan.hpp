#pragma once

#include <string>
#include <utility>
#include <vector>

namespace qsh {

// Symmetrizable Cartan data: matrix c, symmetrizers d (d_i c_ij = d_j c_ji),
// and an orientation that covers each edge of the Dynkin diagram exactly once.
// The optional skew matrix m is used by the cyclic (toroidal sl_n) family.
struct CartanData {
  int n = 0;
  std::vector<std::vector<int>> c;
  std::vector<int> d;
  std::vector<std::pair<int, int>> orient;  // directed edges i -> j
  std::vector<std::vector<int>> m;          // empty when unused

  bool adjacent(int i, int j) const { return i != j && c[i][j] != 0; }
  void validate() const;  // throws std::runtime_error on bad data
};

// One arrow of a quiver with a formal weight parameter.  Loops and parallel
// edges are allowed; each weight name is registered as a global parameter and
// paired with a formal exponent symbol "l<name>" standing for log_q(weight).
struct QuiverEdge {
  int src = 0;
  int dst = 0;
  std::string weight;
  int wparam = -1;
  int logsym = -1;
};

struct QuiverData {
  int n = 0;
  std::vector<QuiverEdge> edges;
  void validate() const;
};

// Line-oriented key/value text format, '#' starts a comment:
//   nodes 2
//   row 2 -1
//   row -1 2
//   d 1 1
//   edge 0 1
// "row" lines give the Cartan matrix top to bottom, "d" the symmetrizers
// (defaults to all ones), "edge i j" orients the Dynkin edge i -> j.
CartanData parseCartanText(const std::string& text);
CartanData parseCartanFile(const std::string& path);

// Same framing for quivers; every edge line carries a weight name:
//   nodes 2
//   edge 0 1 t1
//   edge 0 0 t2
QuiverData parseQuiverText(const std::string& text);
QuiverData parseQuiverFile(const std::string& path);

CartanData cartanSL2();
CartanData cartanA2();
// Cyclic A_{n-1}^{(1)} data with c_{i,i+1} = -1, orientation i -> i+1 and
// m_{i,i+1} = -1, m_{i,i-1} = +1 (indices mod n); requires n >= 3.
CartanData cartanCyclic(int n);

}  // namespace qsh
