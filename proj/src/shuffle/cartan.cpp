#include "shuffle/cartan.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "exactalg/gens.hpp"

namespace qsh {

namespace {

[[noreturn]] void bad(const std::string& what) {
  throw std::runtime_error("cartan/quiver data: " + what);
}

// Splits a config text into whitespace-separated token lines, dropping
// comments and blank lines.
std::vector<std::vector<std::string>> tokenLines(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (!toks.empty()) out.push_back(std::move(toks));
  }
  return out;
}

int parseInt(const std::string& s) {
  size_t pos = 0;
  int v;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    bad("expected an integer, got '" + s + "'");
  }
  if (pos != s.size()) bad("trailing characters in integer '" + s + "'");
  return v;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void CartanData::validate() const {
  if (n <= 0) bad("node count must be positive");
  if ((int)c.size() != n) bad("Cartan matrix has wrong number of rows");
  for (const auto& row : c)
    if ((int)row.size() != n) bad("Cartan matrix row has wrong length");
  if ((int)d.size() != n) bad("symmetrizer list has wrong length");
  for (int i = 0; i < n; i++) {
    if (d[i] < 1) bad("symmetrizers must be positive integers");
    if (c[i][i] != 2) bad("diagonal Cartan entries must equal 2");
    for (int j = 0; j < n; j++) {
      if (i != j && c[i][j] > 0) bad("off-diagonal Cartan entries must be <= 0");
      if (d[i] * c[i][j] != d[j] * c[j][i]) bad("d_i c_ij != d_j c_ji");
      if (i != j && (c[i][j] == 0) != (c[j][i] == 0))
        bad("adjacency must be mutual");
    }
  }
  std::set<std::pair<int, int>> seen;
  for (auto [i, j] : orient) {
    if (i < 0 || i >= n || j < 0 || j >= n) bad("edge endpoint out of range");
    if (!adjacent(i, j)) bad("oriented edge between non-adjacent nodes");
    auto key = std::minmax(i, j);
    if (!seen.insert({key.first, key.second}).second)
      bad("edge oriented more than once");
  }
  for (int i = 0; i < n; i++)
    for (int j = i + 1; j < n; j++)
      if (adjacent(i, j) && !seen.count({i, j}))
        bad("edge left without orientation");
  if (!m.empty()) {
    if ((int)m.size() != n) bad("skew matrix has wrong number of rows");
    for (const auto& row : m)
      if ((int)row.size() != n) bad("skew matrix row has wrong length");
    for (int i = 0; i < n; i++)
      for (int j = 0; j < n; j++)
        if (m[i][j] != -m[j][i]) bad("skew matrix must be antisymmetric");
  }
}

void QuiverData::validate() const {
  if (n <= 0) bad("node count must be positive");
  for (const auto& e : edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n)
      bad("edge endpoint out of range");
    if (e.weight.empty()) bad("edge is missing its weight name");
    if (e.wparam < 0 || e.logsym < 0) bad("edge weight was not registered");
  }
}

CartanData parseCartanText(const std::string& text) {
  CartanData cd;
  bool sawD = false;
  for (const auto& toks : tokenLines(text)) {
    const std::string& key = toks[0];
    if (key == "nodes") {
      if (toks.size() != 2) bad("'nodes' takes one value");
      cd.n = parseInt(toks[1]);
    } else if (key == "row") {
      std::vector<int> row;
      for (size_t i = 1; i < toks.size(); i++) row.push_back(parseInt(toks[i]));
      cd.c.push_back(std::move(row));
    } else if (key == "d") {
      for (size_t i = 1; i < toks.size(); i++) cd.d.push_back(parseInt(toks[i]));
      sawD = true;
    } else if (key == "edge") {
      if (toks.size() != 3) bad("'edge' takes two node indices");
      cd.orient.push_back({parseInt(toks[1]), parseInt(toks[2])});
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  if (!sawD) cd.d.assign(cd.n, 1);
  cd.validate();
  return cd;
}

CartanData parseCartanFile(const std::string& path) {
  return parseCartanText(slurp(path));
}

QuiverData parseQuiverText(const std::string& text) {
  QuiverData qd;
  for (const auto& toks : tokenLines(text)) {
    const std::string& key = toks[0];
    if (key == "nodes") {
      if (toks.size() != 2) bad("'nodes' takes one value");
      qd.n = parseInt(toks[1]);
    } else if (key == "edge") {
      if (toks.size() != 4) bad("'edge' takes source, target, weight name");
      QuiverEdge e;
      e.src = parseInt(toks[1]);
      e.dst = parseInt(toks[2]);
      e.weight = toks[3];
      e.wparam = gens().param(e.weight);
      e.logsym = gens().formalSym("l" + e.weight);
      qd.edges.push_back(std::move(e));
    } else {
      bad("unknown key '" + key + "'");
    }
  }
  qd.validate();
  return qd;
}

QuiverData parseQuiverFile(const std::string& path) {
  return parseQuiverText(slurp(path));
}

CartanData cartanSL2() {
  CartanData cd;
  cd.n = 1;
  cd.c = {{2}};
  cd.d = {1};
  cd.validate();
  return cd;
}

CartanData cartanA2() {
  CartanData cd;
  cd.n = 2;
  cd.c = {{2, -1}, {-1, 2}};
  cd.d = {1, 1};
  cd.orient = {{0, 1}};
  cd.validate();
  return cd;
}

CartanData cartanCyclic(int n) {
  if (n < 3) bad("cyclic Cartan data needs at least 3 nodes");
  CartanData cd;
  cd.n = n;
  cd.c.assign(n, std::vector<int>(n, 0));
  cd.m.assign(n, std::vector<int>(n, 0));
  cd.d.assign(n, 1);
  for (int i = 0; i < n; i++) {
    int nx = (i + 1) % n;
    cd.c[i][i] = 2;
    cd.c[i][nx] = -1;
    cd.c[nx][i] = -1;
    cd.m[i][nx] = -1;
    cd.m[nx][i] = 1;
    cd.orient.push_back({i, nx});
  }
  cd.validate();
  return cd;
}

}  // namespace qsh
