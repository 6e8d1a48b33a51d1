#include "gklo/context.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "exactalg/gens.hpp"

namespace qsh {

GKLOContext GKLOContext::make(std::shared_ptr<const AlgebraSpec> spec,
                              std::vector<int> rows, std::vector<int> frames) {
  GKLOContext c;
  c.alg = OpAlgebra::make(std::move(spec), std::move(rows));
  if ((int)frames.size() != c.alg->nodes())
    throw std::invalid_argument("frame count list does not match node count");
  for (int f : frames)
    if (f < 0) throw std::invalid_argument("negative frame count");
  c.frames = std::move(frames);
  return c;
}

std::vector<int> GKLOContext::framesFromShifts(const CartanData& cd,
                                               const std::vector<int>& rows,
                                               const std::vector<int>& b) {
  int n = cd.n;
  if ((int)rows.size() != n || (int)b.size() != n)
    throw std::invalid_argument("shift tuple does not match node count");
  std::vector<int> out(n);
  for (int i = 0; i < n; ++i) {
    int prev = rows[(i + n - 1) % n], next = rows[(i + 1) % n];
    out[i] = b[i] + 2 * rows[i] - prev - next;
    if (out[i] < 0)
      throw std::invalid_argument("shift tuple gives a negative frame count");
  }
  return out;
}

void GKLOContext::specializeZ(std::vector<std::vector<Q>> values) {
  if ((int)values.size() != nodes())
    throw std::invalid_argument("framing values do not match node count");
  for (int i = 0; i < nodes(); ++i) {
    if ((int)values[i].size() != frames[i])
      throw std::invalid_argument("framing values do not match frame counts");
    for (const Q& v : values[i])
      if (v == 0) throw std::invalid_argument("framing values must be nonzero");
  }
  zvals = std::move(values);
}

Poly GKLOContext::Zi(int node, const Mono& u) const {
  const AlgebraSpec& sp = spec();
  Mono uinv = u.inverse();
  std::vector<Poly> fs;
  for (int s = 1; s <= frames[node]; ++s) {
    Mono m = uinv;
    switch (sp.family) {
      case Family::Affine:
        m.mulGen(gParam("q"), 2 * sp.cartan.d[node]);
        break;
      case Family::ToroidalSLN:
        m.mulGen(gParam("q"), 2);
        break;
      default:
        break;
    }
    Q c = 1;
    if (zvals.empty())
      m.mulGen(gZ(node, s), 2);
    else
      c = zvals[node][s - 1];
    fs.push_back(Poly::constant(1) - Poly::fromMono(m, c));
  }
  return polyProd(std::move(fs));
}

Poly GKLOContext::Wi(int node, const Mono& u) const {
  Mono uinv = u.inverse();
  std::vector<Poly> fs;
  for (int t = 1; t <= alg->rows[node]; ++t) {
    Mono m = uinv;
    m.mulGen(gW(node, t), 2);
    fs.push_back(Poly::constant(1) - Poly::fromMono(m));
  }
  return polyProd(std::move(fs));
}

Poly GKLOContext::Wir(int node, int r, const Mono& u) const {
  Mono uinv = u.inverse();
  std::vector<Poly> fs;
  for (int t = 1; t <= alg->rows[node]; ++t) {
    if (t == r) continue;
    Mono m = uinv;
    m.mulGen(gW(node, t), 2);
    fs.push_back(Poly::constant(1) - Poly::fromMono(m));
  }
  return polyProd(std::move(fs));
}

namespace {

std::vector<int> parseInts(std::istringstream& in, const std::string& key) {
  std::vector<int> out;
  int v;
  while (in >> v) out.push_back(v);
  if (out.empty())
    throw std::runtime_error("context field '" + key + "' needs values");
  return out;
}

}  // namespace

GKLOContext parseContextText(const std::string& text) {
  std::string family, cartanPath, quiverPath, zSpec;
  std::vector<int> a, N, b;
  int slnNodes = 0;

  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream in(line);
    std::string key;
    if (!(in >> key)) continue;
    if (key == "family") {
      in >> family;
    } else if (key == "cartan") {
      in >> cartanPath;
    } else if (key == "quiver") {
      in >> quiverPath;
    } else if (key == "n") {
      in >> slnNodes;
    } else if (key == "a") {
      a = parseInts(in, key);
    } else if (key == "N") {
      N = parseInts(in, key);
    } else if (key == "b") {
      b = parseInts(in, key);
    } else if (key == "z") {
      std::string tok;
      while (in >> tok) zSpec += zSpec.empty() ? tok : " " + tok;
    } else {
      throw std::runtime_error("unknown context field '" + key + "'");
    }
  }

  std::shared_ptr<const AlgebraSpec> spec;
  if (family == "affine") {
    if (cartanPath.empty())
      throw std::runtime_error("affine context needs a cartan file");
    spec = AlgebraSpec::affine(parseCartanFile(cartanPath));
  } else if (family == "toroidal-gl1") {
    spec = AlgebraSpec::toroidalGL1();
  } else if (family == "toroidal-sln") {
    spec = AlgebraSpec::toroidalSLN(slnNodes);
  } else if (family == "quiver") {
    if (quiverPath.empty())
      throw std::runtime_error("quiver context needs a quiver file");
    spec = AlgebraSpec::quiverAlg(parseQuiverFile(quiverPath));
  } else {
    throw std::runtime_error("context field 'family' must be one of "
                             "affine, toroidal-gl1, toroidal-sln, quiver");
  }

  if (a.empty()) throw std::runtime_error("context field 'a' is required");
  if (!b.empty()) {
    if (spec->family != Family::ToroidalSLN)
      throw std::runtime_error("field 'b' applies to the cyclic family only");
    if (!N.empty())
      throw std::runtime_error("give either 'N' or 'b', not both");
    N = GKLOContext::framesFromShifts(spec->cartan, a, b);
  }
  if (N.empty()) N.assign(a.size(), 0);

  GKLOContext ctx = GKLOContext::make(spec, a, N);
  if (!zSpec.empty() && zSpec != "formal") {
    std::istringstream zin(zSpec);
    std::vector<std::vector<Q>> vals(ctx.nodes());
    std::string tok;
    for (int i = 0; i < ctx.nodes(); ++i)
      for (int s = 0; s < ctx.frames[i]; ++s) {
        if (!(zin >> tok))
          throw std::runtime_error("too few framing values in 'z'");
        Q v(tok);
        v.canonicalize();
        vals[i].push_back(v);
      }
    std::string extra;
    if (zin >> extra) throw std::runtime_error("too many framing values in 'z'");
    ctx.specializeZ(std::move(vals));
  }
  return ctx;
}

GKLOContext parseContextFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open context file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parseContextText(buf.str());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

}  // namespace qsh
