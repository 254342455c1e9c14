#include "paley/orbits.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace paley {

TriangleOrbitSet::TriangleOrbitSet(PaleyGraph graph, std::vector<OrbitRepresentative> reps,
                                   std::vector<int> pair_orbit)
    : graph_(std::move(graph)), reps_(std::move(reps)), pair_orbit_(std::move(pair_orbit)) {}

int TriangleOrbitSet::index_of(const TrianglePair& rep) const {
  const auto it = std::lower_bound(reps_.begin(), reps_.end(), rep,
                                   [](const OrbitRepresentative& r, const TrianglePair& x) { return r.pair < x; });
  if (it == reps_.end() || it->pair != rep) return -1;
  return static_cast<int>(it - reps_.begin());
}

std::int64_t TriangleOrbitSet::edge_free_pairs() const {
  std::int64_t total = 0;
  for (const auto& r : reps_) total += r.size;
  return total;
}

TriangleOrbitSet enumerate_orbits(const PaleyGraph& g) {
  const int p = g.p();
  const auto n = static_cast<std::size_t>(p);
  std::vector<int> pair_orbit(n * n, -1);
  std::vector<OrbitRepresentative> reps;
  const auto squares = g.residues();
  const auto non = g.nonresidues();

  auto label = [&](int a, int b, int id) -> bool {
    auto& slot = pair_orbit[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)];
    if (slot == id) return false;
    if (slot != -1) throw std::logic_error("triangle orbits overlap");
    slot = id;
    pair_orbit[static_cast<std::size_t>(b) * n + static_cast<std::size_t>(a)] = id;
    return true;
  };

  // Both i and j must be non-neighbours of 0, hence non-residues. Pairs are
  // scanned in lexicographic order, so the first unlabelled pair is the
  // smallest member of a new orbit.
  for (std::size_t ii = 0; ii < non.size(); ++ii) {
    const int i = non[ii];
    for (std::size_t jj = ii + 1; jj < non.size(); ++jj) {
      const int j = non[jj];
      if (g.adjacent(i, j)) continue;
      if (pair_orbit[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] != -1) continue;

      const int id = static_cast<int>(reps.size());
      int size = 0;
      // phi_ab maps the triple onto one containing 0 exactly when b = -a*u for
      // some vertex u of the triple: the images are a*(t - u), t in the triple.
      const std::array<int, 3> triple{0, i, j};
      for (int u : triple) {
        int x = -1;
        int y = -1;
        for (int t : triple) {
          if (t == u) continue;
          (x < 0 ? x : y) = g.mod(t - u);
        }
        for (int s : squares) {
          int a = g.mul(s, x);
          int b = g.mul(s, y);
          if (a > b) std::swap(a, b);
          if (label(a, b, id)) ++size;
        }
      }
      reps.push_back(OrbitRepresentative{TrianglePair{i, j}, size});
    }
  }
  return TriangleOrbitSet(g, std::move(reps), std::move(pair_orbit));
}

int OrbitIndicatorMatrix::at(int i, int j) const {
  if (i < 1 || j < 1 || i > dimension || j > dimension) throw std::out_of_range("indicator index out of range");
  if (i == j) return 0;
  const auto key = std::minmax(i, j);
  return std::binary_search(pairs.begin(), pairs.end(), std::pair<int, int>(key.first, key.second)) ? 1 : 0;
}

OrbitIndicatorMatrix indicator_matrix(const TriangleOrbitSet& orbits, const TrianglePair& rep) {
  const int id = orbits.index_of(rep);
  if (id < 0) {
    throw std::invalid_argument("(" + std::to_string(rep.alpha) + "," + std::to_string(rep.beta) +
                                ") is not an orbit representative");
  }
  OrbitIndicatorMatrix x;
  x.rep = rep;
  x.dimension = orbits.p() - 1;
  for (int i : orbits.graph().nonresidues()) {
    for (int j : orbits.graph().nonresidues()) {
      if (i < j && orbits.orbit_index(i, j) == id) x.pairs.emplace_back(i, j);
    }
  }
  return x;
}

std::optional<TrianglePair> orbit_of_triangle(const TriangleOrbitSet& orbits, std::array<int, 3> triple) {
  const auto& g = orbits.graph();
  for (auto& v : triple) v = g.mod(v);
  if (triple[0] == triple[1] || triple[0] == triple[2] || triple[1] == triple[2]) {
    throw std::invalid_argument("triangle vertices must be distinct");
  }
  if (g.adjacent(triple[0], triple[1]) || g.adjacent(triple[0], triple[2]) || g.adjacent(triple[1], triple[2])) {
    return std::nullopt;
  }
  const int i = g.mod(triple[1] - triple[0]);
  const int j = g.mod(triple[2] - triple[0]);
  const int id = orbits.orbit_index(i, j);
  if (id < 0) throw std::logic_error("edge-free triangle missing from orbit table");
  return orbits.representatives()[static_cast<std::size_t>(id)].pair;
}

void write_orbits(std::ostream& out, const TriangleOrbitSet& orbits) {
  out << orbits.p() << ' ' << orbits.m() << '\n';
  for (const auto& r : orbits.representatives()) {
    out << r.pair.alpha << ' ' << r.pair.beta << ' ' << r.size << '\n';
  }
}

OrbitSnapshot read_orbits(std::istream& in) {
  OrbitSnapshot snap;
  int m = 0;
  if (!(in >> snap.p >> m) || m < 0) throw std::runtime_error("malformed orbit snapshot header");
  snap.reps.resize(static_cast<std::size_t>(m));
  for (auto& r : snap.reps) {
    if (!(in >> r.pair.alpha >> r.pair.beta >> r.size)) throw std::runtime_error("truncated orbit snapshot");
  }
  return snap;
}

OrbitSnapshot snapshot(const TriangleOrbitSet& orbits) {
  return OrbitSnapshot{orbits.p(), orbits.representatives()};
}

}  // namespace paley
