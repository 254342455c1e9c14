#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "paley/field_graph.hpp"

namespace paley {

// Normalised edge-free triangle {0, alpha, beta} with alpha < beta.
struct TrianglePair {
  int alpha = 0;
  int beta = 0;
  friend bool operator==(const TrianglePair&, const TrianglePair&) = default;
  friend auto operator<=>(const TrianglePair&, const TrianglePair&) = default;
};

struct OrbitRepresentative {
  TrianglePair pair;
  // Number of edge-free triangles {0,i,j} (unordered pairs i<j) in the orbit.
  int size = 0;
};

// Orbits of edge-free triangles through 0 under u -> a*u + b (a a nonzero square).
// Representatives are the lexicographically smallest normalised member of each
// orbit, listed in increasing order.
class TriangleOrbitSet {
 public:
  TriangleOrbitSet(PaleyGraph graph, std::vector<OrbitRepresentative> reps, std::vector<int> pair_orbit);

  int p() const { return graph_.p(); }
  int m() const { return static_cast<int>(reps_.size()); }
  const PaleyGraph& graph() const { return graph_; }
  const std::vector<OrbitRepresentative>& representatives() const { return reps_; }

  // Orbit index of the triangle {0,i,j}, or -1 when it spans an edge (or i, j, 0 collide).
  int orbit_index(int i, int j) const {
    return pair_orbit_[static_cast<std::size_t>(i) * static_cast<std::size_t>(p()) + static_cast<std::size_t>(j)];
  }
  int index_of(const TrianglePair& rep) const;

  // Number of unordered pairs i<j with {0,i,j} edge-free.
  std::int64_t edge_free_pairs() const;

 private:
  PaleyGraph graph_;
  std::vector<OrbitRepresentative> reps_;
  std::vector<int> pair_orbit_;
};

TriangleOrbitSet enumerate_orbits(const PaleyGraph& g);

// X^{alpha beta}: symmetric 0/1 indicator on vertices 1..p-1 of the pairs whose
// triangle with 0 lies in the given orbit.
struct OrbitIndicatorMatrix {
  TrianglePair rep;
  int dimension = 0;  // p - 1
  // Upper-triangle support, vertex labels (1..p-1), i < j.
  std::vector<std::pair<int, int>> pairs;

  // Dense accessor with vertex labels 1..p-1.
  int at(int i, int j) const;
  std::size_t support_size() const { return 2 * pairs.size(); }
};

// Throws std::invalid_argument when rep is not a representative of `orbits`.
OrbitIndicatorMatrix indicator_matrix(const TriangleOrbitSet& orbits, const TrianglePair& rep);

// Representative of the orbit containing the triple, or nullopt when the triple
// spans an edge. Throws std::invalid_argument for repeated vertices.
std::optional<TrianglePair> orbit_of_triangle(const TriangleOrbitSet& orbits, std::array<int, 3> triple);

// Snapshot text format: "p m" then one "alpha beta orbit_size" line per representative.
void write_orbits(std::ostream& out, const TriangleOrbitSet& orbits);

struct OrbitSnapshot {
  int p = 0;
  std::vector<OrbitRepresentative> reps;
  friend bool operator==(const OrbitSnapshot& a, const OrbitSnapshot& b) {
    if (a.p != b.p || a.reps.size() != b.reps.size()) return false;
    for (std::size_t i = 0; i < a.reps.size(); ++i) {
      if (a.reps[i].pair != b.reps[i].pair || a.reps[i].size != b.reps[i].size) return false;
    }
    return true;
  }
};

OrbitSnapshot read_orbits(std::istream& in);
OrbitSnapshot snapshot(const TriangleOrbitSet& orbits);

}  // namespace paley
