#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "paley/affine_block.hpp"
#include "paley/field_graph.hpp"
#include "paley/orbits.hpp"
#include "paley/sdp_problem.hpp"

namespace paley {

// Variable layout of the symmetry-reduced L2 program:
//   0        y_{0}        (every vertex)
//   1        y_{0,k}      (every non-edge)
//   2..m+1   y_{0,a,b}    (one per edge-free triangle orbit, representative order)
struct VariableMap {
  static constexpr int kVertex = 0;
  static constexpr int kNonEdge = 1;

  int orbit_count = 0;

  int size() const { return orbit_count + 2; }
  int orbit(int r) const { return 2 + r; }
  std::string name(int var, const TriangleOrbitSet* orbits = nullptr) const;
};

VariableMap make_variable_map(const TriangleOrbitSet& orbits);

// Row indexing of A_emptyset: 0 is the empty set, 1 + v is {v}.
// Row indexing of A_{0}:       0 is {0},          1 + v is {0, v} (so row 1 repeats row 0).
AffineBlock build_A_empty(const PaleyGraph& g, const VariableMap& vars);
AffineBlock build_A_zero(const PaleyGraph& g, const TriangleOrbitSet& orbits, const VariableMap& vars);

// sum over S <= S' <= T of (-1)^{|S' \ S|} A_{S'}; `blocks` must hold A_{S'} for each such S'.
using VertexSet = std::set<int>;
AffineBlock inclusion_exclusion(const VertexSet& s, const VertexSet& t, const std::map<VertexSet, AffineBlock>& blocks);

struct L2Instance {
  int p = 0;
  VariableMap vars;
  // Maximise objective . y; objective = p * e_0.
  std::vector<double> objective;
  // blocks[0]: "3c" = A_empty - A_{0} without its zero row (size p).
  // blocks[1]: "3d" = A_{0} on {0} and the non-neighbours of 0 (size (p+1)/2).
  std::vector<AffineBlock> blocks;
  // Rows of the (p+1)-sized parents kept in each reduced block.
  std::vector<int> kept_3c;
  std::vector<int> kept_3d;
};

// Moments y_S = Pr[S in g(I)] of an independent set I under a uniformly random
// automorphism g, in the reduced variables.
std::vector<double> set_moments(const TriangleOrbitSet& orbits, const std::vector<int>& set);

// Throws std::invalid_argument when orbits were computed for another prime.
L2Instance reduce_and_assemble(const PaleyGraph& g, const TriangleOrbitSet& orbits);

SdpProblem to_problem(const L2Instance& inst);

}  // namespace paley
