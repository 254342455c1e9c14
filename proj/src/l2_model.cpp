#include "paley/l2_model.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace paley {

std::string VariableMap::name(int var, const TriangleOrbitSet* orbits) const {
  if (var == kVertex) return "y{0}";
  if (var == kNonEdge) return "y{0,k}";
  if (var < 2 || var >= size()) throw std::out_of_range("variable index out of range");
  if (orbits == nullptr) return "y{orbit " + std::to_string(var - 2) + "}";
  const auto& rep = orbits->representatives()[static_cast<std::size_t>(var - 2)].pair;
  return "y{0," + std::to_string(rep.alpha) + "," + std::to_string(rep.beta) + "}";
}

VariableMap make_variable_map(const TriangleOrbitSet& orbits) { return VariableMap{orbits.m()}; }

namespace {

// A moment y_S of the symmetrised program: either structurally zero, the
// constant y_empty = 1, or a single variable.
struct Moment {
  enum Kind { kZero, kOne, kVariable } kind = kZero;
  int var = -1;
};

// Vertex set of size <= 3 with duplicates removed.
struct SmallSet {
  std::array<int, 3> v{};
  int n = 0;
  void insert(int x) {
    for (int i = 0; i < n; ++i) {
      if (v[static_cast<std::size_t>(i)] == x) return;
    }
    if (n == 3) throw std::logic_error("moment index exceeds three vertices");
    v[static_cast<std::size_t>(n++)] = x;
  }
};

Moment moment(const PaleyGraph& g, const TriangleOrbitSet* orbits, const VariableMap& vars, const SmallSet& s) {
  switch (s.n) {
    case 0:
      return {Moment::kOne, -1};
    case 1:
      return {Moment::kVariable, VariableMap::kVertex};
    case 2:
      // y_{ij} = 0 on edges (independent-set form); every non-edge is in one orbit.
      if (g.adjacent(s.v[0], s.v[1])) return {};
      return {Moment::kVariable, VariableMap::kNonEdge};
    default: {
      if (orbits == nullptr) throw std::logic_error("triangle moment requested without orbit data");
      const auto rep = orbit_of_triangle(*orbits, s.v);
      if (!rep) return {};
      return {Moment::kVariable, vars.orbit(orbits->index_of(*rep))};
    }
  }
}

// A_S(y): row 0 is S itself, row 1 + v is S + {v}; entry (r,c) is y of the union.
AffineBlock build_A_subset(const PaleyGraph& g, const TriangleOrbitSet* orbits, const VariableMap& vars,
                           const std::vector<int>& subset, std::string name) {
  const int p = g.p();
  AffineBlockBuilder builder(std::move(name), p + 1, vars.size());
  auto row_set = [&](int r) {
    SmallSet s;
    for (int x : subset) s.insert(x);
    if (r > 0) s.insert(r - 1);
    return s;
  };
  for (int r = 0; r <= p; ++r) {
    for (int c = r; c <= p; ++c) {
      SmallSet u = row_set(r);
      if (c > 0) u.insert(c - 1);
      const Moment mo = moment(g, orbits, vars, u);
      if (mo.kind == Moment::kOne) builder.add(-1, r, c, 1.0);
      if (mo.kind == Moment::kVariable) builder.add(mo.var, r, c, 1.0);
    }
  }
  return std::move(builder).build();
}

std::vector<std::uint8_t> touched_rows(const AffineBlock& b) {
  std::vector<std::uint8_t> touched(static_cast<std::size_t>(b.size), 0);
  auto mark = [&](const SparseSymmetric& m) {
    for (const auto& e : m) {
      touched[static_cast<std::size_t>(e.row)] = 1;
      touched[static_cast<std::size_t>(e.col)] = 1;
    }
  };
  mark(b.constant);
  for (const auto& m : b.coefficients) mark(m);
  return touched;
}

bool rows_identical(const AffineBlock& b, int r0, int r1) {
  for (int var = -1; var < b.num_vars(); ++var) {
    for (int c = 0; c < b.size; ++c) {
      if (b.coefficient(var, r0, c) != b.coefficient(var, r1, c)) return false;
    }
  }
  return true;
}

}  // namespace

AffineBlock build_A_empty(const PaleyGraph& g, const VariableMap& vars) {
  return build_A_subset(g, nullptr, vars, {}, "A_empty");
}

AffineBlock build_A_zero(const PaleyGraph& g, const TriangleOrbitSet& orbits, const VariableMap& vars) {
  if (orbits.p() != g.p()) {
    throw std::invalid_argument("orbit set computed for p=" + std::to_string(orbits.p()) + ", graph has p=" +
                                std::to_string(g.p()));
  }
  if (vars.orbit_count != orbits.m()) throw std::invalid_argument("variable map does not match orbit set");
  return build_A_subset(g, &orbits, vars, {0}, "A_{0}");
}

AffineBlock inclusion_exclusion(const VertexSet& s, const VertexSet& t, const std::map<VertexSet, AffineBlock>& blocks) {
  if (!std::includes(t.begin(), t.end(), s.begin(), s.end())) {
    throw std::invalid_argument("inclusion-exclusion needs S contained in T");
  }
  std::vector<int> free;
  std::set_difference(t.begin(), t.end(), s.begin(), s.end(), std::back_inserter(free));
  if (free.size() > 20) throw std::invalid_argument("T \\ S too large");

  std::vector<const AffineBlock*> terms;
  std::vector<double> signs;
  for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
    VertexSet sp = s;
    int extra = 0;
    for (std::size_t k = 0; k < free.size(); ++k) {
      if (mask & (1u << k)) {
        sp.insert(free[k]);
        ++extra;
      }
    }
    const auto it = blocks.find(sp);
    if (it == blocks.end()) throw std::invalid_argument("missing block A_S' for inclusion-exclusion");
    terms.push_back(&it->second);
    signs.push_back(extra % 2 == 0 ? 1.0 : -1.0);
  }
  std::string name = "A(S,T)";
  return linear_combination(terms, signs, std::move(name));
}

L2Instance reduce_and_assemble(const PaleyGraph& g, const TriangleOrbitSet& orbits) {
  if (orbits.p() != g.p()) throw std::invalid_argument("orbit set and graph disagree on p");
  const int p = g.p();
  L2Instance inst;
  inst.p = p;
  inst.vars = make_variable_map(orbits);

  std::map<VertexSet, AffineBlock> parts;
  parts.emplace(VertexSet{}, build_A_empty(g, inst.vars));
  parts.emplace(VertexSet{0}, build_A_zero(g, orbits, inst.vars));
  const AffineBlock diff = inclusion_exclusion({}, {0}, parts);
  const AffineBlock& a0 = parts.at(VertexSet{0});

  // Row 1 ({0} in A_empty, {0,0} = {0} in A_{0}) is the same in both, so the
  // difference vanishes there.
  if (!diff.row_is_zero(1)) throw std::logic_error("A_empty - A_{0} has a nonzero row for vertex 0");
  inst.kept_3c.push_back(0);
  for (int r = 2; r <= p; ++r) inst.kept_3c.push_back(r);

  // A_{0}: row 1 duplicates row 0; rows of neighbours of 0 are structurally zero.
  if (!rows_identical(a0, 0, 1)) throw std::logic_error("A_{0} rows for {0} and {0,0} differ");
  const auto touched = touched_rows(a0);
  inst.kept_3d.push_back(0);
  for (int v = 1; v < p; ++v) {
    const bool zero = touched[static_cast<std::size_t>(v + 1)] == 0;
    if (g.adjacent(0, v) != zero) throw std::logic_error("unexpected structural zero pattern in A_{0}");
    if (!zero) inst.kept_3d.push_back(v + 1);
  }

  inst.blocks.push_back(principal_submatrix(diff, inst.kept_3c, "3c"));
  inst.blocks.push_back(principal_submatrix(a0, inst.kept_3d, "3d"));
  inst.objective.assign(static_cast<std::size_t>(inst.vars.size()), 0.0);
  inst.objective[VariableMap::kVertex] = static_cast<double>(p);
  return inst;
}

std::vector<double> set_moments(const TriangleOrbitSet& orbits, const std::vector<int>& set) {
  const double p = orbits.p();
  const VariableMap vars = make_variable_map(orbits);
  std::vector<double> y(static_cast<std::size_t>(vars.size()), 0.0);
  const auto& g = orbits.graph();
  for (std::size_t a = 0; a < set.size(); ++a) {
    if (set[a] < 0 || set[a] >= g.p()) throw std::invalid_argument("vertex out of range");
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      if (set[a] == set[b] || g.adjacent(set[a], set[b])) throw std::invalid_argument("vertex set is not independent");
    }
  }
  const double k = static_cast<double>(set.size());
  y[VariableMap::kVertex] = k / p;
  y[VariableMap::kNonEdge] = k * (k - 1.0) / 2.0 / (p * (p - 1.0) / 4.0);
  std::vector<double> hits(static_cast<std::size_t>(vars.orbit_count), 0.0);
  for (std::size_t a = 0; a < set.size(); ++a) {
    for (std::size_t b = a + 1; b < set.size(); ++b) {
      for (std::size_t c = b + 1; c < set.size(); ++c) {
        const auto rep = orbit_of_triangle(orbits, {set[a], set[b], set[c]});
        if (!rep) throw std::invalid_argument("vertex set is not independent");
        hits[static_cast<std::size_t>(orbits.index_of(*rep))] += 1.0;
      }
    }
  }
  // An orbit holding `size` pairs through 0 holds p * size / 3 triples.
  const auto& reps = orbits.representatives();
  for (int r = 0; r < vars.orbit_count; ++r) {
    y[static_cast<std::size_t>(vars.orbit(r))] = hits[static_cast<std::size_t>(r)] /
                                                 (p * reps[static_cast<std::size_t>(r)].size / 3.0);
  }
  return y;
}

SdpProblem to_problem(const L2Instance& inst) {
  return SdpProblem{inst.vars.size(), inst.objective, inst.blocks};
}

}  // namespace paley
