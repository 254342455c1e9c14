#include <stdexcept>

#include "paley/l2_model.hpp"
#include "paley/sdp_solver.hpp"

namespace paley {

SdpProblem lovasz_theta_problem(const PaleyGraph& g, ThetaFormulation form) {
  const int p = g.p();
  SdpProblem prob;
  if (form == ThetaFormulation::kSymmetric) {
    // Same affine map as A_empty of the L2 program; the objective counts p vertices.
    prob.num_vars = 2;
    prob.c = {static_cast<double>(p), 0.0};
    prob.blocks.push_back(build_A_empty(g, VariableMap{0}));
    prob.blocks.back().name = "theta";
    return prob;
  }

  // Row 0 is the empty set, row 1 + v the vertex v.
  std::vector<std::pair<int, int>> nonedges;
  for (int u = 0; u < p; ++u) {
    for (int v = u + 1; v < p; ++v) {
      if (!g.adjacent(u, v)) nonedges.emplace_back(u, v);
    }
  }
  prob.num_vars = p + static_cast<int>(nonedges.size());
  prob.c.assign(static_cast<std::size_t>(prob.num_vars), 0.0);
  AffineBlockBuilder builder("theta", p + 1, prob.num_vars);
  builder.add(-1, 0, 0, 1.0);
  for (int v = 0; v < p; ++v) {
    prob.c[static_cast<std::size_t>(v)] = 1.0;
    builder.add(v, 0, v + 1, 1.0);
    builder.add(v, v + 1, v + 1, 1.0);
  }
  for (std::size_t k = 0; k < nonedges.size(); ++k) {
    builder.add(p + static_cast<int>(k), nonedges[k].first + 1, nonedges[k].second + 1, 1.0);
  }
  prob.blocks.push_back(std::move(builder).build());
  return prob;
}

SdpSolution lovasz_theta_sdp(const PaleyGraph& g, const SolverConfig& cfg, ThetaFormulation form) {
  return solve(lovasz_theta_problem(g, form), cfg);
}

SdpSolution lovasz_theta_sdp(const PaleyGraph& g, const SolverConfig& cfg) {
  const auto form = g.p() <= kDenseThetaMaxPrime ? ThetaFormulation::kDense : ThetaFormulation::kSymmetric;
  return lovasz_theta_sdp(g, cfg, form);
}

}  // namespace paley
