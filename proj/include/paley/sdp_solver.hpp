#pragma once

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "paley/field_graph.hpp"
#include "paley/sdp_problem.hpp"

namespace paley {

enum class SolveStatus { kOptimal, kMaxIterations, kNumericalFailure };

std::string to_string(SolveStatus s);

struct SolverConfig {
  double tol_gap = 1e-6;        // relative: gap <= tol_gap * (1 + |value|)
  double tol_feas = 1e-8;       // minimum eigenvalue slack accepted at the returned y
  int max_iterations = 200;     // Newton steps
  double initial_mu = 1.0;      // scales the starting complementarity X0 Z0
  double mu_reduction = 0.2;    // upper bound on the centring factor sigma in mu <- sigma * mu
  bool deterministic = true;

  // Throws std::invalid_argument for non-positive tolerances or a reduction outside (0,1).
  void validate() const;
};

// State at the start of one outer iteration.
struct BarrierStage {
  double mu = 0.0;   // gap / sum of block sizes
  double gap = 0.0;  // complementarity <X, Z> summed over blocks
  double value = 0.0;
  int newton_steps = 0;
};

struct SdpSolution {
  double value = 0.0;
  std::vector<double> y;
  SolveStatus status = SolveStatus::kNumericalFailure;
  double gap = 0.0;
  double min_eig = 0.0;                // over all blocks at y
  std::vector<double> block_min_eig;
  int iterations = 0;                  // Newton steps
  double wall_time = 0.0;              // seconds

  // Multiplier X_b >= 0 of every block: sum_b <X_b, F_ib> ~= -c_i and
  // dual_value = sum_b <X_b, F0_b> bounds the optimum from above.
  std::vector<Eigen::MatrixXd> dual;
  double dual_value = 0.0;
  double dual_residual = 0.0;          // max_i |sum_b <X_b,F_ib> + c_i| / (1 + max|c|)
  std::vector<BarrierStage> history;
  // y after every Newton step; filled only when SolveOptions::record_iterates is set.
  std::vector<std::vector<double>> iterates;
};

struct SolveOptions {
  bool record_iterates = false;
};

// Primal-dual interior point method following the log-barrier central path
// XZ = mu I of the LMI form and its dual, from the infeasible start X = xi I,
// Z = eta I, y = 0. Newton steps (HKM direction, Mehrotra corrector) are
// solved through a d x d Schur complement. Optimal requires gap and
// |primal - dual objective| <= tol_gap (1 + |value|), relative dual
// infeasibility <= tol_feas and a PSD check of every block at y.
SdpSolution solve(const SdpProblem& prob, const SolverConfig& cfg, const SolveOptions& opts = {});

struct CertificateCheck {
  bool valid = false;
  std::vector<double> min_eig;
};

// Smallest eigenvalue of every block at y; valid iff all are >= -tol.
CertificateCheck check_certificate(const SdpProblem& prob, std::span<const double> y, double tol);

// Lovasz theta of G_p as an SDP: theta(G) = SOS_2 of the complement, i.e.
// maximise sum_i y_i over [[1, y^T], [y, Y]] >= 0 with Y_ii = y_i and Y_ij = 0 on edges.
enum class ThetaFormulation {
  kDense,      // one variable per vertex and per non-edge
  kSymmetric,  // vertex- and edge-transitivity collapse these to y_{0}, y_{0,k}
};

// Largest p for which lovasz_theta_sdp picks the dense formulation.
inline constexpr int kDenseThetaMaxPrime = 101;

SdpProblem lovasz_theta_problem(const PaleyGraph& g, ThetaFormulation form);
SdpSolution lovasz_theta_sdp(const PaleyGraph& g, const SolverConfig& cfg);
SdpSolution lovasz_theta_sdp(const PaleyGraph& g, const SolverConfig& cfg, ThetaFormulation form);

}  // namespace paley
