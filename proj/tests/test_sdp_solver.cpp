#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "paley/clique.hpp"
#include "paley/l2_model.hpp"
#include "paley/sdp_solver.hpp"

using namespace paley;

namespace {

SdpProblem l2_problem(int p) {
  const PaleyGraph g = build_graph(p);
  return to_problem(reduce_and_assemble(g, enumerate_orbits(g)));
}

AffineBlock dense_block(const Eigen::MatrixXd& f0, const std::vector<Eigen::MatrixXd>& f, std::string name) {
  AffineBlockBuilder b(std::move(name), static_cast<int>(f0.rows()), static_cast<int>(f.size()));
  for (int r = 0; r < f0.rows(); ++r) {
    for (int c = r; c < f0.cols(); ++c) {
      b.add(-1, r, c, f0(r, c));
      for (std::size_t i = 0; i < f.size(); ++i) b.add(static_cast<int>(i), r, c, f[i](r, c));
    }
  }
  return std::move(b).build();
}

// Characteristic polynomial coefficients (monic, highest first) by Faddeev-LeVerrier.
std::vector<long double> char_poly(const Eigen::MatrixXd& a) {
  const int n = static_cast<int>(a.rows());
  using M = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const M al = a.cast<long double>();
  std::vector<long double> coef(n + 1, 0.0L);
  coef[0] = 1.0L;
  M mk = M::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    mk = al * mk + coef[k - 1] * M::Identity(n, n);
    coef[k] = -(al * mk).trace() / k;
  }
  return coef;
}

// All roots of a monic polynomial by Durand-Kerner iteration.
std::vector<double> real_roots(const std::vector<long double>& coef) {
  using C = std::complex<long double>;
  const int n = static_cast<int>(coef.size()) - 1;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::pow(C(0.4L, 0.9L), k) * C(10.0L);
  auto eval = [&](C x) {
    C v = 0;
    for (const long double c : coef) v = v * x + c;
    return v;
  };
  for (int it = 0; it < 2000; ++it) {
    for (int k = 0; k < n; ++k) {
      C den = 1;
      for (int j = 0; j < n; ++j) {
        if (j != k) den *= z[k] - z[j];
      }
      z[k] -= eval(z[k]) / den;
    }
  }
  std::vector<double> out;
  for (const C& r : z) out.push_back(static_cast<double>(r.real()));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST(SolverConfig, Validation) {
  SolverConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.tol_gap = 0.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.tol_feas = -1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.mu_reduction = 1.0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.max_iterations = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Solve, ScalarLmi) {
  SdpProblem prob;
  prob.num_vars = 1;
  prob.c = {1.0};
  prob.blocks.push_back(dense_block(Eigen::MatrixXd::Ones(1, 1), {-Eigen::MatrixXd::Ones(1, 1)}, "scalar"));
  const SdpSolution sol = solve(prob, SolverConfig{});
  EXPECT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.value, 1.0, 1e-6);
  EXPECT_NEAR(sol.dual_value, 1.0, 1e-6);
  EXPECT_GE(sol.min_eig, -1e-8);
}

TEST(Solve, TwoByTwoCircle) {
  // [[1 + y1, y2], [y2, 1 - y1]] >= 0 is the unit disc; maximise 3 y1 + 4 y2 -> 5.
  Eigen::MatrixXd f1(2, 2), f2(2, 2);
  f1 << 1, 0, 0, -1;
  f2 << 0, 1, 1, 0;
  SdpProblem prob;
  prob.num_vars = 2;
  prob.c = {3.0, 4.0};
  prob.blocks.push_back(dense_block(Eigen::MatrixXd::Identity(2, 2), {f1, f2}, "disc"));
  const SdpSolution sol = solve(prob, SolverConfig{});
  ASSERT_EQ(sol.status, SolveStatus::kOptimal);
  EXPECT_NEAR(sol.value, 5.0, 1e-5);
  EXPECT_NEAR(sol.y[0], 0.6, 1e-3);
  EXPECT_NEAR(sol.y[1], 0.8, 1e-3);
}

TEST(Solve, IterationLimitIsReported) {
  SolverConfig cfg;
  cfg.max_iterations = 2;
  const SdpSolution sol = solve(l2_problem(61), cfg);
  EXPECT_EQ(sol.status, SolveStatus::kMaxIterations);
  EXPECT_EQ(sol.iterations, 2);
}

TEST(Eigen, MatchesCharacteristicPolynomialRoots) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> u(-9, 9);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd a(5, 5);
    for (int r = 0; r < 5; ++r) {
      for (int c = r; c < 5; ++c) a(r, c) = a(c, r) = u(rng);
    }
    const std::vector<double> roots = real_roots(char_poly(a));
    SdpProblem prob;
    prob.num_vars = 1;
    prob.c = {0.0};
    prob.blocks.push_back(dense_block(a, {Eigen::MatrixXd::Zero(5, 5)}, "a"));
    const std::vector<double> y{0.0};
    const CertificateCheck check = check_certificate(prob, y, 1e-8);
    ASSERT_EQ(check.min_eig.size(), 1u);
    EXPECT_NEAR(check.min_eig[0], roots.front(), 1e-8 * (1.0 + a.norm()));
    EXPECT_EQ(check.valid, roots.front() >= -1e-8);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    for (int k = 0; k < 5; ++k) {
      EXPECT_NEAR(es.eigenvalues()(k), roots[k], 1e-8 * (1.0 + a.norm()));
      const Eigen::VectorXd v = es.eigenvectors().col(k);
      EXPECT_LE((a * v - es.eigenvalues()(k) * v).norm(), 1e-10 * a.norm());
    }
  }
}

TEST(Certificate, ZeroVectorValidAndLargeVertexWeightInvalid) {
  for (const int p : {29, 61}) {
    const SdpProblem prob = l2_problem(p);
    std::vector<double> y(prob.num_vars, 0.0);
    const CertificateCheck zero = check_certificate(prob, y, 1e-8);
    EXPECT_TRUE(zero.valid);
    ASSERT_EQ(zero.min_eig.size(), 2u);
    y[VariableMap::kVertex] = p;
    const CertificateCheck big = check_certificate(prob, y, 1e-8);
    EXPECT_FALSE(big.valid);
    EXPECT_LT(big.min_eig[0], 0.0);
  }
}

TEST(Certificate, DimensionMismatchThrows) {
  const SdpProblem prob = l2_problem(29);
  const std::vector<double> y(prob.num_vars + 1, 0.0);
  EXPECT_THROW(check_certificate(prob, y, 1e-8), std::invalid_argument);
}

TEST(Solve, L2SmallPrimesSandwiched) {
  const SolverConfig cfg;
  for (const int p : {13, 29, 61, 101}) {
    const PaleyGraph g = build_graph(p);
    const SdpSolution sol = solve(l2_problem(p), cfg);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal) << p;
    EXPECT_TRUE(check_certificate(l2_problem(p), sol.y, cfg.tol_feas).valid);
    EXPECT_GE(sol.min_eig, -cfg.tol_feas);
    EXPECT_LE(sol.gap, cfg.tol_gap * (1.0 + std::abs(sol.value)));
    EXPECT_GE(sol.dual_value, sol.value - cfg.tol_gap * (1.0 + sol.value));
    EXPECT_LE(sol.dual_residual, cfg.tol_gap);
    const CliqueResult c = clique_number(g, 10000000);
    ASSERT_TRUE(c.certified);
    EXPECT_LE(c.omega, sol.value + 1e-6) << p;
    EXPECT_LE(sol.value, std::sqrt(p) + 1e-6) << p;
  }
}

TEST(Solve, DualMultiplierIsPsd) {
  const SdpSolution sol = solve(l2_problem(61), SolverConfig{});
  ASSERT_EQ(sol.dual.size(), 2u);
  for (const auto& x : sol.dual) {
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(x, Eigen::EigenvaluesOnly).eigenvalues().minCoeff(), 0.0);
  }
}

TEST(Solve, DeterministicIterates) {
  SolveOptions opts;
  opts.record_iterates = true;
  const SdpProblem prob = l2_problem(197);
  const SdpSolution a = solve(prob, SolverConfig{}, opts);
  const SdpSolution b = solve(prob, SolverConfig{}, opts);
  ASSERT_FALSE(a.iterates.empty());
  EXPECT_EQ(a.iterates, b.iterates);
  EXPECT_EQ(a.y, b.y);
  EXPECT_EQ(a.value, b.value);
  ASSERT_EQ(a.history.size(), b.history.size());
  for (std::size_t k = 0; k < a.history.size(); ++k) EXPECT_EQ(a.history[k].gap, b.history[k].gap);
}

TEST(Solve, GapNonIncreasing) {
  for (const int p : {29, 101, 197}) {
    const SdpSolution sol = solve(l2_problem(p), SolverConfig{});
    ASSERT_GE(sol.history.size(), 2u);
    for (std::size_t k = 1; k < sol.history.size(); ++k) {
      EXPECT_LE(sol.history[k].gap, sol.history[k - 1].gap + 1e-12) << p << " stage " << k;
    }
  }
}

TEST(Solve, ObjectiveScaleInvariance) {
  const SdpProblem prob = l2_problem(101);
  SdpProblem scaled = prob;
  for (double& c : scaled.c) c *= 7.0;
  const SdpSolution a = solve(prob, SolverConfig{});
  const SdpSolution b = solve(scaled, SolverConfig{});
  ASSERT_EQ(a.status, SolveStatus::kOptimal);
  ASSERT_EQ(b.status, SolveStatus::kOptimal);
  EXPECT_NEAR(b.value, 7.0 * a.value, 1e-5 * b.value);
  for (std::size_t i = 0; i < a.y.size(); ++i) EXPECT_NEAR(a.y[i], b.y[i], 1e-4);
}

TEST(Theta, DenseMatchesSqrtP) {
  for (const int p : {5, 13, 29, 61}) {
    const SdpSolution sol = lovasz_theta_sdp(build_graph(p), SolverConfig{}, ThetaFormulation::kDense);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal) << p;
    EXPECT_NEAR(sol.value, std::sqrt(p), 1e-3) << p;
  }
}

TEST(Theta, SymmetricMatchesSqrtP) {
  for (const int p : {13, 101}) {
    const SdpSolution sol = lovasz_theta_sdp(build_graph(p), SolverConfig{}, ThetaFormulation::kSymmetric);
    ASSERT_EQ(sol.status, SolveStatus::kOptimal) << p;
    EXPECT_NEAR(sol.value, std::sqrt(p), 1e-3) << p;
  }
  EXPECT_NEAR(lovasz_theta_sdp(build_graph(821), SolverConfig{}).value, 28.653, 1e-3);
}

TEST(Theta, ProblemShapes) {
  const PaleyGraph g = build_graph(13);
  const SdpProblem dense = lovasz_theta_problem(g, ThetaFormulation::kDense);
  ASSERT_EQ(dense.blocks.size(), 1u);
  EXPECT_EQ(dense.blocks[0].size, 14);
  EXPECT_EQ(dense.num_vars, 13 + 13 * 6 / 2);
  const SdpProblem sym = lovasz_theta_problem(g, ThetaFormulation::kSymmetric);
  EXPECT_EQ(sym.num_vars, 2);
}
