#include "paley/sdp_solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

namespace paley {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "Optimal";
    case SolveStatus::kMaxIterations:
      return "MaxIterations";
    case SolveStatus::kNumericalFailure:
      return "NumericalFailure";
  }
  return "Unknown";
}

void SolverConfig::validate() const {
  if (!(tol_gap > 0.0) || !(tol_feas > 0.0)) throw std::invalid_argument("solver tolerances must be positive");
  if (max_iterations <= 0) throw std::invalid_argument("max_iterations must be positive");
  if (!(initial_mu > 0.0)) throw std::invalid_argument("initial_mu must be positive");
  if (!(mu_reduction > 0.0 && mu_reduction < 1.0)) throw std::invalid_argument("mu_reduction must lie in (0,1)");
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using SparseMatrix = Eigen::SparseMatrix<double>;

struct FullEntry {
  int r;
  int c;
  double v;
};

// Per-block data laid out for the Schur complement computations.
class BlockOperator {
 public:
  explicit BlockOperator(const AffineBlock& b) : n_(b.size), d_(b.num_vars()) {
    constant_ = b.dense(-1);
    full_.resize(static_cast<std::size_t>(d_));
    std::size_t total = 0;
    for (int i = 0; i < d_; ++i) {
      auto& f = full_[static_cast<std::size_t>(i)];
      for (const auto& e : b.coefficients[static_cast<std::size_t>(i)]) {
        f.push_back({e.row, e.col, e.value});
        if (e.row != e.col) f.push_back({e.col, e.row, e.value});
      }
      total += f.size();
    }

    // Flop estimates of the two ways to form the d x d Schur block.
    double direct = 0.0;
    double prefix = 0.0;
    for (const auto& f : full_) {
      prefix += static_cast<double>(f.size());
      direct += static_cast<double>(f.size()) * prefix;
    }
    const double nn = static_cast<double>(n_) * n_;
    const double gemm = d_ * d_ * nn + 2.0 * n_ * static_cast<double>(total) + 2.0 * d_ * nn;
    use_gemm_ = gemm < direct;

    if (use_gemm_) {
      sparse_.resize(static_cast<std::size_t>(d_));
      heavy_.resize(static_cast<std::size_t>(d_));
      for (int i = 0; i < d_; ++i) {
        const auto& f = full_[static_cast<std::size_t>(i)];
        if (static_cast<double>(f.size()) > nn / 16.0) {
          heavy_[static_cast<std::size_t>(i)] = b.dense(i);
        } else {
          std::vector<Eigen::Triplet<double>> trips;
          trips.reserve(f.size());
          for (const auto& e : f) trips.emplace_back(e.r, e.c, e.v);
          auto& s = sparse_[static_cast<std::size_t>(i)];
          s.resize(n_, n_);
          s.setFromTriplets(trips.begin(), trips.end());
          s.makeCompressed();
        }
      }
    }
  }

  int size() const { return n_; }
  const MatrixXd& constant() const { return constant_; }

  // F0 + sum_i y_i F_i
  void evaluate(const VectorXd& y, MatrixXd& s) const {
    s = constant_;
    add_linear(y, s);
  }

  // sum_i y_i F_i
  void linear_part(const VectorXd& y, MatrixXd& s) const {
    s.setZero(n_, n_);
    add_linear(y, s);
  }

  // Adds <F_i, g> to out[i].
  void inner(const MatrixXd& g, VectorXd& out) const {
    for (int i = 0; i < d_; ++i) {
      double acc = 0.0;
      for (const auto& e : full_[static_cast<std::size_t>(i)]) acc += e.v * g(e.r, e.c);
      out[i] += acc;
    }
  }

  // Adds tr(F_i L F_j R) to m(i, j).
  void schur(const MatrixXd& l, const MatrixXd& r, MatrixXd& m) const {
    if (use_gemm_) {
      schur_gemm(l, r, m);
    } else {
      schur_direct(l, r, m);
    }
  }

 private:
  void add_linear(const VectorXd& y, MatrixXd& s) const {
    for (int i = 0; i < d_; ++i) {
      const double yi = y[i];
      if (yi == 0.0) continue;
      for (const auto& e : full_[static_cast<std::size_t>(i)]) s(e.r, e.c) += yi * e.v;
    }
  }

  void schur_direct(const MatrixXd& l, const MatrixXd& r, MatrixXd& m) const {
    for (int i = 0; i < d_; ++i) {
      const auto& fi = full_[static_cast<std::size_t>(i)];
      for (int j = 0; j <= i; ++j) {
        const auto& fj = full_[static_cast<std::size_t>(j)];
        double acc = 0.0;
        for (const auto& e : fi) {
          for (const auto& f : fj) acc += e.v * f.v * l(e.c, f.r) * r(f.c, e.r);
        }
        m(i, j) += acc;
        if (i != j) m(j, i) += acc;
      }
    }
  }

  // tr(F_i L F_j R) = sum_{a,b} (L F_j)_{ab} (F_i R)_{ab}, accumulated over
  // column panels so that only d * n * panel numbers are held at once.
  void schur_gemm(const MatrixXd& l, const MatrixXd& r, MatrixXd& m) const {
    constexpr double kPanelBytes = 64.0 * 1024 * 1024;
    const int panel = std::clamp(static_cast<int>(kPanelBytes / (16.0 * d_ * n_)), 1, n_);
    RowMajorMatrix us(d_, static_cast<Eigen::Index>(n_) * panel);
    RowMajorMatrix vs(d_, static_cast<Eigen::Index>(n_) * panel);
    MatrixXd acc = MatrixXd::Zero(d_, d_);
    for (int b0 = 0; b0 < n_; b0 += panel) {
      const int width = std::min(panel, n_ - b0);
      const Eigen::Index len = static_cast<Eigen::Index>(n_) * width;
      for (int i = 0; i < d_; ++i) {
        Eigen::Map<MatrixXd> u(us.row(i).data(), n_, width);
        Eigen::Map<MatrixXd> v(vs.row(i).data(), n_, width);
        const auto& dense = heavy_[static_cast<std::size_t>(i)];
        if (dense.size() > 0) {
          u.noalias() = l * dense.middleCols(b0, width);
          v.noalias() = dense * r.middleCols(b0, width);
        } else {
          const auto& s = sparse_[static_cast<std::size_t>(i)];
          u.noalias() = l * s.middleCols(b0, width);
          v.noalias() = s * r.middleCols(b0, width);
        }
      }
      acc.noalias() += vs.leftCols(len) * us.leftCols(len).transpose();
    }
    m += 0.5 * (acc + acc.transpose());
  }

  int n_;
  int d_;
  MatrixXd constant_;
  std::vector<std::vector<FullEntry>> full_;
  bool use_gemm_ = false;
  std::vector<SparseMatrix> sparse_;
  std::vector<MatrixXd> heavy_;
};

double min_eigenvalue(const MatrixXd& s) {
  if (s.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  return es.eigenvalues().minCoeff();
}

double frobenius_dot(const MatrixXd& a, const MatrixXd& b) { return (a.array() * b.array()).sum(); }

MatrixXd sym(const MatrixXd& a) { return 0.5 * (a + a.transpose()); }

// Largest alpha with M + alpha D >= 0 for M = L L^T; infinity when D >= 0.
double max_step(const Eigen::LLT<MatrixXd>& llt, const MatrixXd& d) {
  const auto l = llt.matrixL();
  MatrixXd x = l.solve(d);
  x.transposeInPlace();
  const double lowest = min_eigenvalue(sym(l.solve(x)));
  return lowest < 0.0 ? -1.0 / lowest : std::numeric_limits<double>::infinity();
}

// Schur complement solve; near-singular systems fall back to a symmetric
// indefinite factorisation with Tikhonov damping.
class SchurSolver {
 public:
  explicit SchurSolver(const MatrixXd& m) : llt_(m) {
    ok_ = llt_.info() == Eigen::Success;
    if (!ok_) {
      const double scale = std::max(1.0, m.diagonal().cwiseAbs().maxCoeff());
      MatrixXd damped = m;
      damped.diagonal().array() += 1e-12 * scale;
      ldlt_.compute(damped);
    }
  }
  VectorXd solve(const VectorXd& rhs) const { return ok_ ? VectorXd(llt_.solve(rhs)) : VectorXd(ldlt_.solve(rhs)); }

 private:
  Eigen::LLT<MatrixXd> llt_;
  Eigen::LDLT<MatrixXd> ldlt_;
  bool ok_ = false;
};

struct Direction {
  VectorXd dy;
  std::vector<MatrixXd> dx;
  std::vector<MatrixXd> dz;
};

}  // namespace

// Infeasible primal-dual path following on the pair
//   max c.y  s.t.  Z = F0 + sum_i y_i F_i >= 0,
//   min <F0, X>  s.t.  <F_i, X> = -c_i,  X >= 0,
// with the HKM search direction and a Mehrotra predictor-corrector. Each
// iteration is one Newton step on the perturbed optimality conditions XZ = mu I,
// reduced to the d x d Schur complement M_ij = sum_b tr(F_i X F_j Z^{-1}).
SdpSolution solve(const SdpProblem& prob, const SolverConfig& cfg, const SolveOptions& opts) {
  cfg.validate();
  prob.validate();
  const auto t0 = std::chrono::steady_clock::now();
  const int d = prob.num_vars;
  const std::size_t nb = prob.blocks.size();

  std::vector<BlockOperator> ops;
  for (const auto& b : prob.blocks) ops.emplace_back(b);
  const VectorXd c = Eigen::Map<const VectorXd>(prob.c.data(), d);

  double total_size = 0.0;
  double norm_f0 = 0.0;
  double max_fnorm = 0.0;
  std::vector<double> fnorm(static_cast<std::size_t>(d), 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    total_size += ops[b].size();
    norm_f0 += ops[b].constant().squaredNorm();
    for (int i = 0; i < d; ++i) {
      for (const auto& e : prob.blocks[b].coefficients[static_cast<std::size_t>(i)]) {
        fnorm[static_cast<std::size_t>(i)] += (e.row == e.col ? 1.0 : 2.0) * e.value * e.value;
      }
    }
  }
  norm_f0 = std::sqrt(norm_f0);
  for (auto& f : fnorm) {
    f = std::sqrt(f);
    max_fnorm = std::max(max_fnorm, f);
  }
  const double norm_c = d > 0 ? c.cwiseAbs().maxCoeff() : 0.0;

  // Starting point X = xi I, Z = eta I, y = 0, scaled to the data.
  std::vector<MatrixXd> x(nb);
  std::vector<MatrixXd> z(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    const double n = ops[b].size();
    double xi = 1.0;
    for (int i = 0; i < d; ++i) {
      xi = std::max(xi, n * (1.0 + std::abs(c[i])) / (1.0 + fnorm[static_cast<std::size_t>(i)]));
    }
    const double eta = (1.0 + std::max(max_fnorm, norm_f0)) / std::sqrt(n);
    const double scale = 10.0 * std::sqrt(cfg.initial_mu);
    x[b] = scale * xi * MatrixXd::Identity(ops[b].size(), ops[b].size());
    z[b] = scale * eta * MatrixXd::Identity(ops[b].size(), ops[b].size());
  }
  VectorXd y = VectorXd::Zero(d);

  SdpSolution sol;
  SolveStatus status = SolveStatus::kMaxIterations;
  std::vector<Eigen::LLT<MatrixXd>> lx(nb);
  std::vector<Eigen::LLT<MatrixXd>> lz(nb);
  std::vector<MatrixXd> zinv(nb);
  std::vector<MatrixXd> rd(nb);
  MatrixXd s;
  double gap = 0.0;

  for (int iter = 0;; ++iter) {
    bool factored = true;
    gap = 0.0;
    double rd_norm = 0.0;
    double primal_obj = 0.0;
    VectorXd rp = c;  // c_i + <F_i, X>
    for (std::size_t b = 0; b < nb; ++b) {
      lx[b].compute(x[b]);
      lz[b].compute(z[b]);
      if (lx[b].info() != Eigen::Success || lz[b].info() != Eigen::Success) {
        factored = false;
        break;
      }
      zinv[b] = lz[b].solve(MatrixXd::Identity(ops[b].size(), ops[b].size()));
      ops[b].evaluate(y, s);
      rd[b] = s - z[b];
      rd_norm += rd[b].squaredNorm();
      gap += frobenius_dot(x[b], z[b]);
      primal_obj += frobenius_dot(x[b], ops[b].constant());
      ops[b].inner(x[b], rp);
    }
    if (!factored) {
      status = SolveStatus::kNumericalFailure;
      break;
    }
    rd_norm = std::sqrt(rd_norm);
    const double value = c.dot(y);
    const double mu = gap / total_size;
    sol.history.push_back(BarrierStage{mu, gap, value, 1});
    sol.dual_value = primal_obj;

    const double pinf = rp.cwiseAbs().maxCoeff() / (1.0 + norm_c);
    const double dinf = rd_norm / (1.0 + norm_f0);
    const double tol_value = cfg.tol_gap * (1.0 + std::abs(value));
    if (gap <= tol_value && std::abs(primal_obj - value) <= tol_value && pinf <= cfg.tol_gap &&
        dinf <= cfg.tol_feas) {
      status = SolveStatus::kOptimal;
      break;
    }
    if (iter >= cfg.max_iterations) break;

    MatrixXd m = MatrixXd::Zero(d, d);
    for (std::size_t b = 0; b < nb; ++b) ops[b].schur(x[b], zinv[b], m);
    const SchurSolver schur(m);

    // dZ = Rd + sum_j dy_j F_j and dX = G - sym(X (sum_j dy_j F_j) Z^{-1}) with
    // G = sym(sigma mu Z^{-1} - X - X Rd Z^{-1} - corr); <F_i, dX> = -rp_i
    // then reads M dy = rp + <F, G>.
    std::vector<MatrixXd> xrz(nb);
    for (std::size_t b = 0; b < nb; ++b) xrz[b] = x[b] * rd[b] * zinv[b];
    const auto direction = [&](double target_mu, const std::vector<MatrixXd>* corr) {
      Direction dir;
      VectorXd rhs = rp;
      std::vector<MatrixXd> g(nb);
      for (std::size_t b = 0; b < nb; ++b) {
        g[b] = target_mu * zinv[b] - x[b] - xrz[b];
        if (corr != nullptr) g[b] -= (*corr)[b];
        g[b] = sym(g[b]);
        ops[b].inner(g[b], rhs);
      }
      dir.dy = schur.solve(rhs);
      dir.dx.resize(nb);
      dir.dz.resize(nb);
      MatrixXd lin;
      for (std::size_t b = 0; b < nb; ++b) {
        ops[b].linear_part(dir.dy, lin);
        dir.dz[b] = rd[b] + lin;
        dir.dx[b] = g[b] - sym(x[b] * lin * zinv[b]);
      }
      return dir;
    };
    const auto step_lengths = [&](const Direction& dir) {
      double ap = 1.0;
      double ad = 1.0;
      for (std::size_t b = 0; b < nb; ++b) {
        ap = std::min(ap, 0.95 * max_step(lx[b], dir.dx[b]));
        ad = std::min(ad, 0.95 * max_step(lz[b], dir.dz[b]));
      }
      return std::pair{ap, ad};
    };
    const auto gap_after = [&](const Direction& dir, double ap, double ad) {
      double g = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        g += frobenius_dot(x[b] + ap * dir.dx[b], z[b] + ad * dir.dz[b]);
      }
      return g;
    };

    const Direction pred = direction(0.0, nullptr);
    const auto [pp, pd] = step_lengths(pred);
    const double ratio = std::max(0.0, gap_after(pred, pp, pd) / gap);
    const double sigma = std::min(cfg.mu_reduction, ratio * ratio * ratio);
    std::vector<MatrixXd> corr(nb);
    for (std::size_t b = 0; b < nb; ++b) corr[b] = pred.dx[b] * pred.dz[b] * zinv[b];
    const Direction dir = direction(sigma * mu, &corr);
    auto [ap, ad] = step_lengths(dir);
    if (!dir.dy.allFinite() || !(ap > 0.0) || !(ad > 0.0)) {
      status = SolveStatus::kNumericalFailure;
      break;
    }
    // Keep the complementarity gap non-increasing.
    for (int k = 0; k < 30 && gap_after(dir, ap, ad) > gap; ++k) {
      ap *= 0.5;
      ad *= 0.5;
    }

    for (std::size_t b = 0; b < nb; ++b) {
      x[b] += ap * dir.dx[b];
      z[b] += ad * dir.dz[b];
    }
    y += ad * dir.dy;
    ++sol.iterations;
    if (opts.record_iterates) sol.iterates.emplace_back(y.data(), y.data() + d);
  }

  sol.y.assign(y.data(), y.data() + d);
  sol.value = c.dot(y);
  sol.gap = gap;
  sol.dual = x;
  VectorXd rp = c;
  for (std::size_t b = 0; b < nb; ++b) ops[b].inner(x[b], rp);
  sol.dual_residual = d > 0 ? rp.cwiseAbs().maxCoeff() / (1.0 + norm_c) : 0.0;
  const CertificateCheck cert = check_certificate(prob, sol.y, cfg.tol_feas);
  sol.block_min_eig = cert.min_eig;
  sol.min_eig = cert.min_eig.empty() ? 0.0 : *std::min_element(cert.min_eig.begin(), cert.min_eig.end());
  if (status == SolveStatus::kOptimal && !cert.valid) status = SolveStatus::kNumericalFailure;
  sol.status = status;
  sol.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return sol;
}

CertificateCheck check_certificate(const SdpProblem& prob, std::span<const double> y, double tol) {
  if (static_cast<int>(y.size()) != prob.num_vars) {
    throw std::invalid_argument("certificate has " + std::to_string(y.size()) + " entries, problem has " +
                                std::to_string(prob.num_vars) + " variables");
  }
  CertificateCheck out;
  out.valid = true;
  for (const auto& b : prob.blocks) {
    const double ev = min_eigenvalue(b.evaluate(y));
    out.min_eig.push_back(ev);
    if (!(ev >= -tol)) out.valid = false;
  }
  return out;
}

}  // namespace paley
