// End-to-end acceptance run: one PASS/FAIL line per criterion.
//   acceptance [--smoke] [--small-max N]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "oracles.hpp"
#include "paley/clique.hpp"
#include "paley/l2_model.hpp"
#include "paley/report.hpp"
#include "paley/sdpa_io.hpp"

using namespace paley;

namespace {

struct TableRow {
  int p;
  double theta;
  double l2;
  int omega;
};

const std::vector<TableRow> kTable = {
    {821, 28.653, 18.673, 12}, {829, 28.792, 18.105, 11}, {853, 29.206, 18.909, 13}, {857, 29.275, 18.429, 13},
    {877, 29.614, 19.711, 13}, {881, 29.682, 18.689, 11}, {929, 30.48, 19.292, 13},  {937, 30.61, 19.248, 11},
    {941, 30.676, 19.34, 11},  {953, 30.871, 19.199, 11}, {977, 31.257, 19.737, 13}, {997, 31.575, 20.058, 13},
};

constexpr double kTableTol = 0.01;
constexpr double kBoundTol = 1e-6;

struct Run {
  int p = 0;
  SdpProblem prob;
  SdpSolution sol;
  CliqueResult clique;
  BoundsRecord rec;
};

struct Verdict {
  bool pass = true;
  std::vector<std::string> failures;
  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
};

void report(int id, const std::string& title, const Verdict& v, const std::string& summary) {
  fmt::print("CRITERION {} {}: {} ({})\n", id, v.pass ? "PASS" : "FAIL", title, summary);
  for (std::size_t k = 0; k < v.failures.size() && k < 20; ++k) fmt::print("    {}\n", v.failures[k]);
  if (v.failures.size() > 20) fmt::print("    ... {} more\n", v.failures.size() - 20);
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

double round3(double x) { return std::round(x * 1000.0) / 1000.0; }

Run run_pipeline(int p, const SolverConfig& cfg, std::uint64_t budget) {
  Run r;
  r.p = p;
  const PaleyGraph g = build_graph(p);
  const TriangleOrbitSet orbits = enumerate_orbits(g);
  r.prob = to_problem(reduce_and_assemble(g, orbits));
  r.sol = solve(r.prob, cfg);
  r.sol.dual.clear();
  r.clique = clique_number(g, budget);
  r.rec.p = p;
  r.rec.theta = theta_eigenvalue(p);
  r.rec.l2 = r.sol.status == SolveStatus::kOptimal ? r.sol.value : std::nan("");
  r.rec.omega = r.clique.omega;
  r.rec.omega_certified = r.clique.certified;
  r.rec.hp = hp_bound(p);
  r.rec.m = orbits.m();
  r.rec.iterations = r.sol.iterations;
  r.rec.wall_time_s = r.sol.wall_time;
  r.rec.status = r.sol.status;
  return r;
}

// Criterion 5 for one prime.
void check_orbits(int p, Verdict& v) {
  const PaleyGraph g = build_graph(p);
  const TriangleOrbitSet o = enumerate_orbits(g);
  oracle::TripleOrbits uf(g);

  std::vector<int> cover(static_cast<std::size_t>(p) * p, 0);
  for (const auto& rep : o.representatives()) {
    const OrbitIndicatorMatrix x = indicator_matrix(o, rep.pair);
    for (const auto& [i, j] : x.pairs) {
      ++cover[static_cast<std::size_t>(i) * p + j];
      if (uf.root(0, i, j) != uf.root(0, rep.pair.alpha, rep.pair.beta)) {
        v.fail(fmt::format("p={}: pair ({},{}) filed under orbit ({},{}) of another class", p, i, j, rep.pair.alpha,
                           rep.pair.beta));
      }
    }
    for (int i = 1; i < p; ++i) {
      if (x.at(i, i) != 0) v.fail(fmt::format("p={}: nonzero indicator diagonal", p));
    }
  }
  std::map<int, int> classes;
  for (int i = 1; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const bool free = !g.adjacent(0, i) && !g.adjacent(0, j) && !g.adjacent(i, j);
      const int c = cover[static_cast<std::size_t>(i) * p + j];
      if (c != (free ? 1 : 0)) v.fail(fmt::format("p={}: pair ({},{}) covered {} times", p, i, j, c));
      if (free) classes.try_emplace(uf.root(0, i, j), 0);
    }
  }
  if (static_cast<int>(classes.size()) != o.m()) {
    v.fail(fmt::format("p={}: m={} but {} orbit classes by union-find", p, o.m(), classes.size()));
  }
  const double approx = (p - 5) / 24.0;
  if (o.m() < approx - 2.0 || o.m() > approx + 2.0) v.fail(fmt::format("p={}: m={} far from (p-5)/24", p, o.m()));

  if (o.m() == 0) return;
  std::mt19937 rng(static_cast<unsigned>(p));
  const auto res = g.residues();
  for (int trial = 0; trial < 100; ++trial) {
    std::array<int, 3> t{};
    do {
      t = {static_cast<int>(rng() % p), static_cast<int>(rng() % p), static_cast<int>(rng() % p)};
    } while (t[0] == t[1] || t[0] == t[2] || t[1] == t[2] || g.adjacent(t[0], t[1]) || g.adjacent(t[0], t[2]) ||
             g.adjacent(t[1], t[2]));
    const Automorphism phi = make_automorphism(g, res[rng() % res.size()], static_cast<int>(rng() % p));
    const auto a = orbit_of_triangle(o, t);
    const auto b = orbit_of_triangle(o, {phi(t[0]), phi(t[1]), phi(t[2])});
    if (!a || !b || *a != *b) v.fail(fmt::format("p={}: orbit_of_triangle changes under an automorphism", p));
  }
}

// Criterion 6 for one prime.
void check_assembly(int p, Verdict& v) {
  const PaleyGraph g = build_graph(p);
  const TriangleOrbitSet o = enumerate_orbits(g);
  const L2Instance inst = reduce_and_assemble(g, o);
  if (inst.blocks.size() != 2 || inst.blocks[0].size != p || inst.blocks[1].size != (p + 1) / 2) {
    v.fail(fmt::format("p={}: block sizes wrong", p));
    return;
  }
  std::map<VertexSet, AffineBlock> parts;
  parts.emplace(VertexSet{}, build_A_empty(g, inst.vars));
  parts.emplace(VertexSet{0}, build_A_zero(g, o, inst.vars));
  const AffineBlock ie = inclusion_exclusion({}, {0}, parts);
  for (int var = -1; var < inst.vars.size(); ++var) {
    const Eigen::MatrixXd expect = parts.at({}).dense(var) - parts.at({0}).dense(var);
    if (ie.dense(var) != expect) v.fail(fmt::format("p={}: inclusion-exclusion differs on variable {}", p, var));
    Eigen::MatrixXd reduced(p, p);
    for (int a = 0; a < p; ++a) {
      for (int b = 0; b < p; ++b) reduced(a, b) = expect(inst.kept_3c[a], inst.kept_3c[b]);
    }
    if (inst.blocks[0].dense(var) != reduced) v.fail(fmt::format("p={}: block 3c differs on variable {}", p, var));
  }
  const std::vector<double> zero(static_cast<std::size_t>(inst.vars.size()), 0.0);
  for (const auto& b : inst.blocks) {
    if (min_eig(b.evaluate(zero)) < 0.0) v.fail(fmt::format("p={}: block {} not PSD at y=0", p, b.name));
  }
  const SdpProblem prob = to_problem(inst);
  std::stringstream first;
  write_sdpa(first, prob);
  std::stringstream in(first.str());
  const SdpProblem back = read_sdpa(in);
  std::stringstream second;
  write_sdpa(second, back);
  bool same = back.num_vars == prob.num_vars && back.c == prob.c && back.blocks.size() == prob.blocks.size();
  for (std::size_t b = 0; same && b < prob.blocks.size(); ++b) {
    same = back.blocks[b].size == prob.blocks[b].size && back.blocks[b].constant == prob.blocks[b].constant &&
           back.blocks[b].coefficients == prob.blocks[b].coefficients;
  }
  if (!same || first.str() != second.str()) v.fail(fmt::format("p={}: SDPA round trip not identical", p));
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = false;
  int small_max = 200;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--smoke") {
      smoke = true;
    } else if (a == "--small-max" && k + 1 < argc) {
      small_max = std::atoi(argv[++k]);
    } else {
      fmt::print(stderr, "usage: acceptance [--smoke] [--small-max N]\n");
      return 2;
    }
  }
  const auto t0 = std::chrono::steady_clock::now();
  const SolverConfig cfg;
  const RunConfig run_cfg;

  std::vector<TableRow> table;
  for (const auto& row : kTable) {
    if (!smoke || row.p == 821 || row.p == 853) table.push_back(row);
  }
  const std::vector<int> small = paley_primes(5, small_max);
  std::vector<Run> runs;
  for (const int p : small) runs.push_back(run_pipeline(p, cfg, run_cfg.clique_budget));
  for (const auto& row : table) {
    runs.push_back(run_pipeline(row.p, cfg, run_cfg.clique_budget));
    const Run& r = runs.back();
    fmt::print(stderr, "p={} L2={:.6f} status={} iters={} {:.1f}s omega={}{}\n", r.p, r.sol.value,
               to_string(r.sol.status), r.sol.iterations, r.sol.wall_time, r.clique.omega,
               r.clique.certified ? "" : " (uncertified)");
  }
  std::map<int, const Run*> by_p;
  for (const auto& r : runs) by_p[r.p] = &r;
  bool all = true;

  {  // 1
    Verdict v;
    double worst = 0.0;
    for (const auto& row : table) {
      const Run& r = *by_p.at(row.p);
      const double err = std::abs(r.sol.value - row.l2);
      worst = std::max(worst, err);
      if (r.sol.status != SolveStatus::kOptimal) v.fail(fmt::format("p={}: status {}", row.p, to_string(r.sol.status)));
      if (err > kTableTol) v.fail(fmt::format("p={}: L2={:.6f}, table {:.3f}", row.p, r.sol.value, row.l2));
    }
    report(1, "Table 1 L2 values", v, fmt::format("{} primes, max |diff| {:.4f}", table.size(), worst));
    all = all && v.pass;
  }
  {  // 2
    Verdict v;
    double worst = 0.0;
    for (const int p : {13, 29, 61, 101}) {
      const SdpSolution s = lovasz_theta_sdp(build_graph(p), cfg, ThetaFormulation::kDense);
      worst = std::max(worst, std::abs(s.value - std::sqrt(p)));
      if (s.status != SolveStatus::kOptimal || std::abs(s.value - std::sqrt(p)) > 1e-3) {
        v.fail(fmt::format("p={}: theta SDP {:.6f} ({})", p, s.value, to_string(s.status)));
      }
    }
    for (const auto& r : runs) {
      if (round3(r.rec.theta) != round3(std::sqrt(r.p))) v.fail(fmt::format("p={}: theta column {}", r.p, r.rec.theta));
    }
    for (const auto& row : table) {
      if (round3(by_p.at(row.p)->rec.theta) != row.theta) {
        v.fail(fmt::format("p={}: theta {:.3f}, table {:.3f}", row.p, by_p.at(row.p)->rec.theta, row.theta));
      }
    }
    report(2, "theta oracle", v, fmt::format("SDP max |theta - sqrt p| {:.2e}; {} column rows", worst, runs.size()));
    all = all && v.pass;
  }
  {  // 3
    Verdict v;
    int checked = 0;
    for (const auto& r : runs) {
      if (r.sol.status != SolveStatus::kOptimal) continue;
      if (r.clique.certified) {
        ++checked;
        if (!(r.clique.omega <= r.sol.value + kBoundTol)) {
          v.fail(fmt::format("p={}: omega {} > L2 {:.6f}", r.p, r.clique.omega, r.sol.value));
        }
      }
      if (!(r.sol.value <= std::sqrt(r.p) + kBoundTol)) {
        v.fail(fmt::format("p={}: L2 {:.6f} > sqrt p", r.p, r.sol.value));
      }
    }
    for (const auto& row : table) {
      const Run& r = *by_p.at(row.p);
      if (!(r.sol.value < r.rec.hp)) v.fail(fmt::format("p={}: L2 {:.6f} >= HP {:.6f}", row.p, r.sol.value, r.rec.hp));
    }
    report(3, "omega <= L2 <= theta, L2 < HP on table primes", v,
           fmt::format("{} certified rows, {} table rows", checked, table.size()));
    all = all && v.pass;
  }
  {  // 4
    Verdict v;
    for (const int p : {5, 13, 17, 29}) {
      const auto start = std::chrono::steady_clock::now();
      const int exact = oracle::brute_force_clique(p, 8);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      for (const auto mode : {CliqueSearch::kFullGraph, CliqueSearch::kEdgeRooted}) {
        const CliqueResult c = clique_number(build_graph(p), run_cfg.clique_budget, mode);
        if (!c.certified || c.omega != exact) v.fail(fmt::format("p={}: B&B {} vs enumeration {}", p, c.omega, exact));
      }
      if (secs > 1.0) v.fail(fmt::format("p={}: enumeration took {:.2f}s", p, secs));
    }
    int certified = 0;
    for (const auto& row : table) {
      const Run& r = *by_p.at(row.p);
      if (!is_clique(build_graph(row.p), r.clique.witness) ||
          static_cast<int>(r.clique.witness.size()) != r.clique.omega) {
        v.fail(fmt::format("p={}: witness is not a clique of the reported size", row.p));
      }
      if (r.clique.certified) {
        ++certified;
        if (r.clique.omega != row.omega) v.fail(fmt::format("p={}: omega {} vs table {}", row.p, r.clique.omega, row.omega));
      } else if (r.clique.omega > row.omega) {
        v.fail(fmt::format("p={}: uncertified clique {} exceeds table {}", row.p, r.clique.omega, row.omega));
      }
    }
    report(4, "exact clique oracle", v, fmt::format("{}/{} table rows certified", certified, table.size()));
    all = all && v.pass;
  }
  {  // 5
    Verdict v;
    for (const int p : small) check_orbits(p, v);
    report(5, "orbit structure", v, fmt::format("{} primes <= {}", small.size(), small_max));
    all = all && v.pass;
  }
  {  // 6
    Verdict v;
    for (const auto& r : runs) check_assembly(r.p, v);
    report(6, "assembly", v, fmt::format("{} primes", runs.size()));
    all = all && v.pass;
  }
  {  // 7
    Verdict v;
    std::vector<double> px;
    std::vector<double> py;
    for (const int p : paley_primes(5, 1000)) {
      px.push_back(p);
      py.push_back(2.0 * std::pow(p, 0.5));
    }
    const FitResult exact = fit_power(px, py);
    if (std::abs(exact.a - 2.0) > 1e-10 || std::abs(exact.b - 0.5) > 1e-10) {
      v.fail(fmt::format("synthetic fit a={:.12f} b={:.12f}", exact.a, exact.b));
    }
    std::vector<BoundsRecord> records;
    for (const auto& r : runs) records.push_back(r.rec);
    const FitResult theta = fit_power(records, Column::kTheta);
    if (std::abs(theta.b - 0.5) > 1e-6 || std::abs(theta.a - 1.0) > 1e-6) {
      v.fail(fmt::format("theta fit a={:.8f} b={:.8f}", theta.a, theta.b));
    }
    const FitResult l2 = fit_power(records, Column::kL2);
    if (!(l2.b < 0.5)) v.fail(fmt::format("L2 fit exponent {:.4f}", l2.b));
    report(7, "power-law fits", v,
           fmt::format("L2 ~ {:.4f} p^{:.4f} over {} primes (r2 {:.4f})", l2.a, l2.b, l2.n_points, l2.r2));
    all = all && v.pass;
  }
  {  // 8
    Verdict v;
    SolveOptions opts;
    opts.record_iterates = true;
    std::vector<int> repeat = {small.back()};
    if (!table.empty()) repeat.push_back(table.front().p);
    for (const int p : repeat) {
      const SdpProblem& prob = by_p.at(p)->prob;
      const SdpSolution a = solve(prob, cfg, opts);
      const SdpSolution b = solve(prob, cfg, opts);
      if (a.iterates != b.iterates || a.y != b.y || a.value != by_p.at(p)->sol.value) {
        v.fail(fmt::format("p={}: repeated solves differ", p));
      }
    }
    int stages = 0;
    for (const auto& r : runs) {
      if (r.sol.status == SolveStatus::kOptimal) {
        const CertificateCheck c = check_certificate(r.prob, r.sol.y, cfg.tol_feas);
        if (!c.valid) v.fail(fmt::format("p={}: converged y fails the certificate check", r.p));
      }
      for (std::size_t k = 1; k < r.sol.history.size(); ++k) {
        ++stages;
        if (r.sol.history[k].gap > r.sol.history[k - 1].gap + 1e-12) {
          v.fail(fmt::format("p={}: gap rises at iteration {}: {:.3e} -> {:.3e}", r.p, k, r.sol.history[k - 1].gap,
                             r.sol.history[k].gap));
        }
      }
    }
    report(8, "solver integrity", v,
           fmt::format("{} repeat solves, {} certificates, {} gap steps", repeat.size(), runs.size(), stages));
    all = all && v.pass;
  }

  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  fmt::print("{} ({:.0f}s, {})\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL", secs, smoke ? "smoke" : "full");
  return all ? 0 : 1;
}
