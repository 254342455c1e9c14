// paley_bounds: clique-number bounds for Paley graphs.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "paley/clique.hpp"
#include "paley/field_graph.hpp"
#include "paley/l2_model.hpp"
#include "paley/orbits.hpp"
#include "paley/report.hpp"
#include "paley/sdp_solver.hpp"
#include "paley/sdpa_io.hpp"

namespace {

using namespace paley;

struct Globals {
  SolverConfig solver;
  std::uint64_t budget = RunConfig{}.clique_budget;
  std::string out;
};

// Writes to --out when given, stdout otherwise.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<double> read_vector(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<double> v;
  std::string token;
  while (in >> token) v.push_back(std::stod(token));
  return v;
}

int cmd_graph(const Globals& g, int p, bool adjacency) {
  const PaleyGraph graph = build_graph(p);
  Output out(g.out);
  auto& os = out.stream();
  fmt::print(os, "p {}\nvertices {}\ndegree {}\n", p, graph.order(), graph.degree(0));
  fmt::print(os, "residues {}\n", fmt::join(graph.residues(), " "));
  const VertexPermutation iso = complement_isomorphism(graph);
  fmt::print(os, "complement_isomorphism u -> {}u ({})\n", iso.multiplier,
             is_complement_isomorphism(graph, iso) ? "verified" : "FAILED");
  if (adjacency) {
    for (int u = 0; u < p; ++u) {
      std::string row;
      for (int v = 0; v < p; ++v) row += graph.adjacent(u, v) ? '1' : '0';
      fmt::print(os, "{}\n", row);
    }
  }
  return 0;
}

int cmd_orbits(const Globals& g, int p) {
  const TriangleOrbitSet orbits = enumerate_orbits(build_graph(p));
  Output out(g.out);
  write_orbits(out.stream(), orbits);
  return 0;
}

int cmd_l2(const Globals& g, int p, const std::string& save_y) {
  const PaleyGraph graph = build_graph(p);
  const TriangleOrbitSet orbits = enumerate_orbits(graph);
  const SdpProblem prob = to_problem(reduce_and_assemble(graph, orbits));
  const SdpSolution sol = solve(prob, g.solver);
  Output out(g.out);
  auto& os = out.stream();
  fmt::print(os, "p {}\nm {}\nvariables {}\nl2 {:.6f}\nupper {:.6f}\nstatus {}\niterations {}\ngap {:.3e}\n", p,
             orbits.m(), prob.num_vars, sol.value, sol.dual_value, to_string(sol.status), sol.iterations, sol.gap);
  fmt::print(os, "min_eig {:.3e}\nwall_time_s {:.3f}\n", sol.min_eig, sol.wall_time);
  if (!save_y.empty()) {
    std::ofstream f(save_y);
    if (!f) throw std::runtime_error("cannot write " + save_y);
    for (const double v : sol.y) fmt::print(f, "{:.17g}\n", v);
  }
  return sol.status == SolveStatus::kOptimal ? 0 : 1;
}

int cmd_theta(const Globals& g, int p, bool sdp) {
  const PaleyGraph graph = build_graph(p);
  Output out(g.out);
  auto& os = out.stream();
  fmt::print(os, "p {}\ntheta_closed_form {:.6f}\n", p, theta_eigenvalue(graph));
  if (!sdp) return 0;
  const SdpSolution sol = lovasz_theta_sdp(graph, g.solver);
  fmt::print(os, "theta_sdp {:.6f}\nstatus {}\niterations {}\n", sol.value, to_string(sol.status), sol.iterations);
  return sol.status == SolveStatus::kOptimal ? 0 : 1;
}

int cmd_omega(const Globals& g, int p, bool full) {
  const PaleyGraph graph = build_graph(p);
  const CliqueResult r = clique_number(graph, g.budget, full ? CliqueSearch::kFullGraph : CliqueSearch::kEdgeRooted);
  Output out(g.out);
  auto& os = out.stream();
  fmt::print(os, "p {}\nomega {}\ncertified {}\nnodes {}\nwitness {}\n", p, r.omega, r.certified, r.nodes_explored,
             fmt::join(r.witness, " "));
  return r.certified ? 0 : 1;
}

int cmd_hp(const Globals& g, int p) {
  require_paley_prime(p);
  Output out(g.out);
  fmt::print(out.stream(), "p {}\nhp {:.6f}\n", p, hp_bound(p));
  return 0;
}

int cmd_range(const Globals& g, int p_min, int p_max, int jobs, bool theta_sdp) {
  RunConfig cfg;
  cfg.solver = g.solver;
  cfg.clique_budget = g.budget;
  cfg.jobs = jobs;
  cfg.theta_sdp = theta_sdp;
  const auto records = run_range(p_min, p_max, cfg, [](const BoundsRecord& r) {
    fmt::print(std::cerr, "p={} l2={:.3f} omega={}{} status={} ({:.1f}s)\n", r.p, r.l2, r.omega,
               r.omega_certified ? "" : "+", to_string(r.status), r.wall_time_s);
  });
  Output out(g.out);
  write_csv(out.stream(), records);
  bool all_optimal = true;
  for (const auto& r : records) all_optimal = all_optimal && r.status == SolveStatus::kOptimal;
  return all_optimal ? 0 : 1;
}

int cmd_fit(const Globals& g, const std::string& csv, const std::vector<std::string>& columns) {
  const auto records = read_csv(std::filesystem::path(csv));
  Output out(g.out);
  auto& os = out.stream();
  fmt::print(os, "column,a,b,r2,n\n");
  for (const auto& name : columns) {
    const auto col = parse_column(name);
    if (!col) throw CLI::ValidationError("--column", "unknown column " + name);
    const FitResult f = fit_power(records, *col);
    fmt::print(os, "{},{:.6f},{:.6f},{:.6f},{}\n", name, f.a, f.b, f.r2, f.n_points);
  }
  return 0;
}

int cmd_plot(const Globals& g, const std::string& csv, const std::string& external, bool no_fit) {
  if (g.out.empty()) throw CLI::ValidationError("--out", "plot needs --out");
  const auto records = read_csv(std::filesystem::path(csv));
  std::vector<SeriesFit> fits;
  if (!no_fit) {
    for (const Column c : {Column::kTheta, Column::kL2, Column::kOmega}) {
      try {
        fits.push_back({c, fit_power(records, c)});
      } catch (const std::invalid_argument&) {
        // too few points for this series
      }
    }
  }
  PlotOptions opts;
  if (!external.empty()) opts.external = read_points_csv(std::filesystem::path(external));
  plot_bounds(records, fits, g.out, opts);
  return 0;
}

int cmd_export(const Globals& g, int p) {
  if (g.out.empty()) throw CLI::ValidationError("--out", "export-sdpa needs --out");
  const PaleyGraph graph = build_graph(p);
  write_sdpa(std::filesystem::path(g.out), to_problem(reduce_and_assemble(graph, enumerate_orbits(graph))));
  return 0;
}

int cmd_check(const Globals& g, const std::string& sdpa, const std::string& y_path) {
  const SdpProblem prob = read_sdpa(std::filesystem::path(sdpa));
  const std::vector<double> y = read_vector(y_path);
  const CertificateCheck check = check_certificate(prob, y, g.solver.tol_feas);
  Output out(g.out);
  auto& os = out.stream();
  double objective = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) objective += prob.c[i] * y[i];
  fmt::print(os, "objective {:.6f}\n", objective);
  for (std::size_t b = 0; b < check.min_eig.size(); ++b) {
    fmt::print(os, "block {} size {} min_eig {:.3e}\n", b + 1, prob.blocks[b].size, check.min_eig[b]);
  }
  fmt::print(os, "valid {}\n", check.valid);
  return check.valid ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clique-number bounds for Paley graphs G_p"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol-gap", g.solver.tol_gap, "Relative duality gap tolerance")->capture_default_str();
  app.add_option("--tol-feas", g.solver.tol_feas, "PSD feasibility slack")->capture_default_str();
  app.add_option("--max-iter", g.solver.max_iterations, "Solver iteration limit")->capture_default_str();
  app.add_flag("--deterministic,!--no-deterministic", g.solver.deterministic, "Reproducible solver runs");
  app.add_option("--budget", g.budget, "Clique search node budget")->capture_default_str();
  app.add_option("--out", g.out, "Output file (default stdout)");

  int p = 0;
  auto add_prime = [&](CLI::App* sub) { sub->add_option("p", p, "Prime p = 1 mod 4")->required(); };

  auto* graph = app.add_subcommand("graph", "Graph summary");
  add_prime(graph);
  bool adjacency = false;
  graph->add_flag("--adjacency", adjacency, "Print the adjacency matrix");

  auto* orbits = app.add_subcommand("orbits", "Edge-free triangle orbit representatives");
  add_prime(orbits);

  auto* l2 = app.add_subcommand("l2", "Solve the L2 relaxation");
  add_prime(l2);
  std::string save_y;
  l2->add_option("--save-y", save_y, "Write the solution vector, one value per line");

  auto* theta = app.add_subcommand("theta", "Lovasz theta");
  add_prime(theta);
  bool theta_sdp = false;
  theta->add_flag("--sdp", theta_sdp, "Also solve the theta SDP");

  auto* omega = app.add_subcommand("omega", "Exact clique number");
  add_prime(omega);
  bool full = false;
  omega->add_flag("--full", full, "Search the whole graph instead of cliques through the edge {0,1}");

  auto* hp = app.add_subcommand("hp", "Hanson-Petridis bound");
  add_prime(hp);

  auto* range = app.add_subcommand("range", "Bounds for every prime in a range, as CSV");
  int p_min = 0;
  int p_max = 0;
  int jobs = 1;
  bool range_theta_sdp = false;
  range->add_option("p_min", p_min)->required();
  range->add_option("p_max", p_max)->required();
  range->add_option("--jobs", jobs, "Primes solved concurrently")->check(CLI::PositiveNumber);
  range->add_flag("--theta-sdp", range_theta_sdp, "Solve the theta SDP for the theta column");

  auto* fit = app.add_subcommand("fit", "Power-law fits a p^b of CSV columns");
  std::string csv;
  std::vector<std::string> columns{"theta", "l2", "omega"};
  fit->add_option("csv", csv)->required()->check(CLI::ExistingFile);
  fit->add_option("--column", columns, "theta, l2, omega or hp")->capture_default_str();

  auto* plot = app.add_subcommand("plot", "Log-log SVG plot of a CSV");
  std::string external;
  bool no_fit = false;
  plot->add_option("csv", csv)->required()->check(CLI::ExistingFile);
  plot->add_option("--external", external, "CSV of 'p,value' points to overlay")->check(CLI::ExistingFile);
  plot->add_flag("--no-fit", no_fit, "Omit fitted curves");

  auto* exp = app.add_subcommand("export-sdpa", "Write the L2 instance in sparse SDPA format");
  add_prime(exp);

  auto* check = app.add_subcommand("check-cert", "Check a solution vector against an SDPA instance");
  std::string sdpa;
  std::string y_path;
  check->add_option("sdpa", sdpa)->required()->check(CLI::ExistingFile);
  check->add_option("y", y_path, "File of y values")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    g.solver.validate();
    if (graph->parsed()) return cmd_graph(g, p, adjacency);
    if (orbits->parsed()) return cmd_orbits(g, p);
    if (l2->parsed()) return cmd_l2(g, p, save_y);
    if (theta->parsed()) return cmd_theta(g, p, theta_sdp);
    if (omega->parsed()) return cmd_omega(g, p, full);
    if (hp->parsed()) return cmd_hp(g, p);
    if (range->parsed()) return cmd_range(g, p_min, p_max, jobs, range_theta_sdp);
    if (fit->parsed()) return cmd_fit(g, csv, columns);
    if (plot->parsed()) return cmd_plot(g, csv, external, no_fit);
    if (exp->parsed()) return cmd_export(g, p);
    if (check->parsed()) return cmd_check(g, sdpa, y_path);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return 2;
  }
  return 2;
}
