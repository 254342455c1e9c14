#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paley/sdp_solver.hpp"

namespace paley {

struct RunConfig {
  SolverConfig solver;
  std::uint64_t clique_budget = 100'000'000;  // branch-and-bound nodes
  bool theta_sdp = false;                     // solve the theta SDP instead of using sqrt(p)
  int jobs = 1;                               // primes solved concurrently by run_range
};

struct BoundsRecord {
  int p = 0;
  double theta = 0.0;
  double l2 = 0.0;  // NaN when the solve did not reach Optimal
  int omega = 0;    // exact when omega_certified, otherwise the best clique found
  bool omega_certified = false;
  double hp = 0.0;
  int m = 0;
  int iterations = 0;
  double wall_time_s = 0.0;
  SolveStatus status = SolveStatus::kNumericalFailure;
};

// Primes p = 1 (mod 4) in [p_min, p_max], ascending. Throws when p_min > p_max.
std::vector<int> paley_primes(int p_min, int p_max);

BoundsRecord run_prime(int p, const RunConfig& cfg);

// Called once per finished prime, in completion order.
using ProgressFn = std::function<void(const BoundsRecord&)>;

// One record per prime of paley_primes(p_min, p_max), sorted by p.
std::vector<BoundsRecord> run_range(int p_min, int p_max, const RunConfig& cfg, const ProgressFn& progress = {});

inline constexpr const char* kCsvHeader = "p,theta,l2,omega,omega_certified,hp,m,iterations,wall_time_s";

// Reals to 3 decimals; a failed solve prints l2 as "nan".
void write_csv(std::ostream& out, const std::vector<BoundsRecord>& records);
void write_csv(const std::filesystem::path& path, const std::vector<BoundsRecord>& records);
// Status is Optimal exactly for rows with a finite l2.
std::vector<BoundsRecord> read_csv(std::istream& in);
std::vector<BoundsRecord> read_csv(const std::filesystem::path& path);

enum class Column { kTheta, kL2, kOmega, kHp };

std::string to_string(Column c);
std::optional<Column> parse_column(const std::string& name);
double column_value(const BoundsRecord& r, Column c);

struct FitResult {
  double a = 0.0;
  double b = 0.0;
  double r2 = 0.0;
  int n_points = 0;
};

// value ~ a p^b by ordinary least squares of log(value) on log(p).
// Needs at least 3 points and positive data; throws std::invalid_argument otherwise.
FitResult fit_power(const std::vector<double>& p, const std::vector<double>& value);
// Rows with a NaN in the column (failed solves) are skipped.
FitResult fit_power(const std::vector<BoundsRecord>& records, Column column);

struct SeriesFit {
  Column column;
  FitResult fit;
};

struct ExternalPoint {
  int p = 0;
  double value = 0.0;
};

// "p,value" lines; a non-numeric first line is taken as a header.
std::vector<ExternalPoint> read_points_csv(std::istream& in);
std::vector<ExternalPoint> read_points_csv(const std::filesystem::path& path);

struct PlotOptions {
  int width = 800;
  int height = 560;
  std::vector<ExternalPoint> external;    // drawn as its own series
  std::string external_label = "L3 (external)";
};

// Log-log scatter of theta, L2 and omega with the HP curve and fitted power laws.
std::string render_svg(const std::vector<BoundsRecord>& records, const std::vector<SeriesFit>& fits,
                       const PlotOptions& opts = {});
void plot_bounds(const std::vector<BoundsRecord>& records, const std::vector<SeriesFit>& fits,
                 const std::filesystem::path& path, const PlotOptions& opts = {});

}  // namespace paley
