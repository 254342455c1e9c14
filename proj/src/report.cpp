#include "paley/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <istream>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "paley/clique.hpp"
#include "paley/l2_model.hpp"
#include "paley/orbits.hpp"

namespace paley {

std::vector<int> paley_primes(int p_min, int p_max) {
  if (p_min > p_max) throw std::invalid_argument(fmt::format("empty range [{}, {}]", p_min, p_max));
  std::vector<int> out;
  for (int p = std::max(p_min, 5); p <= p_max; ++p) {
    if (p % 4 == 1 && is_prime(p)) out.push_back(p);
  }
  return out;
}

BoundsRecord run_prime(int p, const RunConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const PaleyGraph g = build_graph(p);
  BoundsRecord r;
  r.p = p;
  r.hp = hp_bound(p);

  const TriangleOrbitSet orbits = enumerate_orbits(g);
  r.m = orbits.m();
  const SdpSolution sol = solve(to_problem(reduce_and_assemble(g, orbits)), cfg.solver);
  r.status = sol.status;
  r.iterations = sol.iterations;
  r.l2 = sol.status == SolveStatus::kOptimal ? sol.value : std::nan("");

  if (cfg.theta_sdp) {
    const SdpSolution theta = lovasz_theta_sdp(g, cfg.solver);
    r.theta = theta.status == SolveStatus::kOptimal ? theta.value : std::nan("");
  } else {
    r.theta = theta_eigenvalue(g);
  }

  const CliqueResult clique = clique_number(g, cfg.clique_budget);
  r.omega = clique.omega;
  r.omega_certified = clique.certified;
  r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<BoundsRecord> run_range(int p_min, int p_max, const RunConfig& cfg, const ProgressFn& progress) {
  const std::vector<int> primes = paley_primes(p_min, p_max);
  std::vector<BoundsRecord> out(primes.size());
  std::atomic<std::size_t> next{0};
  std::mutex report_mutex;
  auto worker = [&] {
    for (std::size_t k = next++; k < primes.size(); k = next++) {
      out[k] = run_prime(primes[k], cfg);
      if (progress) {
        const std::lock_guard lock(report_mutex);
        progress(out[k]);
      }
    }
  };
  const int jobs = std::clamp(cfg.jobs, 1, std::max(1, static_cast<int>(primes.size())));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return out;
}

void write_csv(std::ostream& out, const std::vector<BoundsRecord>& records) {
  fmt::print(out, "{}\n", kCsvHeader);
  for (const auto& r : records) {
    fmt::print(out, "{},{:.3f},{:.3f},{},{},{:.3f},{},{},{:.3f}\n", r.p, r.theta, r.l2, r.omega,
               r.omega_certified ? "true" : "false", r.hp, r.m, r.iterations, r.wall_time_s);
  }
}

void write_csv(const std::filesystem::path& path, const std::vector<BoundsRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, records);
  if (!out) throw std::runtime_error("error writing " + path.string());
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(std::string s) {
  const auto not_space = [](unsigned char ch) { return !std::isspace(ch); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

template <class T>
bool parse_number(const std::string& text, T& value) {
  const std::string t = trim(text);
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, value);
  return ec == std::errc() && ptr == end;
}

template <class T>
T number_or_throw(const std::string& text, std::size_t line) {
  T value{};
  if (!parse_number(text, value)) throw std::invalid_argument(fmt::format("line {}: bad number '{}'", line, text));
  return value;
}

}  // namespace

std::vector<BoundsRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != kCsvHeader) throw std::invalid_argument("missing CSV header");
  std::vector<BoundsRecord> out;
  for (std::size_t no = 2; std::getline(in, line); ++no) {
    if (trim(line).empty()) continue;
    const auto f = split(trim(line), ',');
    if (f.size() != 9) throw std::invalid_argument(fmt::format("line {}: expected 9 fields", no));
    BoundsRecord r;
    r.p = number_or_throw<int>(f[0], no);
    r.theta = number_or_throw<double>(f[1], no);
    r.l2 = number_or_throw<double>(f[2], no);
    r.omega = number_or_throw<int>(f[3], no);
    const std::string cert = trim(f[4]);
    if (cert != "true" && cert != "false") throw std::invalid_argument(fmt::format("line {}: bad flag", no));
    r.omega_certified = cert == "true";
    r.hp = number_or_throw<double>(f[5], no);
    r.m = number_or_throw<int>(f[6], no);
    r.iterations = number_or_throw<int>(f[7], no);
    r.wall_time_s = number_or_throw<double>(f[8], no);
    r.status = std::isfinite(r.l2) ? SolveStatus::kOptimal : SolveStatus::kNumericalFailure;
    out.push_back(r);
  }
  return out;
}

std::vector<BoundsRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_csv(in);
}

std::string to_string(Column c) {
  switch (c) {
    case Column::kTheta:
      return "theta";
    case Column::kL2:
      return "l2";
    case Column::kOmega:
      return "omega";
    case Column::kHp:
      return "hp";
  }
  return "?";
}

std::optional<Column> parse_column(const std::string& name) {
  for (const Column c : {Column::kTheta, Column::kL2, Column::kOmega, Column::kHp}) {
    if (to_string(c) == name) return c;
  }
  return std::nullopt;
}

double column_value(const BoundsRecord& r, Column c) {
  switch (c) {
    case Column::kTheta:
      return r.theta;
    case Column::kL2:
      return r.l2;
    case Column::kOmega:
      return r.omega;
    case Column::kHp:
      return r.hp;
  }
  return std::nan("");
}

FitResult fit_power(const std::vector<double>& p, const std::vector<double>& value) {
  if (p.size() != value.size()) throw std::invalid_argument("fit: length mismatch");
  if (p.size() < 3) throw std::invalid_argument("fit: need at least 3 points");
  const double n = static_cast<double>(p.size());
  double sx = 0.0;
  double sy = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p[k] > 0.0) || !(value[k] > 0.0)) throw std::invalid_argument("fit: data must be positive");
    sx += std::log(p[k]);
    sy += std::log(value[k]);
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double dx = std::log(p[k]) - mx;
    const double dy = std::log(value[k]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw std::invalid_argument("fit: need at least two distinct p");
  FitResult f;
  f.b = sxy / sxx;
  f.a = std::exp(my - f.b * mx);
  double ss_res = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const double e = std::log(value[k]) - (my + f.b * (std::log(p[k]) - mx));
    ss_res += e * e;
  }
  f.r2 = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  f.n_points = static_cast<int>(p.size());
  return f;
}

FitResult fit_power(const std::vector<BoundsRecord>& records, Column column) {
  std::vector<double> p;
  std::vector<double> v;
  for (const auto& r : records) {
    const double value = column_value(r, column);
    if (std::isnan(value)) continue;
    p.push_back(r.p);
    v.push_back(value);
  }
  return fit_power(p, v);
}

std::vector<ExternalPoint> read_points_csv(std::istream& in) {
  std::vector<ExternalPoint> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    line = trim(line);
    if (line.empty()) continue;
    const auto f = split(line, ',');
    ExternalPoint pt;
    if (f.size() != 2 || !parse_number(f[0], pt.p) || !parse_number(f[1], pt.value)) {
      if (no == 1) continue;
      throw std::invalid_argument(fmt::format("line {}: expected 'p,value'", no));
    }
    out.push_back(pt);
  }
  return out;
}

std::vector<ExternalPoint> read_points_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  return read_points_csv(in);
}

}  // namespace paley
