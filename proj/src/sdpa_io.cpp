#include "paley/sdpa_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

namespace paley {

void SdpProblem::validate() const {
  if (num_vars < 0 || static_cast<int>(c.size()) != num_vars) throw std::invalid_argument("objective length mismatch");
  for (const auto& b : blocks) {
    if (b.num_vars() != num_vars) throw std::invalid_argument("block " + b.name + " has wrong variable count");
    auto check = [&](const SparseSymmetric& m) {
      for (const auto& e : m) {
        if (e.row < 0 || e.col < e.row || e.col >= b.size) {
          throw std::invalid_argument("block " + b.name + " has an entry outside its upper triangle");
        }
      }
    };
    check(b.constant);
    for (const auto& m : b.coefficients) check(m);
  }
}

namespace {

std::string number(double v) {
  if (std::isfinite(v) && v == std::nearbyint(v) && std::fabs(v) < 1e15) {
    return fmt::format("{}", static_cast<long long>(v));
  }
  return fmt::format("{:.17g}", v);
}

std::string strip_separators(std::string line) {
  for (char& ch : line) {
    if (ch == '{' || ch == '}' || ch == '(' || ch == ')' || ch == ',') ch = ' ';
  }
  return line;
}

bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '"' || line[first] == '*') continue;
    return true;
  }
  return false;
}

}  // namespace

void write_sdpa(std::ostream& out, const SdpProblem& prob) {
  prob.validate();
  out << prob.num_vars << '\n' << prob.blocks.size() << '\n';
  for (std::size_t b = 0; b < prob.blocks.size(); ++b) out << (b ? " " : "") << prob.blocks[b].size;
  out << '\n';
  for (int i = 0; i < prob.num_vars; ++i) out << (i ? " " : "") << number(-prob.c[static_cast<std::size_t>(i)]);
  out << '\n';
  auto emit = [&](int matno, std::size_t blkno, const SparseSymmetric& m, double sign) {
    for (const auto& e : m) {
      out << matno << ' ' << blkno + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << number(sign * e.value)
          << '\n';
    }
  };
  for (std::size_t b = 0; b < prob.blocks.size(); ++b) emit(0, b, prob.blocks[b].constant, -1.0);
  for (int i = 0; i < prob.num_vars; ++i) {
    for (std::size_t b = 0; b < prob.blocks.size(); ++b) {
      emit(i + 1, b, prob.blocks[b].coefficients[static_cast<std::size_t>(i)], 1.0);
    }
  }
}

void write_sdpa(const std::filesystem::path& path, const SdpProblem& prob) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  write_sdpa(out, prob);
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

SdpProblem read_sdpa(std::istream& in) {
  std::string line;
  auto header_line = [&](const char* what) {
    if (!next_content_line(in, line)) throw std::runtime_error(std::string("SDPA: missing ") + what);
    return std::istringstream(strip_separators(line));
  };

  SdpProblem prob;
  int nblocks = 0;
  header_line("variable count") >> prob.num_vars;
  header_line("block count") >> nblocks;
  if (prob.num_vars < 0 || nblocks <= 0) throw std::runtime_error("SDPA: invalid dimensions");

  auto sizes = header_line("block structure");
  prob.blocks.resize(static_cast<std::size_t>(nblocks));
  for (int b = 0; b < nblocks; ++b) {
    int size = 0;
    if (!(sizes >> size)) throw std::runtime_error("SDPA: truncated block structure");
    if (size <= 0) throw std::runtime_error("SDPA: LP or empty blocks are not supported");
    auto& blk = prob.blocks[static_cast<std::size_t>(b)];
    blk.name = "block" + std::to_string(b + 1);
    blk.size = size;
    blk.coefficients.resize(static_cast<std::size_t>(prob.num_vars));
  }

  // The objective may wrap over several lines.
  prob.c.reserve(static_cast<std::size_t>(prob.num_vars));
  while (static_cast<int>(prob.c.size()) < prob.num_vars) {
    auto obj = header_line("objective");
    double v = 0.0;
    while (static_cast<int>(prob.c.size()) < prob.num_vars && obj >> v) prob.c.push_back(-v);
  }

  while (next_content_line(in, line)) {
    std::istringstream entry(strip_separators(line));
    int matno = 0, blkno = 0, i = 0, j = 0;
    double v = 0.0;
    if (!(entry >> matno >> blkno >> i >> j >> v)) throw std::runtime_error("SDPA: malformed entry: " + line);
    if (matno < 0 || matno > prob.num_vars || blkno < 1 || blkno > nblocks) {
      throw std::runtime_error("SDPA: entry refers to unknown matrix or block: " + line);
    }
    auto& blk = prob.blocks[static_cast<std::size_t>(blkno - 1)];
    if (i < 1 || j < 1 || i > blk.size || j > blk.size) throw std::runtime_error("SDPA: index out of range: " + line);
    auto& dst = matno == 0 ? blk.constant : blk.coefficients[static_cast<std::size_t>(matno - 1)];
    dst.push_back(SparseEntry{i - 1, j - 1, matno == 0 ? -v : v});
  }
  for (auto& blk : prob.blocks) {
    canonicalize(blk.constant);
    for (auto& m : blk.coefficients) canonicalize(m);
  }
  return prob;
}

SdpProblem read_sdpa(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_sdpa(in);
}

}  // namespace paley
