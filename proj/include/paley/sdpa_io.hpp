#pragma once

#include <filesystem>
#include <iosfwd>

#include "paley/sdp_problem.hpp"

namespace paley {

// Sparse SDPA ("dat-s") text format. SDPA's primal is
//   minimise sum_i c_i x_i  s.t.  sum_i F_i x_i - F_0 >= 0,
// so a problem "maximise c.y s.t. G_0 + sum y_i G_i >= 0" is written with the
// objective negated and F_0 = -G_0. Indices are 1-based, upper triangle only;
// integral values are printed without a decimal point.
void write_sdpa(std::ostream& out, const SdpProblem& prob);
void write_sdpa(const std::filesystem::path& path, const SdpProblem& prob);

// Inverse of write_sdpa. Accepts leading comment lines ('"' or '*') and the
// usual {}(), separators. LP (negative-size) blocks are rejected.
SdpProblem read_sdpa(std::istream& in);
SdpProblem read_sdpa(const std::filesystem::path& path);

}  // namespace paley
