#pragma once

#include <vector>

#include "paley/affine_block.hpp"

namespace paley {

// Dual (LMI) form: maximise c . y subject to F0_b + sum_i y_i F_ib >= 0 for every block b.
struct SdpProblem {
  int num_vars = 0;
  std::vector<double> c;
  std::vector<AffineBlock> blocks;

  // Throws std::invalid_argument on inconsistent sizes or out-of-range entries.
  void validate() const;
};

}  // namespace paley
