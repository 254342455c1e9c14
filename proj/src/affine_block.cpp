#include "paley/affine_block.hpp"

#include <algorithm>
#include <stdexcept>

namespace paley {

void canonicalize(SparseSymmetric& m) {
  for (auto& e : m) {
    if (e.row > e.col) std::swap(e.row, e.col);
  }
  std::sort(m.begin(), m.end(), [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  std::size_t out = 0;
  for (std::size_t i = 0; i < m.size();) {
    SparseEntry acc = m[i];
    std::size_t j = i + 1;
    while (j < m.size() && m[j].row == acc.row && m[j].col == acc.col) acc.value += m[j++].value;
    if (acc.value != 0.0) m[out++] = acc;
    i = j;
  }
  m.resize(out);
}

namespace {

void scatter(Eigen::MatrixXd& dst, const SparseSymmetric& m, double scale) {
  for (const auto& e : m) {
    dst(e.row, e.col) += scale * e.value;
    if (e.row != e.col) dst(e.col, e.row) += scale * e.value;
  }
}

const SparseSymmetric& term(const AffineBlock& b, int var) {
  if (var == -1) return b.constant;
  if (var < 0 || var >= b.num_vars()) throw std::out_of_range("variable index out of range");
  return b.coefficients[static_cast<std::size_t>(var)];
}

}  // namespace

Eigen::MatrixXd AffineBlock::evaluate(std::span<const double> y) const {
  if (static_cast<int>(y.size()) != num_vars()) {
    throw std::invalid_argument("block " + name + ": expected " + std::to_string(num_vars()) + " variables, got " +
                                std::to_string(y.size()));
  }
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  scatter(out, constant, 1.0);
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (y[i] != 0.0) scatter(out, coefficients[i], y[i]);
  }
  return out;
}

Eigen::MatrixXd AffineBlock::dense(int var) const {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  scatter(out, term(*this, var), 1.0);
  return out;
}

double AffineBlock::coefficient(int var, int r, int c) const {
  if (r > c) std::swap(r, c);
  const auto& m = term(*this, var);
  const auto it = std::lower_bound(m.begin(), m.end(), SparseEntry{r, c, 0.0}, [](const SparseEntry& a, const SparseEntry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return (it != m.end() && it->row == r && it->col == c) ? it->value : 0.0;
}

bool AffineBlock::row_is_zero(int r) const {
  auto touches = [r](const SparseSymmetric& m) {
    return std::any_of(m.begin(), m.end(), [r](const SparseEntry& e) { return e.row == r || e.col == r; });
  };
  if (touches(constant)) return false;
  return std::none_of(coefficients.begin(), coefficients.end(), touches);
}

AffineBlockBuilder::AffineBlockBuilder(std::string name, int size, int num_vars) {
  if (size < 0 || num_vars < 0) throw std::invalid_argument("negative block dimensions");
  block_.name = std::move(name);
  block_.size = size;
  block_.coefficients.resize(static_cast<std::size_t>(num_vars));
}

void AffineBlockBuilder::add(int var, int r, int c, double v) {
  if (r < 0 || c < 0 || r >= block_.size || c >= block_.size) throw std::out_of_range("entry outside block");
  auto& m = var == -1 ? block_.constant : block_.coefficients.at(static_cast<std::size_t>(var));
  m.push_back(SparseEntry{std::min(r, c), std::max(r, c), v});
}

AffineBlock AffineBlockBuilder::build() && {
  canonicalize(block_.constant);
  for (auto& m : block_.coefficients) canonicalize(m);
  return std::move(block_);
}

AffineBlock linear_combination(const std::vector<const AffineBlock*>& blocks, const std::vector<double>& scales,
                               std::string name) {
  if (blocks.empty() || blocks.size() != scales.size()) throw std::invalid_argument("mismatched combination terms");
  const int size = blocks.front()->size;
  const int nv = blocks.front()->num_vars();
  for (const auto* b : blocks) {
    if (b->size != size || b->num_vars() != nv) {
      throw std::invalid_argument("cannot combine blocks of different shape: " + b->name);
    }
  }
  AffineBlock out;
  out.name = std::move(name);
  out.size = size;
  out.coefficients.resize(static_cast<std::size_t>(nv));
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    auto append = [&](SparseSymmetric& dst, const SparseSymmetric& src) {
      for (auto e : src) {
        e.value *= scales[k];
        dst.push_back(e);
      }
    };
    append(out.constant, blocks[k]->constant);
    for (int v = 0; v < nv; ++v) {
      append(out.coefficients[static_cast<std::size_t>(v)], blocks[k]->coefficients[static_cast<std::size_t>(v)]);
    }
  }
  canonicalize(out.constant);
  for (auto& m : out.coefficients) canonicalize(m);
  return out;
}

AffineBlock principal_submatrix(const AffineBlock& block, const std::vector<int>& keep, std::string name) {
  std::vector<int> position(static_cast<std::size_t>(block.size), -1);
  for (std::size_t k = 0; k < keep.size(); ++k) {
    const int r = keep[k];
    if (r < 0 || r >= block.size || position[static_cast<std::size_t>(r)] != -1) {
      throw std::invalid_argument("invalid or repeated row in principal submatrix");
    }
    position[static_cast<std::size_t>(r)] = static_cast<int>(k);
  }
  auto restrict = [&](const SparseSymmetric& src) {
    SparseSymmetric dst;
    for (const auto& e : src) {
      const int r = position[static_cast<std::size_t>(e.row)];
      const int c = position[static_cast<std::size_t>(e.col)];
      if (r >= 0 && c >= 0) dst.push_back(SparseEntry{r, c, e.value});
    }
    canonicalize(dst);
    return dst;
  };
  AffineBlock out;
  out.name = std::move(name);
  out.size = static_cast<int>(keep.size());
  out.constant = restrict(block.constant);
  out.coefficients.reserve(block.coefficients.size());
  for (const auto& m : block.coefficients) out.coefficients.push_back(restrict(m));
  return out;
}

}  // namespace paley
