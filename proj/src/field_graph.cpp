#include "paley/field_graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace paley {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_paley_prime(std::int64_t p) {
  if (!is_prime(p)) {
    throw InvalidPaleyParameter("Paley parameter " + std::to_string(p) + " is not prime");
  }
  if (p % 4 != 1) {
    throw InvalidPaleyParameter("Paley parameter " + std::to_string(p) + " is not 1 mod 4");
  }
}

std::vector<int> quadratic_residues(int p) {
  require_paley_prime(p);
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(p), 0);
  for (std::int64_t x = 1; x < p; ++x) seen[static_cast<std::size_t>((x * x) % p)] = 1;
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>((p - 1) / 2));
  for (int r = 1; r < p; ++r) {
    if (seen[static_cast<std::size_t>(r)]) out.push_back(r);
  }
  return out;
}

PaleyGraph::PaleyGraph(int p) : p_(p), residue_table_(static_cast<std::size_t>(p > 0 ? p : 0), 0) {
  residues_ = quadratic_residues(p);
  for (int r : residues_) residue_table_[static_cast<std::size_t>(r)] = 1;
  nonresidues_.reserve(residues_.size());
  for (int x = 1; x < p; ++x) {
    if (!residue_table_[static_cast<std::size_t>(x)]) nonresidues_.push_back(x);
  }
}

int PaleyGraph::degree(int v) const {
  int deg = 0;
  for (int u = 0; u < p_; ++u) deg += adjacent(u, v) ? 1 : 0;
  return deg;
}

int PaleyGraph::inverse(int x) const {
  x = mod(x);
  if (x == 0) throw std::domain_error("zero has no inverse mod p");
  // Fermat: x^(p-2).
  std::int64_t result = 1;
  std::int64_t base = x;
  int e = p_ - 2;
  while (e > 0) {
    if (e & 1) result = (result * base) % p_;
    base = (base * base) % p_;
    e >>= 1;
  }
  return static_cast<int>(result);
}

std::vector<std::uint8_t> PaleyGraph::complement_adjacency() const {
  const auto n = static_cast<std::size_t>(p_);
  std::vector<std::uint8_t> a(n * n, 0);
  for (int i = 0; i < p_; ++i) {
    for (int j = 0; j < p_; ++j) {
      if (i != j && !adjacent(i, j)) a[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)] = 1;
    }
  }
  return a;
}

PaleyGraph build_graph(int p) { return PaleyGraph(p); }

Automorphism make_automorphism(const PaleyGraph& g, int a, int b) {
  const int an = g.mod(a);
  if (an == 0 || !g.is_residue(an)) {
    throw std::invalid_argument("automorphism multiplier " + std::to_string(a) +
                                " is not a nonzero quadratic residue mod " + std::to_string(g.p()));
  }
  return Automorphism{g.p(), an, g.mod(b)};
}

VertexPermutation multiplication_permutation(const PaleyGraph& g, int multiplier) {
  VertexPermutation perm;
  perm.multiplier = g.mod(multiplier);
  perm.image.resize(static_cast<std::size_t>(g.p()));
  for (int u = 0; u < g.p(); ++u) perm.image[static_cast<std::size_t>(u)] = g.mul(perm.multiplier, u);
  return perm;
}

VertexPermutation complement_isomorphism(const PaleyGraph& g) {
  auto perm = multiplication_permutation(g, g.smallest_nonresidue());
  if (!is_complement_isomorphism(g, perm)) {
    throw std::logic_error("non-residue multiplication failed to complement G_p");
  }
  return perm;
}

bool is_complement_isomorphism(const PaleyGraph& g, const VertexPermutation& perm) {
  const int p = g.p();
  if (static_cast<int>(perm.image.size()) != p) return false;
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(p), 0);
  for (int v : perm.image) {
    if (v < 0 || v >= p || hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  for (int i = 0; i < p; ++i) {
    for (int j = i + 1; j < p; ++j) {
      const int pi = perm.image[static_cast<std::size_t>(i)];
      const int pj = perm.image[static_cast<std::size_t>(j)];
      if (g.adjacent(i, j) == g.adjacent(pi, pj)) return false;
    }
  }
  return true;
}

double hp_bound(int p) {
  require_paley_prime(p);
  return (std::sqrt(2.0 * p - 1.0) + 1.0) / 2.0;
}

double theta_eigenvalue(const PaleyGraph& g) { return std::sqrt(static_cast<double>(g.p())); }

double theta_eigenvalue(int p) {
  require_paley_prime(p);
  return std::sqrt(static_cast<double>(p));
}

}  // namespace paley
