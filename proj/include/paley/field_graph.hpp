#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace paley {

// Raised for a modulus that cannot define a Paley graph (not prime, or not 1 mod 4).
class InvalidPaleyParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool is_prime(std::int64_t n);

// Throws InvalidPaleyParameter unless p is a prime with p = 1 (mod 4).
void require_paley_prime(std::int64_t p);

// Sorted set { x^2 mod p : 1 <= x < p }.
std::vector<int> quadratic_residues(int p);

// Paley graph G_p on the field elements 0..p-1. Two vertices are adjacent
// when their difference is a nonzero quadratic residue. Immutable once built.
class PaleyGraph {
 public:
  explicit PaleyGraph(int p);

  int p() const { return p_; }
  int order() const { return p_; }

  bool is_residue(int x) const { return residue_table_[static_cast<std::size_t>(mod(x))] != 0; }
  bool adjacent(int u, int v) const {
    return residue_table_[static_cast<std::size_t>(mod(u - v))] != 0;
  }
  int degree(int v) const;

  std::span<const int> residues() const { return residues_; }
  std::span<const int> nonresidues() const { return nonresidues_; }
  int smallest_nonresidue() const { return nonresidues_.front(); }

  int mod(std::int64_t x) const {
    const auto r = static_cast<int>(x % p_);
    return r < 0 ? r + p_ : r;
  }
  int mul(int a, int b) const {
    return mod(static_cast<std::int64_t>(a) * static_cast<std::int64_t>(b));
  }
  int inverse(int x) const;

  // Dense 0/1 adjacency of the complement graph (zero diagonal), row-major p*p.
  std::vector<std::uint8_t> complement_adjacency() const;

 private:
  int p_;
  std::vector<std::uint8_t> residue_table_;
  std::vector<int> residues_;
  std::vector<int> nonresidues_;
};

PaleyGraph build_graph(int p);

// Affine automorphism u -> a*u + b with a a nonzero square.
struct Automorphism {
  int p = 0;
  int a = 1;
  int b = 0;

  int operator()(int u) const {
    const std::int64_t v = (static_cast<std::int64_t>(a) * u + b) % p;
    return static_cast<int>(v < 0 ? v + p : v);
  }
};

// Validates a and b against g; throws std::invalid_argument when a is not a nonzero residue.
Automorphism make_automorphism(const PaleyGraph& g, int a, int b);

// Vertex permutation u -> multiplier*u. When the multiplier is a non-residue this
// maps G_p onto its complement.
struct VertexPermutation {
  int multiplier = 1;
  std::vector<int> image;
};

VertexPermutation multiplication_permutation(const PaleyGraph& g, int multiplier);

// Isomorphism G_p -> complement(G_p) via the smallest non-residue.
VertexPermutation complement_isomorphism(const PaleyGraph& g);

// True when perm sends every edge to a non-edge and every non-edge to an edge.
bool is_complement_isomorphism(const PaleyGraph& g, const VertexPermutation& perm);

// Hanson-Petridis bound (sqrt(2p-1)+1)/2.
double hp_bound(int p);

// Closed-form Lovasz theta of G_p, sqrt(p).
double theta_eigenvalue(const PaleyGraph& g);
double theta_eigenvalue(int p);

}  // namespace paley
