#pragma once

#include <cstdint>
#include <vector>

#include "paley/field_graph.hpp"

namespace paley {

// Undirected simple graph stored as adjacency bitsets, for the clique search.
class BitGraph {
 public:
  explicit BitGraph(int n);

  int size() const { return n_; }
  int words() const { return words_; }
  void add_edge(int u, int v);
  bool adjacent(int u, int v) const {
    return (row(u)[static_cast<std::size_t>(v >> 6)] >> (v & 63)) & 1ULL;
  }
  const std::uint64_t* row(int u) const {
    return bits_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(words_);
  }

  // Subgraph induced on `vertices`, relabelled 0..k-1 in the given order.
  BitGraph induced(const std::vector<int>& vertices) const;

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> bits_;
};

BitGraph to_bit_graph(const PaleyGraph& g);

// Outcome of a maximum clique search. When `certified` is false the node budget
// ran out and `omega` is only the size of the best clique found (a lower bound).
struct CliqueResult {
  int omega = 0;
  std::vector<int> witness;
  std::uint64_t nodes_explored = 0;
  bool certified = false;
};

// Exact branch-and-bound with greedy colouring bounds. Vertices are taken in
// ascending label order, so the result (including the witness) is deterministic.
CliqueResult max_clique(const BitGraph& g, std::uint64_t node_budget);

enum class CliqueSearch {
  // Search the whole graph.
  kFullGraph,
  // Fix the edge {0,1}; any maximum clique of G_p is the image of one through
  // that edge under an automorphism (edge-transitivity).
  kEdgeRooted,
};

CliqueResult clique_number(const PaleyGraph& g, std::uint64_t node_budget,
                           CliqueSearch mode = CliqueSearch::kEdgeRooted);

bool is_clique(const PaleyGraph& g, const std::vector<int>& vertices);

}  // namespace paley
