#include "paley/clique.hpp"

#include <bit>
#include <stdexcept>

namespace paley {

BitGraph::BitGraph(int n)
    : n_(n), words_((n + 63) / 64),
      bits_(static_cast<std::size_t>(n) * static_cast<std::size_t>((n + 63) / 64), 0) {
  if (n < 0) throw std::invalid_argument("negative graph order");
}

void BitGraph::add_edge(int u, int v) {
  if (u == v) return;
  auto* ru = bits_.data() + static_cast<std::size_t>(u) * static_cast<std::size_t>(words_);
  auto* rv = bits_.data() + static_cast<std::size_t>(v) * static_cast<std::size_t>(words_);
  ru[v >> 6] |= 1ULL << (v & 63);
  rv[u >> 6] |= 1ULL << (u & 63);
}

BitGraph BitGraph::induced(const std::vector<int>& vertices) const {
  BitGraph sub(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (adjacent(vertices[i], vertices[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return sub;
}

BitGraph to_bit_graph(const PaleyGraph& g) {
  BitGraph bg(g.p());
  for (int i = 0; i < g.p(); ++i) {
    for (int j = i + 1; j < g.p(); ++j) {
      if (g.adjacent(i, j)) bg.add_edge(i, j);
    }
  }
  return bg;
}

namespace {

using Bits = std::vector<std::uint64_t>;

class CliqueSearcher {
 public:
  CliqueSearcher(const BitGraph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  CliqueResult run() {
    CliqueResult result;
    if (g_.size() == 0) {
      result.certified = true;
      return result;
    }
    best_.assign(1, 0);
    Bits all(static_cast<std::size_t>(g_.words()), 0);
    for (int v = 0; v < g_.size(); ++v) all[static_cast<std::size_t>(v >> 6)] |= 1ULL << (v & 63);
    expand(all);
    result.omega = static_cast<int>(best_.size());
    result.witness = best_;
    result.nodes_explored = nodes_;
    result.certified = !aborted_;
    return result;
  }

 private:
  static bool empty(const Bits& b) {
    for (auto w : b) {
      if (w) return false;
    }
    return true;
  }

  // Greedy sequential colouring of `cand` in ascending vertex order.
  void colour(const Bits& cand, std::vector<int>& order, std::vector<int>& colours) const {
    order.clear();
    colours.clear();
    Bits uncoloured = cand;
    Bits q(uncoloured.size());
    int c = 0;
    while (!empty(uncoloured)) {
      ++c;
      q = uncoloured;
      for (std::size_t w = 0; w < q.size(); ++w) {
        while (q[w]) {
          const int v = static_cast<int>(w * 64) + std::countr_zero(q[w]);
          q[w] &= q[w] - 1;
          uncoloured[w] &= ~(1ULL << (v & 63));
          const auto* nv = g_.row(v);
          for (std::size_t k = w; k < q.size(); ++k) q[k] &= ~nv[k];
          order.push_back(v);
          colours.push_back(c);
        }
      }
    }
  }

  void expand(Bits cand) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    std::vector<int> order;
    std::vector<int> colours;
    colour(cand, order, colours);
    Bits next(cand.size());
    for (std::size_t idx = order.size(); idx-- > 0;) {
      if (current_.size() + static_cast<std::size_t>(colours[idx]) <= best_.size()) return;
      const int v = order[idx];
      current_.push_back(v);
      const auto* nv = g_.row(v);
      for (std::size_t k = 0; k < cand.size(); ++k) next[k] = cand[k] & nv[k];
      if (empty(next)) {
        if (current_.size() > best_.size()) best_ = current_;
      } else {
        expand(next);
        if (aborted_) return;
      }
      current_.pop_back();
      cand[static_cast<std::size_t>(v >> 6)] &= ~(1ULL << (v & 63));
    }
  }

  const BitGraph& g_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<int> current_;
  std::vector<int> best_;
};

}  // namespace

CliqueResult max_clique(const BitGraph& g, std::uint64_t node_budget) {
  if (node_budget == 0) throw std::invalid_argument("clique node budget must be positive");
  return CliqueSearcher(g, node_budget).run();
}

CliqueResult clique_number(const PaleyGraph& g, std::uint64_t node_budget, CliqueSearch mode) {
  if (mode == CliqueSearch::kFullGraph) return max_clique(to_bit_graph(g), node_budget);
  if (node_budget == 0) throw std::invalid_argument("clique node budget must be positive");

  std::vector<int> common;
  for (int v = 2; v < g.p(); ++v) {
    if (g.adjacent(0, v) && g.adjacent(1, v)) common.push_back(v);
  }
  CliqueResult result;
  result.witness = {0, 1};
  if (common.empty()) {
    result.omega = 2;
    result.certified = true;
    return result;
  }
  const BitGraph sub = to_bit_graph(g).induced(common);
  const CliqueResult inner = max_clique(sub, node_budget);
  for (int v : inner.witness) result.witness.push_back(common[static_cast<std::size_t>(v)]);
  result.omega = static_cast<int>(result.witness.size());
  result.nodes_explored = inner.nodes_explored;
  result.certified = inner.certified;
  return result;
}

bool is_clique(const PaleyGraph& g, const std::vector<int>& vertices) {
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (!g.adjacent(vertices[i], vertices[j])) return false;
    }
  }
  return true;
}

}  // namespace paley
