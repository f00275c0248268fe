#include <algorithm>

#include "matchstick/rigidity.hpp"

namespace matchstick {
namespace {

// (k,l) = (2,3) pebble game. Each vertex starts with two pebbles; an edge is
// independent iff its endpoints can jointly collect l + 1 = 4 pebbles.
class PebbleGame {
 public:
  explicit PebbleGame(std::size_t n) : pebbles_(n, 2), out_(n), mark_(n, 0) {}

  bool try_insert(VertexId u, VertexId v) {
    while (pebbles_[u] < 2 && gather(u, v)) {
    }
    while (pebbles_[v] < 2 && gather(v, u)) {
    }
    if (pebbles_[u] + pebbles_[v] < 4) return false;
    --pebbles_[u];
    out_[u].push_back(v);
    return true;
  }

 private:
  // Moves one free pebble to `root` along reversed out-edges, never touching
  // `keep`. Returns false when none is reachable.
  bool gather(VertexId root, VertexId keep) {
    ++epoch_;
    mark_[root] = epoch_;
    mark_[keep] = epoch_;
    std::vector<VertexId> parent(pebbles_.size(), -1);
    std::vector<VertexId> stack{root};
    while (!stack.empty()) {
      const VertexId x = stack.back();
      stack.pop_back();
      for (VertexId y : out_[x]) {
        if (mark_[y] == epoch_) continue;
        mark_[y] = epoch_;
        parent[y] = x;
        if (pebbles_[y] > 0) {
          --pebbles_[y];
          for (VertexId w = y; w != root; w = parent[w]) reverse(parent[w], w);
          ++pebbles_[root];
          return true;
        }
        stack.push_back(y);
      }
    }
    return false;
  }

  void reverse(VertexId from, VertexId to) {
    auto& list = out_[from];
    list.erase(std::find(list.begin(), list.end(), to));
    out_[to].push_back(from);
  }

  std::vector<int> pebbles_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<unsigned> mark_;
  unsigned epoch_ = 0;
};

}  // namespace

PebbleGameResult pebble_game_2_3(const Graph& g) {
  PebbleGame game(g.vertex_count());
  PebbleGameResult out;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    const Edge e = g.edge(k);
    if (game.try_insert(e.u, e.v)) out.independent_edges.push_back(k);
  }
  const int full = static_cast<int>(2 * g.vertex_count()) - 3;
  out.generic_dof = std::max(0, full - static_cast<int>(out.independent_edges.size()));
  return out;
}

}  // namespace matchstick
