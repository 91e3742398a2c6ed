#include "fluidfluid/linalg/ordering.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "fluidfluid/errors.hpp"

namespace fluidfluid::linalg {

namespace {

using Graph = std::vector<std::vector<std::int32_t>>;

Graph symmetric_graph(const CsrMatrix& a) {
  const std::size_t n = a.rows();
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (auto j : a.row_cols(i)) {
      if (static_cast<std::size_t>(j) == i) continue;
      g[i].push_back(j);
      g[static_cast<std::size_t>(j)].push_back(static_cast<std::int32_t>(i));
    }
  }
  for (auto& adj : g) {
    std::sort(adj.begin(), adj.end());
    adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
  }
  return g;
}

// BFS level structure from root; returns (levels, last level nodes).
struct Levels {
  std::size_t depth = 0;
  std::vector<std::int32_t> last;
};

Levels level_structure(const Graph& g, std::int32_t root, std::vector<std::int32_t>& mark,
                       std::int32_t stamp) {
  Levels out;
  std::vector<std::int32_t> frontier{root};
  mark[static_cast<std::size_t>(root)] = stamp;
  while (!frontier.empty()) {
    out.last = frontier;
    ++out.depth;
    std::vector<std::int32_t> next;
    for (auto v : frontier) {
      for (auto w : g[static_cast<std::size_t>(v)]) {
        if (mark[static_cast<std::size_t>(w)] != stamp) {
          mark[static_cast<std::size_t>(w)] = stamp;
          next.push_back(w);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

// George-Liu pseudo-peripheral node search.
std::int32_t pseudo_peripheral(const Graph& g, std::int32_t start, std::vector<std::int32_t>& mark,
                               std::int32_t& stamp) {
  std::int32_t root = start;
  Levels lv = level_structure(g, root, mark, ++stamp);
  for (int iter = 0; iter < 16; ++iter) {
    std::int32_t best = lv.last.front();
    for (auto v : lv.last) {
      const auto dv = g[static_cast<std::size_t>(v)].size();
      const auto db = g[static_cast<std::size_t>(best)].size();
      if (dv < db || (dv == db && v < best)) best = v;
    }
    Levels trial = level_structure(g, best, mark, ++stamp);
    if (trial.depth <= lv.depth) break;
    root = best;
    lv = std::move(trial);
  }
  return root;
}

}  // namespace

std::vector<std::int32_t> reverse_cuthill_mckee(const CsrMatrix& a) {
  if (a.rows() != a.cols()) throw ValidationError("RCM requires a square matrix");
  const std::size_t n = a.rows();
  const Graph g = symmetric_graph(a);
  std::vector<std::int32_t> order;
  order.reserve(n);
  std::vector<char> placed(n, 0);
  std::vector<std::int32_t> mark(n, 0);
  std::int32_t stamp = 0;

  for (std::size_t seed = 0; seed < n; ++seed) {
    if (placed[seed]) continue;
    const std::int32_t root = pseudo_peripheral(g, static_cast<std::int32_t>(seed), mark, stamp);
    std::size_t head = order.size();
    order.push_back(root);
    placed[static_cast<std::size_t>(root)] = 1;
    while (head < order.size()) {
      const auto v = order[head++];
      std::vector<std::int32_t> nbrs;
      for (auto w : g[static_cast<std::size_t>(v)])
        if (!placed[static_cast<std::size_t>(w)]) nbrs.push_back(w);
      std::sort(nbrs.begin(), nbrs.end(), [&](std::int32_t x, std::int32_t y) {
        const auto dx = g[static_cast<std::size_t>(x)].size();
        const auto dy = g[static_cast<std::size_t>(y)].size();
        return dx != dy ? dx < dy : x < y;
      });
      for (auto w : nbrs) {
        placed[static_cast<std::size_t>(w)] = 1;
        order.push_back(w);
      }
    }
  }
  std::reverse(order.begin(), order.end());
  return order;
}

Bandwidth bandwidth(const CsrMatrix& a, const std::vector<std::int32_t>& perm) {
  const std::size_t n = a.rows();
  std::vector<std::int32_t> inv(n);
  for (std::size_t k = 0; k < n; ++k) inv[static_cast<std::size_t>(perm[k])] = static_cast<std::int32_t>(k);
  Bandwidth bw;
  for (std::size_t i = 0; i < n; ++i) {
    const auto ri = inv[i];
    for (auto j : a.row_cols(i)) {
      const auto cj = inv[static_cast<std::size_t>(j)];
      if (cj < ri) bw.lower = std::max<std::size_t>(bw.lower, static_cast<std::size_t>(ri - cj));
      if (cj > ri) bw.upper = std::max<std::size_t>(bw.upper, static_cast<std::size_t>(cj - ri));
    }
  }
  return bw;
}

}  // namespace fluidfluid::linalg
