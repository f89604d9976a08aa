#include <algorithm>
#include <numeric>

#include "gmac/errors.hpp"
#include "gmac/tanner_graph.hpp"

namespace gmac {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// BFS shells from variable v over the partial graph. Marks every check
// reachable from v with `stamp`, except that when a shell completes the
// coverage of all checks it is unmarked again: the PEG candidates are then
// exactly that deepest shell.
void mark_reachable_shells(const TannerGraph& g, int v, std::vector<int>& check_mark,
                           std::vector<int>& var_mark, int stamp, int m_total) {
  std::vector<int> var_frontier = {v};
  var_mark[v] = stamp;
  int covered = 0;
  for (;;) {
    std::vector<int> newly;
    for (int vv : var_frontier)
      for (int c : g.var_neighbors[vv])
        if (check_mark[c] != stamp) {
          check_mark[c] = stamp;
          newly.push_back(c);
        }
    if (newly.empty()) return;  // saturated below full coverage
    covered += (int)newly.size();
    if (covered == m_total) {
      for (int c : newly) check_mark[c] = stamp - 1;  // deepest shell stays eligible
      return;
    }
    std::vector<int> next;
    for (int c : newly)
      for (int vv : g.check_neighbors[c])
        if (var_mark[vv] != stamp) {
          var_mark[vv] = stamp;
          next.push_back(vv);
        }
    if (next.empty()) return;
    var_frontier.swap(next);
  }
}

}  // namespace

TannerGraph peg_construct(const DegreeLists& degrees, std::uint64_t seed) {
  const int n = (int)degrees.variable.size();
  const int m = (int)degrees.check.size();
  if (n == 0 || m == 0) throw domain_error("peg_construct: empty degree lists");
  long long ev = 0, ec = 0;
  for (int d : degrees.variable) ev += d;
  for (int d : degrees.check) ec += d;
  if (ev != ec) throw domain_error("peg_construct: unbalanced degree lists");

  // Placement order: non-decreasing degree, seeded shuffle within each class.
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return degrees.variable[a] < degrees.variable[b]; });
  std::uint64_t rng = seed ^ 0x5851f42d4c957f2dULL;
  for (std::size_t lo = 0; lo < order.size();) {
    std::size_t hi = lo + 1;
    while (hi < order.size() && degrees.variable[order[hi]] == degrees.variable[order[lo]]) ++hi;
    for (std::size_t i = hi - 1; i > lo; --i) {
      std::size_t j = lo + splitmix64(rng) % (i - lo + 1);
      std::swap(order[i], order[j]);
    }
    lo = hi;
  }

  TannerGraph g;
  g.n = n;
  g.m = m;
  g.seed = seed;
  g.var_neighbors.assign(n, {});
  g.check_neighbors.assign(m, {});
  std::vector<int> check_deg(m, 0);
  const std::vector<int>& check_cap = degrees.check;

  std::vector<int> check_mark(m, -1), var_mark(n, -1);
  int stamp = 0;

  auto is_neighbor = [&](int v, int c) {
    const auto& nb = g.var_neighbors[v];
    return std::find(nb.begin(), nb.end(), c) != nb.end();
  };
  auto pick_best = [&](int v, bool honor_marks) -> int {
    int best = -1;
    for (int c = 0; c < m; ++c) {
      if (check_deg[c] >= check_cap[c]) continue;
      if (honor_marks && check_mark[c] == stamp) continue;
      if (!honor_marks && is_neighbor(v, c)) continue;  // no parallel edges
      if (best < 0 || check_deg[c] < check_deg[best]) best = c;
    }
    return best;
  };

  for (int v : order) {
    const int dv = degrees.variable[v];
    for (int e = 0; e < dv; ++e) {
      int chosen;
      stamp += 2;
      if (e == 0) {
        chosen = pick_best(v, false);
      } else {
        mark_reachable_shells(g, v, check_mark, var_mark, stamp, m);
        chosen = pick_best(v, true);
        if (chosen < 0) chosen = pick_best(v, false);  // all slots reachable
      }
      if (chosen < 0) throw domain_error("peg_construct: ran out of check capacity");
      g.var_neighbors[v].push_back(chosen);
      g.check_neighbors[chosen].push_back(v);
      ++check_deg[chosen];
    }
  }
  for (auto& nb : g.var_neighbors) std::sort(nb.begin(), nb.end());
  for (auto& nb : g.check_neighbors) std::sort(nb.begin(), nb.end());
  g.check_consistency();
  return g;
}

}  // namespace gmac
