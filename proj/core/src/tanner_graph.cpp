#include "gmac/tanner_graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "gmac/errors.hpp"

namespace gmac {

std::size_t TannerGraph::edge_count() const {
  std::size_t e = 0;
  for (const auto& v : var_neighbors) e += v.size();
  return e;
}

void TannerGraph::check_consistency() const {
  if ((int)var_neighbors.size() != n || (int)check_neighbors.size() != m)
    throw domain_error("TannerGraph: adjacency size mismatch");
  std::size_t ev = 0, ec = 0;
  for (const auto& nb : var_neighbors) {
    ev += nb.size();
    for (std::size_t i = 0; i + 1 < nb.size(); ++i)
      if (nb[i] >= nb[i + 1]) throw domain_error("TannerGraph: unsorted or parallel edges");
    if (!nb.empty() && (nb.front() < 0 || nb.back() >= m))
      throw domain_error("TannerGraph: check id out of range");
  }
  for (const auto& nb : check_neighbors) {
    ec += nb.size();
    for (std::size_t i = 0; i + 1 < nb.size(); ++i)
      if (nb[i] >= nb[i + 1]) throw domain_error("TannerGraph: unsorted or parallel edges");
    if (!nb.empty() && (nb.front() < 0 || nb.back() >= n))
      throw domain_error("TannerGraph: variable id out of range");
  }
  if (ev != ec) throw domain_error("TannerGraph: edge counts disagree between sides");
}

DegreeLists quantize_degrees(int n, const DegreeDistribution& dd) {
  if (n < 100) throw domain_error("quantize_degrees: blocklength too small");
  dd.validate();
  auto L = node_perspective(dd);

  // Largest-remainder rounding of n * L_j.
  std::vector<std::pair<int, double>> target;  // (degree, exact count)
  for (const auto& [j, f] : L) target.push_back({j, n * f});
  std::vector<int> counts(target.size());
  int assigned = 0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    counts[i] = (int)std::floor(target[i].second);
    assigned += counts[i];
  }
  std::vector<std::size_t> order(target.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    double fa = target[a].second - std::floor(target[a].second);
    double fb = target[b].second - std::floor(target[b].second);
    if (fa != fb) return fa > fb;
    return target[a].first < target[b].first;
  });
  for (int i = 0; assigned < n; ++i, ++assigned) counts[order[i % order.size()]] += 1;

  DegreeLists out;
  for (std::size_t i = 0; i < target.size(); ++i)
    for (int c = 0; c < counts[i]; ++c) out.variable.push_back(target[i].first);
  std::sort(out.variable.begin(), out.variable.end());

  long long edges = 0;
  for (int d : out.variable) edges += d;
  int mchecks = (int)std::llround(double(edges) / dd.d_c);
  if (mchecks < 1) throw domain_error("quantize_degrees: no check nodes at this rate");
  long long base = edges / mchecks;
  long long extra = edges - base * mchecks;  // this many checks get base+1
  if (std::abs(base - dd.d_c) > 1 || (extra > 0 && std::abs(base + 1 - dd.d_c) > 1))
    throw domain_error("quantize_degrees: edge balance needs more than +-1 adjustment");
  for (int c = 0; c < mchecks; ++c)
    out.check.push_back((int)(c < extra ? base + 1 : base));
  std::sort(out.check.begin(), out.check.end());
  return out;
}

bool syndrome_ok(const TannerGraph& g, const std::vector<std::uint8_t>& bits) {
  if ((int)bits.size() != g.n) throw domain_error("syndrome_ok: bit vector length mismatch");
  for (const auto& nb : g.check_neighbors) {
    unsigned parity = 0;
    for (int v : nb) parity ^= bits[v];
    if (parity) return false;
  }
  return true;
}

bool has_four_cycle(const TannerGraph& g) {
  // A 4-cycle exists iff two checks share two variables; scan pairs of
  // checks through each variable's neighbor list.
  std::unordered_set<long long> seen;
  for (int v = 0; v < g.n; ++v) {
    const auto& nb = g.var_neighbors[v];
    for (std::size_t i = 0; i < nb.size(); ++i)
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        long long key = (long long)nb[i] * g.m + nb[j];
        if (!seen.insert(key).second) return true;
      }
  }
  return false;
}

std::string graph_to_text(const TannerGraph& g) {
  std::ostringstream os;
  os << g.n << ' ' << g.m << ' ' << g.seed << '\n';
  for (const auto& nb : g.check_neighbors) {
    for (std::size_t i = 0; i < nb.size(); ++i) os << (i ? " " : "") << nb[i];
    os << '\n';
  }
  return os.str();
}

TannerGraph graph_from_text(const std::string& text) {
  std::istringstream is(text);
  TannerGraph g;
  std::string header;
  if (!std::getline(is, header)) throw domain_error("graph_from_text: empty input");
  {
    std::istringstream hs(header);
    if (!(hs >> g.n >> g.m >> g.seed)) throw domain_error("graph_from_text: bad header");
  }
  g.var_neighbors.assign(g.n, {});
  g.check_neighbors.assign(g.m, {});
  std::string line;
  for (int c = 0; c < g.m; ++c) {
    if (!std::getline(is, line)) throw domain_error("graph_from_text: truncated");
    std::istringstream ls(line);
    int v;
    while (ls >> v) {
      if (v < 0 || v >= g.n) throw domain_error("graph_from_text: variable id out of range");
      g.check_neighbors[c].push_back(v);
      g.var_neighbors[v].push_back(c);
    }
  }
  for (auto& nb : g.var_neighbors) std::sort(nb.begin(), nb.end());
  for (auto& nb : g.check_neighbors) std::sort(nb.begin(), nb.end());
  g.check_consistency();
  return g;
}

}  // namespace gmac
