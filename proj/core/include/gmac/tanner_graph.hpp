#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gmac/degree_distribution.hpp"

namespace gmac {

// Sparse bipartite parity-check structure; neighbor lists sorted, no
// parallel edges.
struct TannerGraph {
  int n = 0;  // variable nodes
  int m = 0;  // check nodes
  std::uint64_t seed = 0;
  std::vector<std::vector<int>> var_neighbors;    // per variable: check ids
  std::vector<std::vector<int>> check_neighbors;  // per check: variable ids

  std::size_t edge_count() const;
  void check_consistency() const;  // throws domain_error on structural damage
};

struct DegreeLists {
  std::vector<int> variable;  // per variable node
  std::vector<int> check;     // per check node
};

// Realize the node-perspective distribution at blocklength n: largest
// remainder rounding on variable counts, then check degrees d_c with at most
// d_c of them adjusted by +-1 to balance the edge total.
DegreeLists quantize_degrees(int n, const DegreeDistribution& dd);

// Progressive edge growth. Deterministic for a given seed: variables are
// placed in non-decreasing degree order with a seeded shuffle inside each
// degree class; every edge connects to a check outside the deepest reachable
// BFS shell, ties to the lowest current check degree, then the lowest index.
TannerGraph peg_construct(const DegreeLists& degrees, std::uint64_t seed);

// true iff every check has even parity over `bits`.
bool syndrome_ok(const TannerGraph& g, const std::vector<std::uint8_t>& bits);

// Smallest cycle length <= 4 detector: true when some check pair shares two
// variables. Girth >= 6 iff this returns false (2-cycles are impossible).
bool has_four_cycle(const TannerGraph& g);

// Plain text format: header "n m seed", then one line per check listing its
// variable ids. Round-trips bit-exactly.
std::string graph_to_text(const TannerGraph& g);
TannerGraph graph_from_text(const std::string& text);

}  // namespace gmac
