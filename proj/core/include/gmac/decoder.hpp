#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gmac/tanner_graph.hpp"

namespace gmac {

// Channel-side tables of the MAC state node for one bit-level: the
// current-level amplitudes, the uniform residual of undecoded higher levels,
// and the per-sample offsets contributed by already-decoded levels.
struct StateNodeTable {
  double amp_user1 = 0.0;
  double amp_user2 = 0.0;
  std::vector<double> residual_atoms = {0.0};
  double noise_var = 1.0;
  std::vector<double> offsets;  // per sample; empty means all zero

  // log P(y | b1, b2) with the residual marginalized uniformly (additive
  // constants omitted; they cancel in every message).
  void channel_logprobs(double y, double offset, double lp[2][2]) const;
};

// State-to-variable LLR toward target_user given the channel output and the
// other user's variable-to-state message. Log-domain, stable for any vs.
double state_update(const StateNodeTable& tbl, double y, double vs_other, int target_user = 1,
                    double offset = 0.0);

struct DecodeResult {
  std::array<std::vector<std::uint8_t>, 2> hard_bits;
  std::array<bool, 2> syndrome_satisfied = {false, false};
  int iterations = 0;
};

// Joint flooding BP over the two users' Tanner graphs coupled through the
// MAC state node; stops early when both syndromes check.
DecodeResult joint_bp_decode(const std::vector<double>& y, const TannerGraph& g1,
                             const TannerGraph& g2, const StateNodeTable& tbl, int max_iter);

struct LevelCodes {
  const TannerGraph* graph1 = nullptr;
  const TannerGraph* graph2 = nullptr;
  double amp1 = 0.0;  // user-1 amplitude at this stage
  double amp2 = 0.0;
};

struct SicResult {
  std::vector<DecodeResult> levels;
  std::vector<bool> level_ok;  // both users' syndromes satisfied
};

// Decode the stages in order, rebuilding each stage's state table from the
// previously decoded bits (or the true bits in genie mode).
SicResult sic_decode(const std::vector<double>& y, const std::vector<LevelCodes>& levels,
                     double noise_var, int max_iter, bool genie = false,
                     const std::vector<std::array<std::vector<std::uint8_t>, 2>>* true_bits =
                         nullptr);

}  // namespace gmac
