#pragma once

#include <cstdint>
#include <vector>

#include "gmac/tanner_graph.hpp"

namespace gmac {

// Systematic GF(2) encoder derived from the parity-check matrix by Gaussian
// elimination. Message bits live in the non-pivot (free) columns; pivot bits
// are parities of the reduced rows. k = n - rank; rank-deficient graphs keep
// their redundant checks and gain message length.
class EncoderState {
 public:
  explicit EncoderState(const TannerGraph& g);

  int block_length() const { return n_; }
  int message_length() const { return k_; }
  int rank() const { return rank_; }
  // Check count minus rank; > 0 flags redundant checks.
  int redundant_checks() const { return m_ - rank_; }

  const std::vector<int>& message_positions() const { return free_cols_; }

  std::vector<std::uint8_t> encode(const std::vector<std::uint8_t>& message) const;
  std::vector<std::uint8_t> extract_message(const std::vector<std::uint8_t>& codeword) const;

 private:
  int n_ = 0, m_ = 0, k_ = 0, rank_ = 0;
  std::vector<int> pivot_cols_;           // per reduced row
  std::vector<int> free_cols_;            // message positions, ascending
  std::vector<std::vector<std::uint64_t>> rows_;  // reduced rows over free columns
};

EncoderState make_encoder(const TannerGraph& g);

}  // namespace gmac
