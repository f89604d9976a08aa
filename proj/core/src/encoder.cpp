#include "gmac/encoder.hpp"

#include <algorithm>

#include "gmac/errors.hpp"

namespace gmac {
namespace {

using BitRow = std::vector<std::uint64_t>;

inline bool get_bit(const BitRow& r, int i) { return (r[i >> 6] >> (i & 63)) & 1u; }
inline void flip_bit(BitRow& r, int i) { r[i >> 6] ^= (1ULL << (i & 63)); }

void xor_rows(BitRow& dst, const BitRow& src) {
  for (std::size_t w = 0; w < dst.size(); ++w) dst[w] ^= src[w];
}

}  // namespace

EncoderState::EncoderState(const TannerGraph& g) {
  g.check_consistency();
  n_ = g.n;
  m_ = g.m;
  const int words = (n_ + 63) / 64;
  std::vector<BitRow> h(m_, BitRow(words, 0));
  for (int c = 0; c < m_; ++c)
    for (int v : g.check_neighbors[c]) flip_bit(h[c], v);

  // Row echelon over GF(2); pivots chosen left to right.
  std::vector<char> col_is_pivot(n_, 0);
  int row = 0;
  for (int col = 0; col < n_ && row < m_; ++col) {
    int pr = -1;
    for (int r = row; r < m_; ++r)
      if (get_bit(h[r], col)) {
        pr = r;
        break;
      }
    if (pr < 0) continue;
    std::swap(h[row], h[pr]);
    for (int r = 0; r < m_; ++r)
      if (r != row && get_bit(h[r], col)) xor_rows(h[r], h[row]);
    pivot_cols_.push_back(col);
    col_is_pivot[col] = 1;
    ++row;
  }
  rank_ = row;
  k_ = n_ - rank_;
  for (int col = 0; col < n_; ++col)
    if (!col_is_pivot[col]) free_cols_.push_back(col);

  // Keep each reduced row restricted to the free columns.
  const int kwords = (k_ + 63) / 64;
  rows_.assign(rank_, BitRow(kwords, 0));
  for (int r = 0; r < rank_; ++r)
    for (int j = 0; j < k_; ++j)
      if (get_bit(h[r], free_cols_[j])) flip_bit(rows_[r], j);
}

std::vector<std::uint8_t> EncoderState::encode(const std::vector<std::uint8_t>& message) const {
  if ((int)message.size() != k_) throw domain_error("encode: message length mismatch");
  const int kwords = (k_ + 63) / 64;
  BitRow msg(kwords, 0);
  for (int j = 0; j < k_; ++j)
    if (message[j]) flip_bit(msg, j);

  std::vector<std::uint8_t> code(n_, 0);
  for (int j = 0; j < k_; ++j) code[free_cols_[j]] = message[j];
  for (int r = 0; r < rank_; ++r) {
    std::uint64_t acc = 0;
    for (int w = 0; w < kwords; ++w) acc ^= rows_[r][w] & msg[w];
    code[pivot_cols_[r]] = (std::uint8_t)(__builtin_popcountll(acc) & 1);
  }
  return code;
}

std::vector<std::uint8_t> EncoderState::extract_message(
    const std::vector<std::uint8_t>& codeword) const {
  if ((int)codeword.size() != n_) throw domain_error("extract_message: length mismatch");
  std::vector<std::uint8_t> msg(k_);
  for (int j = 0; j < k_; ++j) msg[j] = codeword[free_cols_[j]];
  return msg;
}

EncoderState make_encoder(const TannerGraph& g) { return EncoderState(g); }

}  // namespace gmac
