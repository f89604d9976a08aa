#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmac/constellation.hpp"
#include "gmac/decoder.hpp"
#include "gmac/encoder.hpp"
#include "gmac/tanner_graph.hpp"

namespace gmac {

// Deterministic counter-based stream: every (master seed, snr index, frame,
// purpose) tuple yields an independent generator, independent of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t frame,
            std::uint64_t purpose);
  std::uint64_t next_u64();
  double next_uniform();            // (0, 1)
  double next_gaussian();           // Box-Muller, platform independent
  std::uint8_t next_bit();

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// One user/level code instance usable by the simulator.
struct CodeInstance {
  const TannerGraph* graph = nullptr;
  const EncoderState* encoder = nullptr;
};

// Full transmission bundle: stage-ordered codes and amplitudes per user.
struct SchemeCodes {
  // [stage][user]
  std::vector<std::array<CodeInstance, 2>> codes;
  std::vector<double> amp1, amp2;  // per stage
  int block_length() const;
};

// Encode per level, map bit 0 -> +amp / bit 1 -> -amp, sum the levels.
// messages indexed [stage][user].
std::pair<std::vector<double>, std::vector<double>> transmit(
    const std::vector<std::array<std::vector<std::uint8_t>, 2>>& messages,
    const SchemeCodes& scheme);

std::vector<double> awgn(const std::vector<double>& x_sum, double noise_var, RngStream& rng);

struct SimConfig {
  SchemeCodes scheme;              // graphs + encoders + amplitudes
  std::vector<double> snr_db;      // sweep points
  int max_frames = 1000;
  int frame_error_target = 100;    // stop a point after this many frame errors
  int max_iter = 200;
  std::uint64_t master_seed = 1;
  bool genie = false;
  int threads = 1;
};

struct CellStats {
  std::int64_t bit_errors = 0;
  std::int64_t bits = 0;
  std::int64_t frame_errors = 0;
  std::int64_t frames = 0;
  double ber() const { return bits ? double(bit_errors) / double(bits) : 0.0; }
  double fer() const { return frames ? double(frame_errors) / double(frames) : 0.0; }
};

struct SnrPointReport {
  double snr_db = 0.0;
  // cell[user][stage]
  std::array<std::vector<CellStats>, 2> cell;
  std::int64_t frames = 0;
  std::int64_t frame_errors = 0;  // frames with any failed code
  double averaged_ber() const;    // over the two users and all stages
  CellStats totals() const;
};

struct BerReport {
  std::vector<SnrPointReport> points;
  double elapsed_seconds = 0.0;
};

// Wilson score interval for an error proportion.
std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials,
                                          double z = 1.96);

BerReport run_ber(const SimConfig& cfg);

// run_ber per SNR point plus CSV emission (schema documented in the README).
BerReport sweep_snr(const SimConfig& cfg, const std::string& csv_path);

std::string report_to_csv(const BerReport& report);
BerReport report_from_csv(const std::string& text);
std::string report_to_json(const BerReport& report);

}  // namespace gmac
