#include "gmac/sim.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "../../vendor/json.hpp"
#include "gmac/errors.hpp"

namespace gmac {
namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t snr_index, std::uint64_t frame,
                     std::uint64_t purpose) {
  std::uint64_t seed = master_seed;
  seed = splitmix64(seed) ^ (snr_index * 0x9e3779b97f4a7c15ULL);
  seed = splitmix64(seed) ^ (frame * 0xd1b54a32d192ed03ULL);
  seed = splitmix64(seed) ^ (purpose * 0x2545f4914f6cdd1dULL);
  for (auto& s : s_) s = splitmix64(seed);
}

std::uint64_t RngStream::next_u64() {
  // xoshiro256++
  std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::next_uniform() {
  return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RngStream::next_gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = next_uniform(), u2 = next_uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::uint8_t RngStream::next_bit() { return (std::uint8_t)(next_u64() >> 63); }

int SchemeCodes::block_length() const {
  return codes.empty() ? 0 : codes[0][0].graph->n;
}

std::pair<std::vector<double>, std::vector<double>> transmit(
    const std::vector<std::array<std::vector<std::uint8_t>, 2>>& messages,
    const SchemeCodes& scheme) {
  const int L = (int)scheme.codes.size();
  if ((int)messages.size() != L) throw domain_error("transmit: stage count mismatch");
  const int n = scheme.block_length();
  std::vector<double> x1(n, 0.0), x2(n, 0.0);
  for (int t = 0; t < L; ++t) {
    for (int u = 0; u < 2; ++u) {
      const CodeInstance& ci = scheme.codes[t][u];
      if ((int)messages[t][u].size() != ci.encoder->message_length())
        throw domain_error("transmit: message length mismatch");
      std::vector<std::uint8_t> cw = ci.encoder->encode(messages[t][u]);
      double amp = (u == 0) ? scheme.amp1[t] : scheme.amp2[t];
      auto& x = (u == 0) ? x1 : x2;
      for (int i = 0; i < n; ++i) x[i] += cw[i] ? -amp : amp;  // bit 0 -> +amp
    }
  }
  return {std::move(x1), std::move(x2)};
}

std::vector<double> awgn(const std::vector<double>& x_sum, double noise_var, RngStream& rng) {
  if (!(noise_var > 0.0)) throw domain_error("awgn: noise_var must be positive");
  const double sd = std::sqrt(noise_var);
  std::vector<double> y(x_sum.size());
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = x_sum[i] + sd * rng.next_gaussian();
  return y;
}

std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t trials, double z) {
  if (trials <= 0) return {0.0, 1.0};
  double p = double(errors) / double(trials);
  double z2 = z * z, nt = double(trials);
  double denom = 1.0 + z2 / nt;
  double center = (p + z2 / (2.0 * nt)) / denom;
  double half = z / denom * std::sqrt(p * (1.0 - p) / nt + z2 / (4.0 * nt * nt));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double SnrPointReport::averaged_ber() const {
  std::int64_t e = 0, b = 0;
  for (int u = 0; u < 2; ++u)
    for (const auto& c : cell[u]) {
      e += c.bit_errors;
      b += c.bits;
    }
  return b ? double(e) / double(b) : 0.0;
}

CellStats SnrPointReport::totals() const {
  CellStats t;
  for (int u = 0; u < 2; ++u)
    for (const auto& c : cell[u]) {
      t.bit_errors += c.bit_errors;
      t.bits += c.bits;
      t.frame_errors += c.frame_errors;
      t.frames += c.frames;
    }
  return t;
}

namespace {

struct FrameOutcome {
  // [user][stage]
  std::array<std::vector<std::int64_t>, 2> bit_errors;
  std::array<std::vector<char>, 2> code_failed;
  bool any_failed = false;
};

FrameOutcome run_frame(const SimConfig& cfg, std::size_t snr_idx, std::int64_t frame,
                       double noise_var) {
  const auto& scheme = cfg.scheme;
  const int L = (int)scheme.codes.size();
  const int n = scheme.block_length();

  std::vector<std::array<std::vector<std::uint8_t>, 2>> msgs(L);
  RngStream msg_rng(cfg.master_seed, snr_idx, frame, 0);
  for (int t = 0; t < L; ++t)
    for (int u = 0; u < 2; ++u) {
      int k = scheme.codes[t][u].encoder->message_length();
      msgs[t][u].resize(k);
      for (int i = 0; i < k; ++i) msgs[t][u][i] = msg_rng.next_bit();
    }

  auto [x1, x2] = transmit(msgs, scheme);
  std::vector<double> xsum(n);
  for (int i = 0; i < n; ++i) xsum[i] = x1[i] + x2[i];
  RngStream noise_rng(cfg.master_seed, snr_idx, frame, 1);
  std::vector<double> y = awgn(xsum, noise_var, noise_rng);

  std::vector<LevelCodes> levels(L);
  std::vector<std::array<std::vector<std::uint8_t>, 2>> true_bits(L);
  for (int t = 0; t < L; ++t) {
    levels[t].graph1 = scheme.codes[t][0].graph;
    levels[t].graph2 = scheme.codes[t][1].graph;
    levels[t].amp1 = scheme.amp1[t];
    levels[t].amp2 = scheme.amp2[t];
    true_bits[t][0] = scheme.codes[t][0].encoder->encode(msgs[t][0]);
    true_bits[t][1] = scheme.codes[t][1].encoder->encode(msgs[t][1]);
  }
  SicResult sic = sic_decode(y, levels, noise_var, cfg.max_iter, cfg.genie,
                             cfg.genie ? &true_bits : nullptr);

  FrameOutcome out;
  for (int u = 0; u < 2; ++u) {
    out.bit_errors[u].assign(L, 0);
    out.code_failed[u].assign(L, 0);
  }
  for (int t = 0; t < L; ++t)
    for (int u = 0; u < 2; ++u) {
      const EncoderState* enc = scheme.codes[t][u].encoder;
      std::vector<std::uint8_t> got = enc->extract_message(sic.levels[t].hard_bits[u]);
      std::int64_t errs = 0;
      for (std::size_t i = 0; i < got.size(); ++i) errs += got[i] != msgs[t][u][i];
      out.bit_errors[u][t] = errs;
      bool failed = errs > 0 || !sic.levels[t].syndrome_satisfied[u];
      out.code_failed[u][t] = failed;
      out.any_failed = out.any_failed || failed;
    }
  return out;
}

}  // namespace

BerReport run_ber(const SimConfig& cfg) {
  if (cfg.snr_db.empty()) throw domain_error("run_ber: empty SNR list");
  if (cfg.max_frames < 1) throw domain_error("run_ber: need at least one frame");
  auto t0 = std::chrono::steady_clock::now();

  BerReport report;
  const int L = (int)cfg.scheme.codes.size();
  const int threads = std::max(1, cfg.threads);

  for (std::size_t s = 0; s < cfg.snr_db.size(); ++s) {
    const double noise_var = noise_var_from_snr_db(cfg.snr_db[s]);
    SnrPointReport point;
    point.snr_db = cfg.snr_db[s];
    point.cell[0].assign(L, {});
    point.cell[1].assign(L, {});

    constexpr std::int64_t kChunk = 16;  // stop checks on fixed chunk boundaries
    std::int64_t next_frame = 0;
    while (next_frame < cfg.max_frames && point.frame_errors < cfg.frame_error_target) {
      std::int64_t begin = next_frame;
      std::int64_t end = std::min<std::int64_t>(cfg.max_frames, begin + kChunk);
      next_frame = end;

      std::vector<FrameOutcome> outcomes(end - begin);
      std::atomic<std::int64_t> cursor{begin};
      auto worker = [&]() {
        for (;;) {
          std::int64_t f = cursor.fetch_add(1);
          if (f >= end) break;
          outcomes[f - begin] = run_frame(cfg, s, f, noise_var);
        }
      };
      std::vector<std::thread> pool;
      for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
      worker();
      for (auto& th : pool) th.join();

      for (const auto& oc : outcomes) {  // frame-index order: deterministic totals
        for (int u = 0; u < 2; ++u)
          for (int t = 0; t < L; ++t) {
            CellStats& c = point.cell[u][t];
            c.bit_errors += oc.bit_errors[u][t];
            c.bits += cfg.scheme.codes[t][u].encoder->message_length();
            c.frame_errors += oc.code_failed[u][t];
            c.frames += 1;
          }
        point.frames += 1;
        point.frame_errors += oc.any_failed;
      }
    }
    report.points.push_back(std::move(point));
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

BerReport sweep_snr(const SimConfig& cfg, const std::string& csv_path) {
  BerReport report = run_ber(cfg);
  std::ofstream out(csv_path);
  if (!out) throw numerical_error("sweep_snr: cannot open " + csv_path);
  out << report_to_csv(report);
  if (!out) throw numerical_error("sweep_snr: write failed for " + csv_path);
  return report;
}

std::string report_to_csv(const BerReport& report) {
  std::ostringstream os;
  os.precision(17);
  os << "snr_db,user,level,bit_errors,bits,frame_errors,frames,ber,fer\n";
  for (const auto& p : report.points) {
    for (int u = 0; u < 2; ++u)
      for (std::size_t t = 0; t < p.cell[u].size(); ++t) {
        const CellStats& c = p.cell[u][t];
        os << p.snr_db << ',' << u + 1 << ',' << t + 1 << ',' << c.bit_errors << ',' << c.bits
           << ',' << c.frame_errors << ',' << c.frames << ',' << c.ber() << ',' << c.fer()
           << '\n';
      }
    // averaged row (user 0, level 0)
    CellStats tot = p.totals();
    os << p.snr_db << ",0,0," << tot.bit_errors << ',' << tot.bits << ',' << p.frame_errors
       << ',' << p.frames << ',' << p.averaged_ber() << ','
       << (p.frames ? double(p.frame_errors) / double(p.frames) : 0.0) << '\n';
  }
  return os.str();
}

BerReport report_from_csv(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  if (!std::getline(is, line)) throw domain_error("report_from_csv: empty input");
  BerReport rep;
  std::map<double, std::size_t> index;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tok;
    std::vector<std::string> f;
    while (std::getline(ls, tok, ',')) f.push_back(tok);
    if (f.size() != 9) throw domain_error("report_from_csv: bad column count");
    double snr = std::stod(f[0]);
    int user = std::stoi(f[1]), level = std::stoi(f[2]);
    auto it = index.find(snr);
    if (it == index.end()) {
      it = index.emplace(snr, rep.points.size()).first;
      rep.points.push_back({});
      rep.points.back().snr_db = snr;
    }
    SnrPointReport& p = rep.points[it->second];
    if (user == 0) {
      p.frame_errors = std::stoll(f[5]);
      p.frames = std::stoll(f[6]);
      continue;
    }
    auto& cells = p.cell[user - 1];
    if ((int)cells.size() < level) cells.resize(level);
    CellStats& c = cells[level - 1];
    c.bit_errors = std::stoll(f[3]);
    c.bits = std::stoll(f[4]);
    c.frame_errors = std::stoll(f[5]);
    c.frames = std::stoll(f[6]);
  }
  return rep;
}

std::string report_to_json(const BerReport& report) {
  nlohmann::json j;
  j["elapsed_seconds"] = report.elapsed_seconds;
  j["points"] = nlohmann::json::array();
  for (const auto& p : report.points) {
    nlohmann::json jp;
    jp["snr_db"] = p.snr_db;
    jp["frames"] = p.frames;
    jp["frame_errors"] = p.frame_errors;
    jp["averaged_ber"] = p.averaged_ber();
    jp["cells"] = nlohmann::json::array();
    for (int u = 0; u < 2; ++u)
      for (std::size_t t = 0; t < p.cell[u].size(); ++t) {
        const CellStats& c = p.cell[u][t];
        nlohmann::json jc;
        jc["user"] = u + 1;
        jc["level"] = t + 1;
        jc["bit_errors"] = c.bit_errors;
        jc["bits"] = c.bits;
        jc["frame_errors"] = c.frame_errors;
        jc["frames"] = c.frames;
        jc["ber"] = c.ber();
        jc["fer"] = c.fer();
        if (c.bit_errors < 100) {
          auto [lo, hi] = wilson_interval(c.bit_errors, c.bits);
          jc["ber_wilson_low"] = lo;
          jc["ber_wilson_high"] = hi;
        }
        jp["cells"].push_back(jc);
      }
    j["points"].push_back(jp);
  }
  return j.dump(2);
}

}  // namespace gmac
