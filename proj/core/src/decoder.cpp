#include "gmac/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmac/errors.hpp"

namespace gmac {
namespace {

constexpr double kVcClamp = 30.0;       // pre-tanh message clamp
constexpr double kTanhCap = 1.0 - 1e-15;

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double d = a - b;
  return d > 0.0 ? a + std::log1p(std::exp(-d)) : b + std::log1p(std::exp(d));
}

double sign_of_bit(int b) { return b == 0 ? 1.0 : -1.0; }

// Compact per-user message-passing arrays.
struct GraphEngine {
  int n = 0, m = 0;
  std::vector<int> var_ptr, var_check;    // CSR by variable; var_check = check id per edge
  std::vector<int> check_ptr, check_edge; // per check: edge ids (indexing var order)
  std::vector<double> cv, vc;             // messages per edge
  std::vector<double> vs_sum;             // per variable: sum of incoming cv
  std::vector<double> sv;                 // state-to-variable per variable
  std::vector<std::uint8_t> hard;

  explicit GraphEngine(const TannerGraph& g) : n(g.n), m(g.m) {
    var_ptr.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) var_ptr[v + 1] = var_ptr[v] + (int)g.var_neighbors[v].size();
    const int e_total = var_ptr[n];
    var_check.resize(e_total);
    std::vector<int> cdeg(m, 0);
    for (int v = 0; v < n; ++v) {
      int base = var_ptr[v];
      for (std::size_t i = 0; i < g.var_neighbors[v].size(); ++i) {
        int c = g.var_neighbors[v][i];
        var_check[base + (int)i] = c;
        ++cdeg[c];
      }
    }
    check_ptr.assign(m + 1, 0);
    for (int c = 0; c < m; ++c) check_ptr[c + 1] = check_ptr[c] + cdeg[c];
    check_edge.resize(e_total);
    std::vector<int> fill(m, 0);
    for (int e = 0; e < e_total; ++e) {
      int c = var_check[e];
      check_edge[check_ptr[c] + fill[c]++] = e;
    }
    cv.assign(e_total, 0.0);
    vc.assign(e_total, 0.0);
    vs_sum.assign(n, 0.0);
    sv.assign(n, 0.0);
    hard.assign(n, 0);
  }

  void accumulate_vs() {
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int e = var_ptr[v]; e < var_ptr[v + 1]; ++e) s += cv[e];
      vs_sum[v] = s;
    }
  }

  void variable_pass() {
    for (int v = 0; v < n; ++v) {
      double total = sv[v] + vs_sum[v];
      for (int e = var_ptr[v]; e < var_ptr[v + 1]; ++e)
        vc[e] = std::clamp(total - cv[e], -kVcClamp, kVcClamp);
    }
  }

  void check_pass(std::vector<double>& scratch) {
    for (int c = 0; c < m; ++c) {
      const int lo = check_ptr[c], hi = check_ptr[c + 1], deg = hi - lo;
      scratch.resize(deg);
      for (int i = 0; i < deg; ++i) scratch[i] = std::tanh(0.5 * vc[check_edge[lo + i]]);
      // forward/backward partial products; robust to zero factors
      double fwd = 1.0;
      for (int i = 0; i < deg; ++i) {
        double t = scratch[i];
        scratch[i] = fwd;  // product of tanh before i
        fwd *= t;
      }
      double bwd = 1.0;
      for (int i = deg - 1; i >= 0; --i) {
        double excl = scratch[i] * bwd;
        bwd *= std::tanh(0.5 * vc[check_edge[lo + i]]);
        excl = std::clamp(excl, -kTanhCap, kTanhCap);
        cv[check_edge[lo + i]] = 2.0 * std::atanh(excl);
      }
    }
  }

  void decide() {
    for (int v = 0; v < n; ++v) {
      double llr = sv[v] + vs_sum[v];
      hard[v] = llr > 0.0 ? 0 : 1;  // ties resolve to bit 1
    }
  }
};

}  // namespace

void StateNodeTable::channel_logprobs(double y, double offset, double lp[2][2]) const {
  const double inv2v = 0.5 / noise_var;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double base = offset + sign_of_bit(a) * amp_user1 + sign_of_bit(b) * amp_user2;
      double best = -std::numeric_limits<double>::infinity();
      for (double r : residual_atoms) {
        double d = y - base - r;
        best = std::max(best, -d * d * inv2v);
      }
      double s = 0.0;
      for (double r : residual_atoms) {
        double d = y - base - r;
        s += std::exp(-d * d * inv2v - best);
      }
      lp[a][b] = best + std::log(s);
    }
}

double state_update(const StateNodeTable& tbl, double y, double vs_other, int target_user,
                    double offset) {
  double lp[2][2];
  tbl.channel_logprobs(y, offset, lp);
  if (target_user == 2) {
    std::swap(lp[0][1], lp[1][0]);  // transpose: own/other roles exchange
  } else if (target_user != 1) {
    throw domain_error("state_update: user must be 1 or 2");
  }
  if (vs_other == std::numeric_limits<double>::infinity())
    return lp[0][0] - lp[1][0];
  if (vs_other == -std::numeric_limits<double>::infinity())
    return lp[0][1] - lp[1][1];
  return logaddexp(lp[0][0] + vs_other, lp[0][1]) - logaddexp(lp[1][0] + vs_other, lp[1][1]);
}

DecodeResult joint_bp_decode(const std::vector<double>& y, const TannerGraph& g1,
                             const TannerGraph& g2, const StateNodeTable& tbl, int max_iter) {
  const int n = (int)y.size();
  if (g1.n != n || g2.n != n) throw domain_error("joint_bp_decode: length mismatch");
  if (!tbl.offsets.empty() && (int)tbl.offsets.size() != n)
    throw domain_error("joint_bp_decode: offset vector length mismatch");

  GraphEngine u1(g1), u2(g2);

  // Channel tables per sample: lp[a][b] from user 1's perspective.
  std::vector<std::array<double, 4>> lp(n);
  for (int i = 0; i < n; ++i) {
    double tmp[2][2];
    tbl.channel_logprobs(y[i], tbl.offsets.empty() ? 0.0 : tbl.offsets[i], tmp);
    lp[i] = {tmp[0][0], tmp[0][1], tmp[1][0], tmp[1][1]};
  }

  DecodeResult res;
  std::vector<double> scratch;
  for (int it = 0; it < max_iter; ++it) {
    u1.accumulate_vs();
    u2.accumulate_vs();
    // state node: both directions from the same variable-to-state snapshot
    for (int i = 0; i < n; ++i) {
      double vs1 = u1.vs_sum[i], vs2 = u2.vs_sum[i];
      u1.sv[i] = logaddexp(lp[i][0] + vs2, lp[i][1]) - logaddexp(lp[i][2] + vs2, lp[i][3]);
      u2.sv[i] = logaddexp(lp[i][0] + vs1, lp[i][2]) - logaddexp(lp[i][1] + vs1, lp[i][3]);
    }
    u1.variable_pass();
    u2.variable_pass();
    u1.check_pass(scratch);
    u2.check_pass(scratch);
    u1.accumulate_vs();
    u2.accumulate_vs();
    u1.decide();
    u2.decide();
    res.iterations = it + 1;
    bool ok1 = syndrome_ok(g1, u1.hard);
    bool ok2 = syndrome_ok(g2, u2.hard);
    if (ok1 && ok2) {
      res.syndrome_satisfied = {true, true};
      break;
    }
    if (it + 1 == max_iter) res.syndrome_satisfied = {ok1, ok2};
  }
  res.hard_bits = {std::move(u1.hard), std::move(u2.hard)};
  return res;
}

SicResult sic_decode(const std::vector<double>& y, const std::vector<LevelCodes>& levels,
                     double noise_var, int max_iter, bool genie,
                     const std::vector<std::array<std::vector<std::uint8_t>, 2>>* true_bits) {
  const int n = (int)y.size();
  const int L = (int)levels.size();
  if (genie && !true_bits) throw domain_error("sic_decode: genie mode needs the true bits");

  SicResult out;
  std::vector<double> offsets(n, 0.0);
  for (int t = 0; t < L; ++t) {
    StateNodeTable tbl;
    tbl.amp_user1 = levels[t].amp1;
    tbl.amp_user2 = levels[t].amp2;
    tbl.noise_var = noise_var;
    tbl.residual_atoms = {0.0};
    std::vector<double> atoms = {0.0};
    for (int f = t + 1; f < L; ++f) {
      std::vector<double> next;
      next.reserve(atoms.size() * 4);
      for (double s : atoms)
        for (double e1 : {1.0, -1.0})
          for (double e2 : {1.0, -1.0})
            next.push_back(s + e1 * levels[f].amp1 + e2 * levels[f].amp2);
      atoms.swap(next);
    }
    tbl.residual_atoms = std::move(atoms);
    if (t > 0) tbl.offsets = offsets;

    DecodeResult r = joint_bp_decode(y, *levels[t].graph1, *levels[t].graph2, tbl, max_iter);
    out.level_ok.push_back(r.syndrome_satisfied[0] && r.syndrome_satisfied[1]);

    const auto& b1 = genie ? (*true_bits)[t][0] : r.hard_bits[0];
    const auto& b2 = genie ? (*true_bits)[t][1] : r.hard_bits[1];
    for (int i = 0; i < n; ++i) {
      offsets[i] += sign_of_bit(b1[i]) * levels[t].amp1 + sign_of_bit(b2[i]) * levels[t].amp2;
    }
    out.levels.push_back(std::move(r));
  }
  return out;
}

}  // namespace gmac
