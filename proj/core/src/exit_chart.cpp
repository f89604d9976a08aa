#include "gmac/exit_chart.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "gmac/errors.hpp"
#include "gmac/jfunction.hpp"
#include "gmac/quadrature.hpp"

namespace gmac {
namespace {

constexpr double kInfoCap = 1.0 - 1e-12;  // j_inverse saturation guard

double logaddexp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  double d = a - b;
  return d > 0.0 ? a + std::log1p(std::exp(-d)) : b + std::log1p(std::exp(d));
}

double sign_of_bit(int b) { return b == 0 ? 1.0 : -1.0; }

// Log channel likelihoods log P(y | b_own, b_oth) for one offset realization,
// marginalizing the residual atoms uniformly (normalization constants that
// cancel inside f are omitted; the 1/R weight is kept so densities are true).
struct ChannelTable {
  std::array<std::array<std::vector<double>, 2>, 2> lp;  // [b_own][b_oth][y]
};

ChannelTable build_table(const LevelChannelContext& ctx, int target_user, double offset,
                         const std::vector<double>& ys) {
  ChannelTable t;
  const double inv2v = 0.5 / ctx.noise_var;
  const double logw = -std::log(double(ctx.residual_atoms.size()));
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      auto& col = t.lp[a][b];
      col.resize(ys.size());
      const double base =
          offset + sign_of_bit(a) * ctx.own_amp(target_user) + sign_of_bit(b) * ctx.other_amp(target_user);
      for (std::size_t i = 0; i < ys.size(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        for (double r : ctx.residual_atoms) {
          double d = ys[i] - base - r;
          best = std::max(best, -d * d * inv2v);
        }
        double s = 0.0;
        for (double r : ctx.residual_atoms) {
          double d = ys[i] - base - r;
          s += std::exp(-d * d * inv2v - best);
        }
        col[i] = best + std::log(s) + logw;
      }
    }
  return t;
}

double state_f(const ChannelTable& t, std::size_t yi, double vs) {
  return logaddexp(t.lp[0][0][yi] + vs, t.lp[0][1][yi]) -
         logaddexp(t.lp[1][0][yi] + vs, t.lp[1][1][yi]);
}

double y_halfspan(const LevelChannelContext& ctx) {
  double amax = 0.0;
  for (double r : ctx.residual_atoms) amax = std::max(amax, std::abs(r));
  double off = 0.0;
  for (double o : ctx.conditioned_offsets) off = std::max(off, std::abs(o));
  return amax + off + std::abs(ctx.amp_user1) + std::abs(ctx.amp_user2) +
         8.0 * std::sqrt(ctx.noise_var);
}

double f_means_impl(const LevelChannelContext& ctx, int target_user, int b_other, double m,
                    int ny, int nv) {
  const double span = y_halfspan(ctx);
  std::vector<double> ys, wy;
  map_rule(gauss_legendre(ny), -span, span, ys, wy);
  const double norm = 1.0 / std::sqrt(2.0 * M_PI * ctx.noise_var);

  double acc = 0.0;
  for (double offset : ctx.conditioned_offsets) {
    ChannelTable t = build_table(ctx, target_user, offset, ys);
    double val = 0.0;
    if (m < 1e-12) {
      for (std::size_t i = 0; i < ys.size(); ++i) {
        double py = std::exp(t.lp[0][b_other][i]) * norm;
        val += wy[i] * py * state_f(t, i, 0.0);
      }
    } else {
      const double mv = sign_of_bit(b_other) * m;
      const double sd = std::sqrt(2.0 * m);
      std::vector<double> vs, wv;
      map_rule(gauss_legendre(nv), mv - 8.0 * sd, mv + 8.0 * sd, vs, wv);
      std::vector<double> pv(vs.size());
      const double vnorm = 1.0 / std::sqrt(4.0 * M_PI * m);
      for (std::size_t k = 0; k < vs.size(); ++k) {
        double d = vs[k] - mv;
        pv[k] = std::exp(-d * d / (4.0 * m)) * vnorm;
      }
      for (std::size_t i = 0; i < ys.size(); ++i) {
        double py = std::exp(t.lp[0][b_other][i]) * norm;
        if (py * wy[i] == 0.0) continue;
        double inner = 0.0;
        for (std::size_t k = 0; k < vs.size(); ++k)
          inner += wv[k] * pv[k] * state_f(t, i, vs[k]);
        val += wy[i] * py * inner;
      }
    }
    acc += val;
  }
  return acc / double(ctx.conditioned_offsets.size());
}

}  // namespace

LevelChannelContext LevelChannelContext::make(const LevelDecomposition& d1,
                                              const LevelDecomposition& d2, int stage,
                                              double noise_var, InterferenceModel model,
                                              const std::vector<int>& order1,
                                              const std::vector<int>& order2) {
  const int L = d1.levels();
  if (d2.levels() != L) throw domain_error("LevelChannelContext: level count mismatch");
  if (stage < 1 || stage > L) throw domain_error("LevelChannelContext: stage out of range");
  std::vector<int> o1 = order1, o2 = order2;
  if (o1.empty()) {
    o1.resize(L);
    std::iota(o1.begin(), o1.end(), 1);
  }
  if (o2.empty()) o2 = o1;
  if ((int)o1.size() != L || (int)o2.size() != L)
    throw domain_error("LevelChannelContext: order length mismatch");

  LevelChannelContext ctx;
  ctx.level_index = stage;
  ctx.model = model;
  ctx.noise_var = noise_var;
  ctx.amp_user1 = d1.amplitudes.at(o1[stage - 1] - 1);
  ctx.amp_user2 = d2.amplitudes.at(o2[stage - 1] - 1);

  // Later stages: residual interference.
  std::vector<std::pair<double, double>> future;
  for (int t = stage; t < L; ++t)
    future.push_back({d1.amplitudes.at(o1[t] - 1), d2.amplitudes.at(o2[t] - 1)});
  if (model == InterferenceModel::gaussian) {
    for (auto [a, b] : future) ctx.noise_var += a * a + b * b;
    ctx.residual_atoms = {0.0};
  } else {
    std::vector<double> atoms = {0.0};
    for (auto [a, b] : future) {
      std::vector<double> next;
      next.reserve(atoms.size() * 4);
      for (double s : atoms)
        for (double e1 : {1.0, -1.0})
          for (double e2 : {1.0, -1.0}) next.push_back(s + e1 * a + e2 * b);
      atoms.swap(next);
    }
    ctx.residual_atoms = std::move(atoms);
  }

  // Earlier stages: enumerate decoded-bit realizations of both users.
  std::vector<double> offsets = {0.0};
  for (int t = 0; t + 1 < stage; ++t) {
    double a = d1.amplitudes.at(o1[t] - 1), b = d2.amplitudes.at(o2[t] - 1);
    std::vector<double> next;
    next.reserve(offsets.size() * 4);
    for (double s : offsets)
      for (double e1 : {1.0, -1.0})
        for (double e2 : {1.0, -1.0}) next.push_back(s + e1 * a + e2 * b);
    offsets.swap(next);
  }
  ctx.conditioned_offsets = std::move(offsets);
  return ctx;
}

double f_means(const LevelChannelContext& ctx, int target_user, int b_other, double m, int ny,
               int nv) {
  if (m < 0.0) throw domain_error("f_means: negative message mean");
  if (target_user != 1 && target_user != 2) throw domain_error("f_means: user must be 1 or 2");
  if (b_other != 0 && b_other != 1) throw domain_error("f_means: bit must be 0 or 1");
  return f_means_impl(ctx, target_user, b_other, m, ny, nv);
}

double exit_sv(const LevelChannelContext& ctx, int target_user, double m) {
  double f0 = std::max(0.0, f_means(ctx, target_user, 0, m));
  double f1 = std::max(0.0, f_means(ctx, target_user, 1, m));
  return 0.5 * j_function(std::sqrt(2.0 * f0)) + 0.5 * j_function(std::sqrt(2.0 * f1));
}

double exit_vc(const DegreeDistribution& dd, double i_cv, double i_sv) {
  double s_cv = j_inverse(std::clamp(i_cv, 0.0, kInfoCap));
  double s_sv = j_inverse(std::clamp(i_sv, 0.0, kInfoCap));
  double out = 0.0;
  for (const auto& [j, v] : dd.lambda)
    out += v * j_function(std::sqrt((j - 1) * s_cv * s_cv + s_sv * s_sv));
  return out;
}

double exit_vs(const DegreeDistribution& dd, double i_cv) {
  double s = j_inverse(std::clamp(i_cv, 0.0, kInfoCap));
  double out = 0.0;
  for (const auto& [j, v] : node_perspective(dd)) out += v * j_function(std::sqrt(double(j)) * s);
  return out;
}

double exit_cv(int d_c, double i_vc) {
  if (d_c < 2) throw domain_error("exit_cv: d_c must be >= 2");
  double s = j_inverse(std::clamp(1.0 - i_vc, 0.0, kInfoCap));
  return 1.0 - j_function(std::sqrt(double(d_c - 1)) * s);
}

StateInfoTable::StateInfoTable(const LevelChannelContext& ctx, int target_user) {
  constexpr int kPoints = 81;
  constexpr double kLogLo = -4.0, kLogHi = 5.5;
  constexpr int kNv = 65;  // the vs integrand is smooth; 65 nodes suffice
  info_at_zero_ = 0.5 * j_function(std::sqrt(2.0 * std::max(
                            0.0, f_means_impl(ctx, target_user, 0, 0.0, 201, kNv)))) +
                  0.5 * j_function(std::sqrt(2.0 * std::max(
                            0.0, f_means_impl(ctx, target_user, 1, 0.0, 201, kNv))));
  log_m_.resize(kPoints);
  info_.resize(kPoints);
  for (int i = 0; i < kPoints; ++i) {
    double lm = kLogLo + (kLogHi - kLogLo) * i / (kPoints - 1);
    double m = std::pow(10.0, lm);
    double f0 = std::max(0.0, f_means_impl(ctx, target_user, 0, m, 201, kNv));
    double f1 = std::max(0.0, f_means_impl(ctx, target_user, 1, m, 201, kNv));
    log_m_[i] = lm;
    info_[i] = 0.5 * j_function(std::sqrt(2.0 * f0)) + 0.5 * j_function(std::sqrt(2.0 * f1));
  }
}

double StateInfoTable::operator()(double m) const {
  if (m <= 0.0) return info_at_zero_;
  double lm = std::log10(m);
  if (lm <= log_m_.front()) {
    // blend toward the m = 0 value
    double t = m / std::pow(10.0, log_m_.front());
    return info_at_zero_ + t * (info_.front() - info_at_zero_);
  }
  if (lm >= log_m_.back()) return info_.back();
  auto it = std::upper_bound(log_m_.begin(), log_m_.end(), lm);
  std::size_t k = it - log_m_.begin();
  double t = (lm - log_m_[k - 1]) / (log_m_[k] - log_m_[k - 1]);
  return info_[k - 1] + t * (info_[k] - info_[k - 1]);
}

TrajectoryResult joint_trajectory(const LevelChannelContext& ctx, const DegreeDistribution& dd1,
                                  const DegreeDistribution& dd2, const TrajectoryOptions& opt) {
  dd1.validate();
  dd2.validate();
  StateInfoTable sv1(ctx, 1);
  StateInfoTable sv2(ctx, 2);
  const StateInfoTable* sv[2] = {&sv1, &sv2};
  const DegreeDistribution* dd[2] = {&dd1, &dd2};

  TrajectoryResult res;
  std::array<ExitState, 2> st{};
  for (int it = 0; it < opt.max_iters; ++it) {
    std::array<ExitState, 2> prev = st;
    for (int k = 0; k < 2; ++k) {
      const ExitState& mine = prev[k];
      const ExitState& theirs = prev[1 - k];
      double s_vs = j_inverse(std::clamp(theirs.i_vs, 0.0, kInfoCap));
      double m = 0.5 * s_vs * s_vs;
      ExitState next;
      next.i_sv = (*sv[k])(m);
      next.i_vc = exit_vc(*dd[k], mine.i_cv, next.i_sv);
      next.i_cv = exit_cv(dd[k]->d_c, next.i_vc);
      next.i_vs = exit_vs(*dd[k], next.i_cv);
      st[k] = next;
    }
    res.trace.push_back(st);
    res.iterations = it + 1;
    if (st[0].i_vc >= 1.0 - opt.convergence_threshold &&
        st[1].i_vc >= 1.0 - opt.convergence_threshold) {
      res.converged = true;
      return res;
    }
    double delta = 0.0;
    for (int k = 0; k < 2; ++k) {
      delta = std::max(delta, std::abs(st[k].i_cv - prev[k].i_cv));
      delta = std::max(delta, std::abs(st[k].i_vc - prev[k].i_vc));
      delta = std::max(delta, std::abs(st[k].i_vs - prev[k].i_vs));
      delta = std::max(delta, std::abs(st[k].i_sv - prev[k].i_sv));
    }
    if (delta < opt.stall_tol) return res;  // stuck below convergence
  }
  return res;
}

std::string trajectory_to_csv(const TrajectoryResult& t) {
  std::ostringstream os;
  os << "iteration,user,i_cv,i_vc,i_vs,i_sv\n";
  for (std::size_t it = 0; it < t.trace.size(); ++it)
    for (int k = 0; k < 2; ++k) {
      const ExitState& s = t.trace[it][k];
      os << it + 1 << ',' << k + 1 << ',' << s.i_cv << ',' << s.i_vc << ',' << s.i_vs << ','
         << s.i_sv << '\n';
    }
  return os.str();
}

double bisect_threshold_db(const LevelDecomposition& d1, const LevelDecomposition& d2, int stage,
                           const DegreeDistribution& dd1, const DegreeDistribution& dd2,
                           double lo_db, double hi_db, int steps, InterferenceModel model) {
  auto open_at = [&](double snr_db) {
    auto ctx = LevelChannelContext::make(d1, d2, stage, noise_var_from_snr_db(snr_db), model);
    return joint_trajectory(ctx, dd1, dd2).converged;
  };
  if (!open_at(hi_db)) return hi_db;  // closed everywhere in range
  double lo = lo_db, hi = hi_db;
  for (int i = 0; i < steps; ++i) {
    double mid = 0.5 * (lo + hi);
    (open_at(mid) ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gmac
