#include "gmac/code_design.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "../../vendor/json.hpp"
#include "gmac/errors.hpp"
#include "gmac/jfunction.hpp"
#include "gmac/linear_program.hpp"

namespace gmac {
namespace {

constexpr double kInfoCap = 1.0 - 1e-12;

// Partner progress folded into the target's state information, both users
// assumed at the same check-side progress x.
std::vector<double> sync_profile(const LevelChannelContext& ch, int target_user,
                                 const DegreeDistribution& partner,
                                 const std::vector<double>& grid) {
  StateInfoTable sv(ch, target_user);
  std::vector<double> prof(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double ivs = exit_vs(partner, grid[i]);
    double s = j_inverse(std::clamp(ivs, 0.0, kInfoCap));
    prof[i] = sv(0.5 * s * s);
  }
  return prof;
}

DegreeDistribution lp_step(const LevelChannelContext& ch, int target_user,
                           const DegreeDistribution& partner, int d_c, int v_max, double delta,
                           double margin) {
  std::vector<double> grid;
  for (double x = 0.0; x < 1.0 - 1e-12; x += delta) grid.push_back(x);
  std::vector<double> prof = sync_profile(ch, target_user, partner, grid);

  const int ndeg = v_max - 1;  // degrees 2..v_max
  LinearProgram lp;
  lp.objective.resize(ndeg);
  for (int d = 2; d <= v_max; ++d) lp.objective[d - 2] = 1.0 / double(d);

  for (std::size_t g = 0; g < grid.size(); ++g) {
    double s_cv = j_inverse(std::clamp(grid[g], 0.0, kInfoCap));
    double s_sv = j_inverse(std::clamp(prof[g], 0.0, kInfoCap));
    double need = 1.0 - j_function(j_inverse(std::clamp(1.0 - grid[g], 0.0, kInfoCap)) /
                                   std::sqrt(double(d_c - 1)));
    std::vector<double> row(ndeg);
    for (int d = 2; d <= v_max; ++d)
      row[d - 2] = -j_function(std::sqrt((d - 1) * s_cv * s_cv + s_sv * s_sv));
    lp.ineq_a.push_back(std::move(row));
    lp.ineq_b.push_back(-(need + margin));
  }
  lp.eq_a.push_back(std::vector<double>(ndeg, 1.0));
  lp.eq_b.push_back(1.0);

  LpResult res = lp_solve(lp);
  if (res.status != LpStatus::optimal) {
    // name the most demanding grid points for the error report
    std::ostringstream os;
    os << "optimize_lambda: no open tunnel at d_c=" << d_c << "; tightest grid points:";
    std::vector<std::pair<double, double>> shortfall;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      double s_sv = j_inverse(std::clamp(prof[g], 0.0, kInfoCap));
      double s_cv = j_inverse(std::clamp(grid[g], 0.0, kInfoCap));
      double best = j_function(std::sqrt((v_max - 1) * s_cv * s_cv + s_sv * s_sv));
      double need = 1.0 - j_function(j_inverse(std::clamp(1.0 - grid[g], 0.0, kInfoCap)) /
                                     std::sqrt(double(d_c - 1)));
      shortfall.push_back({need - best, grid[g]});
    }
    std::sort(shortfall.rbegin(), shortfall.rend());
    for (int i = 0; i < 3 && i < (int)shortfall.size(); ++i)
      os << " x=" << shortfall[i].second;
    throw infeasible_error(os.str());
  }

  DegreeDistribution dd;
  dd.d_c = d_c;
  double total = 0.0;
  for (int d = 2; d <= v_max; ++d) {
    double v = res.x[d - 2];
    if (v > 1e-9) {
      dd.lambda[d] = v;
      total += v;
    }
  }
  for (auto& [d, v] : dd.lambda) v /= total;  // renormalize after pruning
  dd.validate();
  return dd;
}

DegreeDistribution regular_start(int v_max, int d_c) {
  int j = v_max / 4 + (v_max % 4 ? 1 : 0) + 1;  // ceil(v_max/4) as node degree exponent
  DegreeDistribution dd;
  dd.d_c = d_c;
  dd.lambda[j] = 1.0;
  if (double(j) < double(d_c)) return dd;  // rate 1 - j/d_c > 0
  dd.lambda.clear();
  dd.lambda[2] = 1.0;
  return dd;
}

}  // namespace

void DesignContext::validate() const {
  if (target_user != 1 && target_user != 2) throw domain_error("DesignContext: bad user");
  if (d_c < 2) throw domain_error("DesignContext: d_c must be >= 2");
  if (v_max < 3) throw domain_error("DesignContext: v_max must be >= 3");
  if (!(delta > 0.0 && delta <= 0.1)) throw domain_error("DesignContext: delta out of (0, 0.1]");
  partner.validate();
}

DegreeDistribution optimize_lambda(const DesignContext& ctx) {
  ctx.validate();
  return lp_step(ctx.channel, ctx.target_user, ctx.partner, ctx.d_c, ctx.v_max, ctx.delta,
                 ctx.margin);
}

AlternatingResult alternating_design(
    const LevelChannelContext& analysis_ctx, const LevelChannelContext& trajectory_ctx, int dc1,
    int dc2, const AlternatingOptions& opt,
    std::optional<std::pair<DegreeDistribution, DegreeDistribution>> init) {
  AlternatingResult res;
  res.user1 = init ? init->first : regular_start(opt.v_max, dc1);
  res.user2 = init ? init->second : regular_start(opt.v_max, dc2);
  res.user1.d_c = dc1;
  res.user2.d_c = dc2;

  for (int round = 0; round < opt.max_rounds; ++round) {
    double moved = 0.0;
    for (int k = 1; k <= 2; ++k) {
      const DegreeDistribution& partner = (k == 1) ? res.user2 : res.user1;
      int dc = (k == 1) ? dc1 : dc2;
      DegreeDistribution next =
          lp_step(analysis_ctx, k, partner, dc, opt.v_max, opt.delta, opt.margin);
      double new_rate = design_rate(next);
      double old_rate = (k == 1) ? res.rate1 : res.rate2;
      moved = std::max(moved, std::abs(new_rate - old_rate));
      if (k == 1) {
        res.user1 = next;
        res.rate1 = new_rate;
      } else {
        res.user2 = next;
        res.rate2 = new_rate;
      }
    }
    res.rounds = round + 1;
    if (moved < opt.rate_tol) break;
  }
  res.trajectory_converged = joint_trajectory(trajectory_ctx, res.user1, res.user2).converged;
  return res;
}

DcSelection select_dc(const LevelChannelContext& analysis_ctx,
                      const LevelChannelContext& trajectory_ctx, int dc_min, int dc_max,
                      const AlternatingOptions& opt) {
  if (dc_min < 2 || dc_max < dc_min) throw domain_error("select_dc: empty candidate range");
  DcSelection best;
  bool have = false;
  std::string last_err;
  for (int dc = dc_min; dc <= dc_max; ++dc) {
    try {
      AlternatingResult r = alternating_design(analysis_ctx, trajectory_ctx, dc, dc, opt);
      double sum = r.rate1 + r.rate2;
      if (!have || sum > best.design.rate1 + best.design.rate2 + 1e-12) {
        best = {dc, dc, std::move(r)};
        have = true;
      }
    } catch (const infeasible_error& e) {
      last_err = e.what();
    }
  }
  if (!have) throw infeasible_error("select_dc: all candidates infeasible; last: " + last_err);
  return best;
}

std::string design_to_json(const DegreeDistribution& dd, int user, int level, double dsnr_db,
                           const std::string& constellation_name) {
  nlohmann::json j;
  j["user"] = user;
  j["level"] = level;
  j["dsnr_db"] = dsnr_db;
  j["constellation"] = constellation_name;
  j["d_c"] = dd.d_c;
  nlohmann::json lam = nlohmann::json::object();
  for (const auto& [d, v] : dd.lambda) lam[std::to_string(d)] = v;
  j["lambda"] = lam;
  j["design_rate"] = design_rate(dd);
  return j.dump(2);
}

DegreeDistribution design_from_json(const std::string& text, int* user, int* level,
                                    double* dsnr_db) {
  nlohmann::json j = nlohmann::json::parse(text);
  DegreeDistribution dd;
  dd.d_c = j.at("d_c").get<int>();
  for (auto& [k, v] : j.at("lambda").items()) dd.lambda[std::stoi(k)] = v.get<double>();
  dd.validate();
  if (user) *user = j.value("user", 0);
  if (level) *level = j.value("level", 0);
  if (dsnr_db) *dsnr_db = j.value("dsnr_db", 0.0);
  return dd;
}

}  // namespace gmac
