#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gmac/degree_distribution.hpp"
#include "gmac/exit_chart.hpp"

namespace gmac {

// Inputs of one LP step: the analysis context of the level, the target user,
// the partner's fixed distribution, and the discretization parameters.
struct DesignContext {
  LevelChannelContext channel;   // analysis context of the stage
  int target_user = 1;
  DegreeDistribution partner;    // fixed other-user distribution
  int d_c = 0;                   // concentrated check degree of the target
  int v_max = 50;
  double delta = 0.01;           // grid step over [0, 1)
  double margin = 1e-4;          // strict-inequality slack for the tunnel

  void validate() const;
};

// One LP of the alternating design: maximize sum_j lambda_j / j subject to
// the discretized tunnel-openness constraint, the simplex constraint and
// nonnegativity. The partner's state feedback enters through the
// synchronized profile I_SV(x) = exit_sv(m(I_VS_partner(x))).
// Throws infeasible_error naming binding grid points when no tunnel exists.
DegreeDistribution optimize_lambda(const DesignContext& ctx);

struct AlternatingOptions {
  int v_max = 50;
  double delta = 0.01;
  double margin = 1e-4;
  int max_rounds = 12;
  double rate_tol = 1e-4;  // stop when both users' rate change falls below
};

struct AlternatingResult {
  DegreeDistribution user1, user2;
  double rate1 = 0.0, rate2 = 0.0;
  int rounds = 0;
  bool trajectory_converged = false;  // coupled-trajectory verdict at the design SNR
};

// Alternate optimize_lambda between the users from the regular start
// (fallback lambda = x) until the rates settle. The returned pair carries the
// decoder-faithful joint-trajectory verdict; collision-limited stages may
// report false even for the rate-optimal design.
AlternatingResult alternating_design(const LevelChannelContext& analysis_ctx,
                                     const LevelChannelContext& trajectory_ctx, int dc1, int dc2,
                                     const AlternatingOptions& opt = {},
                                     std::optional<std::pair<DegreeDistribution, DegreeDistribution>>
                                         init = std::nullopt);

struct DcSelection {
  int dc1 = 0, dc2 = 0;
  AlternatingResult design;
};

// Run alternating_design for each candidate check degree (equal for both
// users) and keep the largest sum rate; ties break toward smaller d_c.
DcSelection select_dc(const LevelChannelContext& analysis_ctx,
                      const LevelChannelContext& trajectory_ctx, int dc_min, int dc_max,
                      const AlternatingOptions& opt = {});

// {user, level, dsnr_db, constellation, d_c, lambda: {degree: fraction}, design_rate}
std::string design_to_json(const DegreeDistribution& dd, int user, int level, double dsnr_db,
                           const std::string& constellation_name);
DegreeDistribution design_from_json(const std::string& text, int* user = nullptr,
                                    int* level = nullptr, double* dsnr_db = nullptr);

}  // namespace gmac
