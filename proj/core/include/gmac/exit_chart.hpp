#pragma once

#include <array>
#include <string>
#include <vector>

#include "gmac/constellation.hpp"
#include "gmac/degree_distribution.hpp"

namespace gmac {

// How the analysis treats the interference of undecoded higher levels.
// exact: marginalize their signed sums atom by atom (decoder-faithful).
// gaussian: fold their power into the noise variance (design calibration).
enum class InterferenceModel { exact, gaussian };

// Analysis view of one bit-level of the two-user scheme: the current-level
// amplitudes, the undecoded-level residual, and the SIC conditioning on
// levels decoded earlier (enumerated realizations, averaged uniformly).
struct LevelChannelContext {
  double amp_user1 = 0.0;
  double amp_user2 = 0.0;
  std::vector<double> residual_atoms = {0.0};       // uniform signed sums of later levels
  std::vector<double> conditioned_offsets = {0.0};  // realizations of earlier levels
  double noise_var = 1.0;   // channel noise, plus residual power under gaussian
  int level_index = 1;      // 1-based position in decode order
  InterferenceModel model = InterferenceModel::exact;

  // Build the analysis context for decode-order stage `stage` (1-based).
  // order1/order2 give each user's level for every stage; empty = natural.
  static LevelChannelContext make(const LevelDecomposition& d1, const LevelDecomposition& d2,
                                  int stage, double noise_var,
                                  InterferenceModel model = InterferenceModel::exact,
                                  const std::vector<int>& order1 = {},
                                  const std::vector<int>& order2 = {});

  double own_amp(int target_user) const { return target_user == 1 ? amp_user1 : amp_user2; }
  double other_amp(int target_user) const { return target_user == 1 ? amp_user2 : amp_user1; }
};

// Four mutual-information coordinates of one user's decoder state.
struct ExitState {
  double i_cv = 0.0;
  double i_vc = 0.0;
  double i_vs = 0.0;
  double i_sv = 0.0;
};

// Mean of the state-to-variable message toward target_user, with its own
// bit 0, the other user's bit b_other, the channel mixture conditioned on
// both current bits (SIC realizations averaged), and the other user's
// variable-to-state messages ~ N(+-m, 2m). Tensor Gauss-Legendre quadrature.
double f_means(const LevelChannelContext& ctx, int target_user, int b_other, double m,
               int ny = 201, int nv = 201);

// 0.5 J(sqrt(2 F00(m))) + 0.5 J(sqrt(2 F01(m))), F clamped at 0.
double exit_sv(const LevelChannelContext& ctx, int target_user, double m);

// Variable-to-check transfer: sum_j lambda_j J(sqrt((j-1) s_cv^2 + s_sv^2)).
double exit_vc(const DegreeDistribution& dd, double i_cv, double i_sv);

// Variable-to-state transfer: sum_j L_j J(sqrt(j) s_cv), node perspective.
double exit_vs(const DegreeDistribution& dd, double i_cv);

// Check-to-variable transfer: 1 - J(sqrt(d_c - 1) Jinv(1 - i_vc)).
double exit_cv(int d_c, double i_vc);

// Monotone interpolant of m -> exit_sv(ctx, user, m); one quadrature sweep
// at construction, cheap lookups afterwards.
class StateInfoTable {
 public:
  StateInfoTable(const LevelChannelContext& ctx, int target_user);
  double operator()(double m) const;

 private:
  std::vector<double> log_m_;
  std::vector<double> info_;
  double info_at_zero_ = 0.0;
};

struct TrajectoryResult {
  bool converged = false;
  int iterations = 0;
  std::vector<std::array<ExitState, 2>> trace;
};

struct TrajectoryOptions {
  int max_iters = 500;
  double convergence_threshold = 1e-4;  // converged when both I_VC >= 1 - this
  double stall_tol = 1e-10;
};

// Coupled two-user recursion from the all-zero-information start; both users
// update simultaneously from the previous state (flooding schedule).
TrajectoryResult joint_trajectory(const LevelChannelContext& ctx, const DegreeDistribution& dd1,
                                  const DegreeDistribution& dd2,
                                  const TrajectoryOptions& opt = {});

// CSV rows (iteration, user, I_CV, I_VC, I_VS, I_SV) for chart plotting.
std::string trajectory_to_csv(const TrajectoryResult& t);

// Smallest SNR (dB) in [lo_db, hi_db] whose trajectory converges; bisection.
double bisect_threshold_db(const LevelDecomposition& d1, const LevelDecomposition& d2, int stage,
                           const DegreeDistribution& dd1, const DegreeDistribution& dd2,
                           double lo_db, double hi_db, int steps = 16,
                           InterferenceModel model = InterferenceModel::exact);

}  // namespace gmac
