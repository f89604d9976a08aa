#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace gmac {

// One user's real PAM constellation for L-level multilevel coding:
// 2^L strictly increasing points, symmetric about zero, unit average power.
struct UserConstellation {
  std::vector<double> points;  // sorted ascending
  int levels = 0;              // L

  // Validates and normalizes (sorts). Power tolerance admits published
  // 3-decimal roundings (up to 1 + 1e-3); symmetry tolerance 1e-9.
  static UserConstellation create(std::vector<double> pts);

  double average_power() const;
};

// Per-level antipodal amplitude pairs {l_i, h_i} = {-a_i, +a_i}, sorted by
// decreasing amplitude; level i carries one codeword bit.
struct LevelDecomposition {
  std::vector<double> amplitudes;    // h_i > 0, descending
  std::vector<double> rates;         // optional per-level rate fill-in

  int levels() const { return (int)amplitudes.size(); }
  double level_power(int i) const;   // l^2 + h^2 = 2 a_i^2
  // All 2^L signed sums, in bit-label order (bit 0 -> +a).
  std::vector<double> enumerate_points() const;
};

// Receiver-side sum constellation: merged atoms with exact rational weights
// (counts over 4^L equiprobable pairs).
struct SumConstellation {
  struct Atom {
    double value = 0.0;
    std::int64_t count = 0;  // weight = count / 4^L
  };
  std::vector<Atom> atoms;
  std::int64_t denominator = 1;  // 4^L
  double collision_tol = 0.0;

  double probability(std::size_t i) const {
    return double(atoms[i].count) / double(denominator);
  }
};

enum class NamedConstellation { mc, sp, opt };

NamedConstellation parse_constellation_name(const std::string& name);  // "MC"/"SP"/"OPT"

// The published reference constellation pairs, verbatim.
std::pair<UserConstellation, UserConstellation> named_constellation(NamedConstellation which);

// Split a symmetric 2^L-point constellation into antipodal levels
// (for L=2 with {-q,-p,p,q}: amplitudes (q+p)/2 and (q-p)/2, recursively
// for larger L). Throws domain_error when not decomposable.
LevelDecomposition decompose_levels(const UserConstellation& c);

SumConstellation sum_constellation(const UserConstellation& c1, const UserConstellation& c2,
                                   double tol = 1e-4);

// I(Y; X1, X2) in bpcu at uniform inputs: h(Y) - h(Z), clamped at 0.
double sum_capacity(const SumConstellation& sc, double noise_var);

// Per-level chain-rule capacities I(Y; U_1i, U_2i | earlier levels), in the
// given decoding order (shared by both users).
std::vector<double> per_level_capacities(const UserConstellation& c1,
                                         const UserConstellation& c2, double noise_var,
                                         const std::vector<int>& order);

// Generalization with independent per-user stage assignments: stage t decodes
// user 1 level order1[t] jointly with user 2 level order2[t].
std::vector<double> per_level_capacities(const UserConstellation& c1,
                                         const UserConstellation& c2, double noise_var,
                                         const std::vector<int>& order1,
                                         const std::vector<int>& order2);

struct ConstellationOptimizerOptions {
  int grid = 20;               // seed grid per (p, q) pair
  int refine_passes = 8;       // coordinate-descent sweeps
  int top_seeds = 8;           // seeds kept for refinement
  double golden_tol = 1e-5;
};

// Maximize sum capacity over symmetric 4-point (L=2) pairs under unit power.
// Returns the best pair; throws numerical_error carrying best found on
// optimizer failure.
std::pair<UserConstellation, UserConstellation> optimize_constellations(
    double noise_var, int levels, const ConstellationOptimizerOptions& opt = {});

// JSON round trip: {"user1": [...], "user2": [...], "L": n}
std::string constellation_pair_to_json(const UserConstellation& c1,
                                       const UserConstellation& c2);
std::pair<UserConstellation, UserConstellation> constellation_pair_from_json(
    const std::string& text);

// Noise variance from SNR in dB under the calibrated per-user convention.
double noise_var_from_snr_db(double snr_db);

}  // namespace gmac
