#include "gmac/constellation.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "../../vendor/json.hpp"
#include "gmac/errors.hpp"
#include "gmac/gaussian_mixture.hpp"

namespace gmac {
namespace {

constexpr double kSymTol = 1e-9;
constexpr double kPowerTol = 1e-3;  // admits published 3-decimal roundings

int int_log2(std::size_t n) {
  int l = 0;
  while ((std::size_t(1) << l) < n) ++l;
  return l;
}

GaussianMixture mixture_of(const SumConstellation& sc, double noise_var) {
  GaussianMixture mix;
  mix.variance = noise_var;
  mix.components.reserve(sc.atoms.size());
  for (const auto& a : sc.atoms)
    mix.components.push_back({a.value, double(a.count) / double(sc.denominator)});
  return mix;
}

// Mixture of signed level sums for the listed (user1 amp, user2 amp) stages.
GaussianMixture stage_mixture(const std::vector<std::pair<double, double>>& stages,
                              double noise_var) {
  std::vector<double> sums = {0.0};
  for (auto [a1, a2] : stages) {
    std::vector<double> next;
    next.reserve(sums.size() * 4);
    for (double s : sums)
      for (double e1 : {1.0, -1.0})
        for (double e2 : {1.0, -1.0}) next.push_back(s + e1 * a1 + e2 * a2);
    sums.swap(next);
  }
  GaussianMixture mix;
  mix.variance = noise_var;
  double w = 1.0 / double(sums.size());
  for (double s : sums) mix.components.push_back({s, w});
  return mix;
}

}  // namespace

double noise_var_from_snr_db(double snr_db) {
  // Calibrated convention: SNR = per-user signal power / noise = 1/sigma_z^2.
  return std::pow(10.0, -snr_db / 10.0);
}

UserConstellation UserConstellation::create(std::vector<double> pts) {
  if (pts.empty()) throw domain_error("UserConstellation: no points");
  std::sort(pts.begin(), pts.end());
  const std::size_t n = pts.size();
  if ((n & (n - 1)) != 0)
    throw domain_error("UserConstellation: point count must be a power of two");
  for (std::size_t i = 0; i + 1 < n; ++i)
    if (!(pts[i] < pts[i + 1]))
      throw domain_error("UserConstellation: points must be strictly increasing");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(pts[i] + pts[n - 1 - i]) > kSymTol)
      throw domain_error("UserConstellation: not symmetric about zero");
  UserConstellation c;
  c.points = std::move(pts);
  c.levels = int_log2(n);
  if (c.average_power() > 1.0 + kPowerTol)
    throw domain_error("UserConstellation: average power exceeds the unit constraint");
  return c;
}

double UserConstellation::average_power() const {
  double p = 0.0;
  for (double x : points) p += x * x;
  return p / double(points.size());
}

double LevelDecomposition::level_power(int i) const {
  double a = amplitudes.at(i);
  return 2.0 * a * a;
}

std::vector<double> LevelDecomposition::enumerate_points() const {
  std::vector<double> sums = {0.0};
  for (double a : amplitudes) {
    std::vector<double> next;
    next.reserve(sums.size() * 2);
    for (double s : sums) {
      next.push_back(s + a);
      next.push_back(s - a);
    }
    sums.swap(next);
  }
  return sums;
}

NamedConstellation parse_constellation_name(const std::string& name) {
  std::string up;
  for (char ch : name) up.push_back((char)std::toupper((unsigned char)ch));
  if (up == "MC") return NamedConstellation::mc;
  if (up == "SP") return NamedConstellation::sp;
  if (up == "OPT") return NamedConstellation::opt;
  throw domain_error("unknown constellation name: " + name);
}

std::pair<UserConstellation, UserConstellation> named_constellation(NamedConstellation which) {
  switch (which) {
    case NamedConstellation::mc:
      return {UserConstellation::create({-1.342, -0.447, 0.447, 1.342}),
              UserConstellation::create({-1.342, -0.447, 0.447, 1.342})};
    case NamedConstellation::sp:
      return {UserConstellation::create({-0.335, -0.112, 0.112, 0.335}),
              UserConstellation::create({-1.342, -0.447, 0.447, 1.342})};
    case NamedConstellation::opt:
      return {UserConstellation::create({-1.316, -0.519, 0.519, 1.316}),
              UserConstellation::create({-1.406, -0.150, 0.150, 1.406})};
  }
  throw domain_error("unknown constellation");
}

LevelDecomposition decompose_levels(const UserConstellation& c) {
  LevelDecomposition d;
  std::vector<double> cur = c.points;  // ascending, symmetric
  while (cur.size() > 1) {
    const std::size_t half = cur.size() / 2;
    std::vector<double> upper(cur.begin() + half, cur.end());
    double a = 0.5 * (upper.front() + upper.back());
    if (!(a > 0.0))
      throw domain_error("decompose_levels: nonpositive level amplitude");
    d.amplitudes.push_back(a);
    for (double& x : upper) x -= a;
    // remaining set must again be symmetric for the next split
    for (std::size_t i = 0; i < upper.size(); ++i)
      if (std::abs(upper[i] + upper[upper.size() - 1 - i]) > 10 * kSymTol)
        throw domain_error("decompose_levels: not decomposable into antipodal levels");
    cur.swap(upper);
  }
  for (std::size_t i = 0; i + 1 < d.amplitudes.size(); ++i)
    if (d.amplitudes[i] < d.amplitudes[i + 1] - kSymTol)
      throw domain_error("decompose_levels: amplitudes not decreasing");
  // Round trip: the signed sums must reproduce the constellation.
  std::vector<double> back = d.enumerate_points();
  std::sort(back.begin(), back.end());
  for (std::size_t i = 0; i < back.size(); ++i)
    if (std::abs(back[i] - c.points[i]) > 1e-9)
      throw domain_error("decompose_levels: round trip failed");
  return d;
}

SumConstellation sum_constellation(const UserConstellation& c1, const UserConstellation& c2,
                                   double tol) {
  if (c1.levels != c2.levels)
    throw domain_error("sum_constellation: users must share the level count");
  std::vector<double> sums;
  sums.reserve(c1.points.size() * c2.points.size());
  for (double a : c1.points)
    for (double b : c2.points) sums.push_back(a + b);
  std::sort(sums.begin(), sums.end());

  SumConstellation sc;
  sc.denominator = (std::int64_t)sums.size();
  sc.collision_tol = tol;
  for (double v : sums) {
    if (!sc.atoms.empty() && v - sc.atoms.back().value <= tol) {
      // merge: weighted mean keeps the merged atom centered
      auto& at = sc.atoms.back();
      at.value = (at.value * double(at.count) + v) / double(at.count + 1);
      at.count += 1;
    } else {
      sc.atoms.push_back({v, 1});
    }
  }
  return sc;
}

double sum_capacity(const SumConstellation& sc, double noise_var) {
  if (!(noise_var > 0.0)) throw domain_error("sum_capacity: noise_var must be positive");
  double h = mixture_entropy(mixture_of(sc, noise_var));
  return std::max(0.0, h - gaussian_entropy_bits(noise_var));
}

std::vector<double> per_level_capacities(const UserConstellation& c1,
                                         const UserConstellation& c2, double noise_var,
                                         const std::vector<int>& order) {
  return per_level_capacities(c1, c2, noise_var, order, order);
}

std::vector<double> per_level_capacities(const UserConstellation& c1,
                                         const UserConstellation& c2, double noise_var,
                                         const std::vector<int>& order1,
                                         const std::vector<int>& order2) {
  LevelDecomposition d1 = decompose_levels(c1);
  LevelDecomposition d2 = decompose_levels(c2);
  const int L = d1.levels();
  if (d2.levels() != L) throw domain_error("per_level_capacities: level mismatch");
  if ((int)order1.size() != L || (int)order2.size() != L)
    throw domain_error("per_level_capacities: order must permute 1..L");

  // Stage t decodes (user1 level order1[t], user2 level order2[t]); each
  // stage capacity is the entropy drop when that stage's pair is revealed,
  // conditioning on earlier stages (their realizations only shift the mean,
  // so each conditional mixture is the remaining-stage mixture).
  std::vector<std::pair<double, double>> stages;
  for (int t = 0; t < L; ++t)
    stages.push_back({d1.amplitudes.at(order1[t] - 1), d2.amplitudes.at(order2[t] - 1)});

  std::vector<double> caps;
  std::vector<std::pair<double, double>> remaining = stages;
  for (int t = 0; t < L; ++t) {
    double h_all = mixture_entropy(stage_mixture(remaining, noise_var));
    remaining.erase(remaining.begin());
    double h_rest = remaining.empty()
                        ? gaussian_entropy_bits(noise_var)
                        : mixture_entropy(stage_mixture(remaining, noise_var));
    caps.push_back(std::max(0.0, h_all - h_rest));
  }
  return caps;
}

std::pair<UserConstellation, UserConstellation> optimize_constellations(
    double noise_var, int levels, const ConstellationOptimizerOptions& opt) {
  if (levels != 2)
    throw domain_error("optimize_constellations: only L=2 is implemented");
  if (!(noise_var > 0.0)) throw domain_error("optimize_constellations: bad noise_var");

  auto capacity_of = [&](double p1, double q1, double p2, double q2) {
    GaussianMixture mix;
    mix.variance = noise_var;
    std::vector<double> u1 = {-q1, -p1, p1, q1}, u2 = {-q2, -p2, p2, q2};
    for (double a : u1)
      for (double b : u2) mix.components.push_back({a + b, 1.0 / 16.0});
    double h = mixture_entropy(mix);
    return std::max(0.0, h - gaussian_entropy_bits(noise_var));
  };
  auto feasible = [](double p, double q) {
    return p > 1e-4 && q > p + 1e-4 && 0.5 * (p * p + q * q) <= 1.0 + 1e-12;
  };

  // Grid seeds over (p, q) per user.
  std::vector<std::pair<double, double>> pq;
  for (int i = 0; i < opt.grid; ++i)
    for (int j = 0; j < opt.grid; ++j) {
      double p = 0.02 + (1.39 - 0.02) * i / (opt.grid - 1);
      double q = 0.02 + (1.41 - 0.02) * j / (opt.grid - 1);
      if (feasible(p, q)) pq.push_back({p, q});
    }

  struct Cand {
    double cap;
    std::array<double, 4> x;
  };
  std::vector<Cand> seeds;
  for (const auto& [p1, q1] : pq)
    for (const auto& [p2, q2] : pq) {
      if (p2 < p1 || (p2 == p1 && q2 < q1)) continue;  // unordered pair symmetry
      seeds.push_back({capacity_of(p1, q1, p2, q2), {p1, q1, p2, q2}});
    }
  if (seeds.empty()) throw numerical_error("optimize_constellations: empty feasible grid");
  std::partial_sort(seeds.begin(),
                    seeds.begin() + std::min<std::size_t>(opt.top_seeds, seeds.size()),
                    seeds.end(), [](const Cand& a, const Cand& b) { return a.cap > b.cap; });
  seeds.resize(std::min<std::size_t>(opt.top_seeds, seeds.size()));

  // Golden-section refinement, one coordinate at a time.
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  auto refine = [&](Cand cand) {
    auto eval = [&](const std::array<double, 4>& x) {
      if (!feasible(x[0], x[1]) || !feasible(x[2], x[3])) return -1.0;
      return capacity_of(x[0], x[1], x[2], x[3]);
    };
    double best = cand.cap;
    for (int pass = 0; pass < opt.refine_passes; ++pass) {
      double span = 0.3 / (pass + 1);
      for (int k = 0; k < 4; ++k) {
        double lo = std::max(1e-3, cand.x[k] - span), hi = cand.x[k] + span;
        double a = lo, b = hi;
        double c1 = b - gr * (b - a), c2 = a + gr * (b - a);
        auto at = [&](double v) {
          auto x = cand.x;
          x[k] = v;
          return eval(x);
        };
        double f1 = at(c1), f2 = at(c2);
        while (b - a > opt.golden_tol) {
          if (f1 < f2) {
            a = c1;
            c1 = c2;
            f1 = f2;
            c2 = a + gr * (b - a);
            f2 = at(c2);
          } else {
            b = c2;
            c2 = c1;
            f2 = f1;
            c1 = b - gr * (b - a);
            f1 = at(c1);
          }
        }
        double v = 0.5 * (a + b), fv = at(v);
        if (fv > best) {
          best = fv;
          cand.x[k] = v;
          cand.cap = fv;
        }
      }
    }
    return cand;
  };

  Cand best{-1.0, {}};
  for (auto& s : seeds) {
    Cand r = refine(s);
    if (r.cap > best.cap ||
        (r.cap == best.cap && r.x < best.x)) best = r;
  }
  if (best.cap < 0.0) throw numerical_error("optimize_constellations: refinement failed");

  auto c1 = UserConstellation::create({-best.x[1], -best.x[0], best.x[0], best.x[1]});
  auto c2 = UserConstellation::create({-best.x[3], -best.x[2], best.x[2], best.x[3]});
  return {c1, c2};
}

std::string constellation_pair_to_json(const UserConstellation& c1,
                                       const UserConstellation& c2) {
  nlohmann::json j;
  j["user1"] = c1.points;
  j["user2"] = c2.points;
  j["L"] = c1.levels;
  return j.dump(2);
}

std::pair<UserConstellation, UserConstellation> constellation_pair_from_json(
    const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  auto c1 = UserConstellation::create(j.at("user1").get<std::vector<double>>());
  auto c2 = UserConstellation::create(j.at("user2").get<std::vector<double>>());
  if (j.contains("L") && j.at("L").get<int>() != c1.levels)
    throw domain_error("constellation JSON: L does not match the point count");
  return {c1, c2};
}

}  // namespace gmac
