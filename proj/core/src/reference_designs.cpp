#include "gmac/reference_designs.hpp"

#include <array>
#include <map>

#include "gmac/errors.hpp"

namespace gmac {
namespace {

DegreeDistribution dd(std::initializer_list<std::pair<const int, double>> lam, int dc) {
  DegreeDistribution d;
  d.lambda = std::map<int, double>(lam);
  d.d_c = dc;
  // published fractions carry rounding; renormalize to machine precision
  double total = 0.0;
  for (auto& [j, v] : d.lambda) total += v;
  for (auto& [j, v] : d.lambda) v /= total;
  d.validate();
  return d;
}

std::map<std::string, ReferenceDesign> build_all() {
  std::map<std::string, ReferenceDesign> all;

  ReferenceDesign mc10;
  mc10.name = "mc10";
  mc10.constellation = NamedConstellation::mc;
  mc10.dsnr_db = 10.0;
  mc10.codes.push_back({dd({{2, 0.3609}, {3, 0.4311}, {34, 0.1771}, {35, 0.0309}}, 6),
                        dd({{2, 0.3609}, {3, 0.4312}, {34, 0.1749}, {35, 0.0330}}, 6)});
  mc10.codes.push_back({dd({{2, 0.4377}, {3, 0.3786}, {37, 0.1077}, {38, 0.0760}}, 6),
                        dd({{2, 0.4377}, {3, 0.3787}, {37, 0.0960}, {38, 0.0876}}, 6)});
  mc10.reference_rates1 = {0.4953, 0.5237};
  mc10.reference_rates2 = {0.4954, 0.5238};
  all["mc10"] = mc10;

  ReferenceDesign mc18;
  mc18.name = "mc18";
  mc18.constellation = NamedConstellation::mc;
  mc18.dsnr_db = 18.0;
  mc18.codes.push_back({dd({{2, 0.4132}, {3, 0.4174}, {38, 0.0370}, {39, 0.1324}}, 6),
                        dd({{2, 0.4132}, {3, 0.4174}, {38, 0.0374}, {39, 0.1320}}, 6)});
  mc18.codes.push_back({dd({{2, 0.6779}, {46, 0.3221}}, 10), dd({{2, 0.6779}, {46, 0.3221}}, 10)});
  mc18.reference_rates1 = {0.5237, 0.7109};
  mc18.reference_rates2 = {0.5237, 0.7109};
  all["mc18"] = mc18;

  ReferenceDesign opt18;
  opt18.name = "opt18";
  opt18.constellation = NamedConstellation::opt;
  opt18.dsnr_db = 18.0;
  opt18.codes.push_back({dd({{2, 0.4633}, {3, 0.3390}, {50, 0.1977}}, 8),
                         dd({{2, 0.3498}, {3, 0.3175}, {50, 0.3328}}, 8)});
  opt18.codes.push_back({dd({{2, 1.0}}, 20), dd({{2, 0.3660}, {3, 0.6340}}, 20)});
  opt18.reference_rates1 = {0.6414, 0.9000};
  opt18.reference_rates2 = {0.5650, 0.8732};
  all["opt18"] = opt18;

  return all;
}

const std::map<std::string, ReferenceDesign>& all_designs() {
  static const std::map<std::string, ReferenceDesign> designs = build_all();
  return designs;
}

}  // namespace

const ReferenceDesign& reference_design(const std::string& name) {
  auto it = all_designs().find(name);
  if (it == all_designs().end()) throw domain_error("unknown reference design: " + name);
  return it->second;
}

std::vector<std::string> reference_design_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : all_designs()) names.push_back(k);
  return names;
}

}  // namespace gmac
