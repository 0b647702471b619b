#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cobcalc/chern.hpp"
#include "cobcalc/check.hpp"

namespace cobcalc {

// A deliberate defect injected into the suites, to show they notice.
struct Mutation {
  // Negate d_i of every projective bundle relation (1-based).
  std::optional<int> flip_d;
  // Negate a_ij = a_ji of the law used for coefficient expansions; a zero
  // value is replaced by 1 instead.
  std::optional<std::pair<int, int>> flip_a;
  // Negate the x^2 coefficient of the Todd series.
  bool flip_todd_x2 = false;

  bool active() const { return flip_d || flip_a || flip_todd_x2; }
  std::string describe() const;
};

Series mutate_law_series(const Series& F, int i, int j);
ProjectiveBundleContext mutate_relation(const ProjectiveBundleContext& pb, int i);
Series mutate_todd(const Series& todd);

struct SuiteResult {
  explicit SuiteResult(std::string suite_name = {}) : name(std::move(suite_name)) {}

  std::string name;
  int cases = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
  void record(const std::string& label, const CheckResult& r);
  void record(const std::string& label, bool ok, const std::string& witness);
};

// Random ring-law, round-trip and truncation cases over Z and Z[b1..b3].
SuiteResult suite_ring_properties(int cases, std::uint64_t seed);
// universal_fgl(degree): integrality, the axioms, -2 b1 x y, log identity.
SuiteResult suite_universal_fgl(int degree);
// Subset decomposition for all multiplicity vectors with entries <= max_mult.
SuiteResult suite_zeta(int max_rank, int max_mult, int precision);
// Decompose-then-specialize vs specialize-then-decompose.
SuiteResult suite_base_independence(int max_rank, int max_mult, int precision);
// Whitney, c_r = e(E), Chern classes from the relation, duals.
SuiteResult suite_chern_whitney(int max_rank, int cap);
// Unit/nilpotent coefficients, A A^-1 = I, the hyperplane recursion.
SuiteResult suite_pbf_structure(int max_rank, int max_cap, int depth, const Mutation& mutation = {});
// Multiplicative pi_!(t^i) = 1, the geometric series identity, ch and the
// geometric formal group law identity.
SuiteResult suite_conner_floyd(int max_rank, int max_cap, int series_precision, const Mutation& mutation = {});
// chi(P^n, O(d)) against binomial coefficients; Todd multiplicativity.
SuiteResult suite_hrr(int max_n, int max_d, const Mutation& mutation = {});

enum class Profile { Quick, Full };
Profile parse_profile(const std::string& name);
std::string to_string(Profile profile);

struct SelftestReport {
  Profile profile = Profile::Quick;
  std::uint64_t seed = 0;
  Mutation mutation;
  std::vector<SuiteResult> suites;

  bool ok() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

inline constexpr std::uint64_t kDefaultSeed = 20240917;

// Suites run concurrently when threads > 1; the report order is fixed.
SelftestReport run_selftest(Profile profile, std::uint64_t seed = kDefaultSeed, const Mutation& mutation = {},
                            int threads = 1);

}  // namespace cobcalc
