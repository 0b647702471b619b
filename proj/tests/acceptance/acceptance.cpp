#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "cli.hpp"
#include "cobcalc/fgl.hpp"
#include "cobcalc/selftest.hpp"

using namespace cobcalc;

namespace {

constexpr double kUniversalSeconds = 30.0;
constexpr double kHrrSeconds = 5.0;
constexpr double kFullSelftestSeconds = 300.0;

using Clock = std::chrono::steady_clock;

double since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS " : "FAIL ") << id << " " << name << ": " << detail << std::endl;
}

void report_suites(int id, const std::string& name, std::initializer_list<std::function<SuiteResult()>> suites) {
  int cases = 0;
  std::string witness;
  for (const auto& run : suites) {
    auto r = run();
    cases += r.cases;
    if (!r.ok() && witness.empty()) witness = r.name + ": " + r.failures.front();
  }
  report(id, name, witness.empty(), witness.empty() ? std::to_string(cases) + " cases" : witness);
}

std::string fmt(double seconds) {
  std::ostringstream s;
  s.precision(3);
  s << seconds << " s";
  return s.str();
}

}  // namespace

int main() {
  {
    auto start = Clock::now();
    LazardModel m(8);
    const double t = since(start);
    auto suite = suite_universal_fgl(8);
    const bool ok = suite.ok() && t < kUniversalSeconds;
    report(1, "universal law at degree 8", ok,
           fmt(t) + " (limit " + fmt(kUniversalSeconds) + "), " + std::to_string(suite.cases) + " cases" +
               (suite.ok() ? "" : ", " + suite.failures.front()));
  }

  report_suites(2, "subset decomposition r<=3 n<=3 precision 8", {[] { return suite_zeta(3, 3, 8); }});
  report_suites(3, "decompose/specialize commute", {[] { return suite_base_independence(3, 3, 8); }});
  report_suites(4, "projective bundle coefficients r<=3 caps<=3", {[] { return suite_pbf_structure(3, 3, 3); }});
  report_suites(5, "multiplicative pushforwards r<=4, geometric series at 12",
                {[] { return suite_conner_floyd(4, 3, 12); }});
  report_suites(6, "whitney and top class r<=4", {[] { return suite_chern_whitney(4, 3); }});

  {
    auto start = Clock::now();
    auto suite = suite_hrr(4, 5);
    const double t = since(start);
    report(7, "HRR on P^n, n<=4, d<=5", suite.ok() && t < kHrrSeconds,
           fmt(t) + " (limit " + fmt(kHrrSeconds) + "), " + std::to_string(suite.cases) + " cases" +
               (suite.ok() ? "" : ", " + suite.failures.front()));
  }

  {
    std::vector<Mutation> mutations;
    for (int i = 1; i <= 4; ++i) mutations.push_back(Mutation{i, std::nullopt, false});
    for (int i = 1; i <= 5; ++i) {
      for (int j = i; i + j <= 6; ++j) mutations.push_back(Mutation{std::nullopt, std::make_pair(i, j), false});
    }
    mutations.push_back(Mutation{std::nullopt, std::nullopt, true});
    std::string missed;
    for (const auto& m : mutations) {
      bool caught = false;
      for (const auto& r : {suite_pbf_structure(3, 3, 3, m), suite_conner_floyd(4, 3, 12, m), suite_hrr(4, 5, m)}) {
        caught = caught || (!r.ok() && !r.failures.front().empty());
      }
      if (!caught) missed += (missed.empty() ? "" : ", ") + m.describe();
    }
    report(8, "mutations detected", missed.empty(),
           missed.empty() ? std::to_string(mutations.size()) + " mutations caught" : "missed " + missed);
  }

  {
    auto start = Clock::now();
    std::ostringstream out1, out2, err;
    const int c1 = cli::run({"selftest", "--profile", "full", "--json"}, out1, err);
    const int c2 = cli::run({"selftest", "--profile", "full", "--json"}, out2, err);
    const double t = since(start) / 2;
    const bool same = out1.str() == out2.str();
    report(9, "full selftest deterministic", c1 == 0 && c2 == 0 && same && t < kFullSelftestSeconds,
           std::string(same ? "identical reports" : "reports differ") + ", exit " + std::to_string(c1) + "/" +
               std::to_string(c2) + ", " + fmt(t) + " per run (limit " + fmt(kFullSelftestSeconds) + ")");
  }

  std::cout << (failures == 0 ? "ALL CRITERIA PASS" : std::to_string(failures) + " CRITERIA FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
