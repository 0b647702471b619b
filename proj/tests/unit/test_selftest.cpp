#include "doctest.h"

#include "cobcalc/selftest.hpp"
#include "cobcalc/series_io.hpp"

using namespace cobcalc;

TEST_CASE("quick selftest passes and is reproducible") {
  auto a = run_selftest(Profile::Quick);
  CHECK(a.ok());
  CHECK(a.to_text().find("FAIL") == std::string::npos);
  auto b = run_selftest(Profile::Quick, kDefaultSeed, {}, 4);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_text() == b.to_text());
}

TEST_CASE("ring property suite over 1000 random cases") {
  auto r = suite_ring_properties(1000, 7);
  CHECK(r.ok());
  CHECK(r.cases >= 1000);
}

TEST_CASE("mutations are caught with a witness") {
  Mutation d;
  d.flip_d = 2;
  auto pbf = suite_pbf_structure(3, 2, 3, d);
  REQUIRE_FALSE(pbf.ok());
  CHECK(pbf.failures.front().find("hyperplane_relation") != std::string::npos);

  Mutation a;
  a.flip_a = std::make_pair(1, 2);
  CHECK_FALSE(suite_conner_floyd(3, 2, 8, a).ok());

  Mutation todd;
  todd.flip_todd_x2 = true;
  CHECK_FALSE(suite_hrr(2, 2, todd).ok());
  CHECK(suite_hrr(2, 2).ok());
}

TEST_CASE("law mutation flips a symmetric pair") {
  auto law = FormalGroupLaw::multiplicative(CoeffRing::integers(), 4);
  CHECK(to_text(mutate_law_series(law.series(), 1, 1)) == "y + x + x*y");
  auto m = mutate_law_series(law.series(), 1, 2);
  CHECK(to_text(m) == "y + x - x*y + x*y^2 + x^2*y");
  CHECK(parse_profile("full") == Profile::Full);
  CHECK_THROWS(parse_profile("slow"));
}
