#include "cobcalc/selftest.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <random>
#include <sstream>

#include "cobcalc/errors.hpp"
#include "cobcalc/rr.hpp"
#include "cobcalc/series_io.hpp"
#include "cobcalc/zeta.hpp"

namespace cobcalc {

namespace {

// Raw engine output only: distributions are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  int below(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  int between(int lo, int hi) { return lo + below(hi - lo + 1); }

 private:
  std::mt19937_64 engine_;
};

std::string join(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::string caps_label(const std::string& law, const std::vector<int>& caps) {
  return law + " caps (" + join(caps) + ")";
}

// All vectors in {1..max}^r for r = 1..max_rank.
std::vector<std::vector<int>> multiplicity_vectors(int max_rank, int max) {
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> layer{{}};
  for (int r = 1; r <= max_rank; ++r) {
    std::vector<std::vector<int>> next;
    for (const auto& v : layer) {
      for (int n = 1; n <= max; ++n) {
        auto w = v;
        w.push_back(n);
        next.push_back(w);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

// Uniform caps c for every rank, plus one mixed shape per rank >= 2.
std::vector<std::vector<int>> cap_shapes(int max_rank, int max_cap) {
  std::vector<std::vector<int>> out;
  for (int r = 1; r <= max_rank; ++r) {
    for (int c = 1; c <= max_cap; ++c) out.emplace_back(r, c);
    if (r >= 2 && max_cap >= 2) {
      std::vector<int> mixed;
      for (int k = 0; k < r; ++k) mixed.push_back(1 + k % max_cap);
      out.push_back(mixed);
    }
  }
  return out;
}

struct NamedLaw {
  std::string name;
  FormalGroupLaw law;
};

std::vector<NamedLaw> chern_laws() {
  auto ZZ = CoeffRing::integers();
  auto m = universal_fgl(6);
  return {{"add", FormalGroupLaw::additive(ZZ, 8)},
          {"mult", FormalGroupLaw::multiplicative(ZZ, 8)},
          {"univ6", m.reduced_law()}};
}

Series random_series(Rng& rng, const RingPtr& ring, const SpacePtr& space, int precision) {
  Series s(ring, space, precision);
  const int terms = rng.between(0, 6);
  for (int t = 0; t < terms; ++t) {
    ExponentVector e(space->size());
    int budget = rng.between(0, precision);
    for (std::size_t i = 0; i < space->size(); ++i) {
      const int k = i + 1 == space->size() ? budget : rng.between(0, budget);
      e.set(i, k);
      budget -= k;
    }
    Coeff c = ring->from_rational(rng.between(-9, 9));
    if (ring->num_generators() > 0 && rng.below(2)) {
      ExponentVector b(ring->num_generators());
      b.set(rng.below(static_cast<int>(ring->num_generators())), rng.between(1, 2));
      c = ring->mul(c, ring->coerce(Coeff::monomial(b, 1)));
    }
    s = s + Series::monomial(ring, space, precision, e, c);
  }
  return s;
}

// Unitality, commutativity, associativity and the inverse, rechecked from
// the stored series.
void check_axioms(SuiteResult& out, const std::string& label, const FormalGroupLaw& law, int p) {
  auto ring = law.ring();
  auto xyz = make_space({"x", "y", "z"});
  auto var = [&](const char* n) { return Series::variable(ring, xyz, p, n); };
  Series x = var("x"), y = var("y"), z = var("z"), zero(ring, xyz, p);
  Series F = law.series().truncated(p);
  auto f = [&](const Series& a, const Series& b) { return substitute(F, {{"x", a}, {"y", b}}); };
  out.record(label + " F(x,0) = x", check_equal(f(x, zero), x, "unitality"));
  out.record(label + " F(x,y) = F(y,x)", check_equal(f(x, y), f(y, x), "commutativity"));
  out.record(label + " associativity", check_equal(f(f(x, y), z), f(x, f(y, z)), "associativity"));
  Series inv = substitute(law.inverse(p), {{"x", x}});
  out.record(label + " F(x, inv x) = 0", check_equal(f(x, inv), zero, "inverse"));
}

mpz_class binomial(int n, int k) {
  mpz_class b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

}  // namespace

// ---------------------------------------------------------------------------
// Mutations

std::string Mutation::describe() const {
  std::vector<std::string> parts;
  if (flip_d) parts.push_back("flip d" + std::to_string(*flip_d));
  if (flip_a) parts.push_back("flip a" + std::to_string(flip_a->first) + std::to_string(flip_a->second));
  if (flip_todd_x2) parts.push_back("flip todd x^2");
  if (parts.empty()) return "none";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += ", " + parts[i];
  return out;
}

Series mutate_law_series(const Series& F, int i, int j) {
  auto ring = F.ring();
  auto flip = [&](int a, int b) {
    ExponentVector e{a, b};
    Coeff c = F.coefficient(e);
    Coeff target = c.is_zero() ? ring->one() : -c;
    return Series::monomial(ring, F.space(), F.precision(), e, target - c);
  };
  Series out = F + flip(i, j);
  if (i != j) out = out + flip(j, i);
  return out;
}

ProjectiveBundleContext mutate_relation(const ProjectiveBundleContext& pb, int i) {
  auto d = pb.relation();
  if (i >= 1 && i <= static_cast<int>(d.size())) d[i - 1] = -d[i - 1];
  return ProjectiveBundleContext(pb.base(), d);
}

Series mutate_todd(const Series& todd) {
  Coeff c = todd.coefficient(ExponentVector{2});
  return todd - Series::monomial(todd.ring(), todd.space(), todd.precision(), ExponentVector{2},
                                 c + c);
}

// ---------------------------------------------------------------------------
// Suites

void SuiteResult::record(const std::string& label, const CheckResult& r) { record(label, r.ok, r.witness); }

void SuiteResult::record(const std::string& label, bool ok, const std::string& witness) {
  ++cases;
  if (!ok) failures.push_back(label + ": " + witness);
}

SuiteResult suite_ring_properties(int cases, std::uint64_t seed) {
  SuiteResult out{"ring-core properties"};
  Rng rng(seed);
  std::vector<RingPtr> rings{CoeffRing::integers(), CoeffRing::lazard_polynomials(3)};
  auto xy = make_space({"x", "y"});
  for (int n = 0; n < cases; ++n) {
    const auto& ring = rings[n % 2];
    const int p = rng.between(2, 6);
    auto a = random_series(rng, ring, xy, p);
    auto b = random_series(rng, ring, xy, p);
    auto c = random_series(rng, ring, xy, p);
    const std::string tag = "case " + std::to_string(n) + " over " + ring->describe();
    out.record(tag + " (a+b)+c", check_equal((a + b) + c, a + (b + c), "additive associativity"));
    out.record(tag + " ab", check_equal(a * b, b * a, "commutativity"));
    out.record(tag + " (ab)c", check_equal((a * b) * c, a * (b * c), "associativity"));
    out.record(tag + " a(b+c)", check_equal(a * (b + c), a * b + a * c, "distributivity"));
    out.record(tag + " a-a", check_equal(a - a, Series(ring, xy, p), "additive inverse"));

    Series one = Series::constant(ring, xy, p, ring->one());
    Series nil = a - Series::constant(ring, xy, p, a.constant_term());
    Series unit = one + nil;
    out.record(tag + " invert_unit", check_equal(unit * invert_unit(unit), one, "unit inverse"));

    out.record(tag + " text round trip", check_equal(parse_series(to_text(a), ring, xy, p), a, "text"));
    out.record(tag + " json round trip", check_equal(series_from_json(to_json(a)), a, "json"));
    out.record(tag + " truncation", check_equal((a * b).truncated(p - 1),
                                                a.truncated(p - 1) * b.truncated(p - 1), "truncation"));
  }
  return out;
}

SuiteResult suite_universal_fgl(int degree) {
  SuiteResult out{"universal formal group law"};
  const std::string tag = "degree " + std::to_string(degree);
  std::optional<LazardModel> m;
  try {
    m.emplace(degree);
  } catch (const Error& e) {
    out.record(tag + " construction", false, e.what());
    return out;
  }
  const auto& F = m->law().series();
  bool integral = m->ring()->scalars() == Scalars::Integer;
  std::string bad;
  for (const auto& t : F.terms()) {
    if (t.coeff.denominator_lcm() != 1) {
      integral = false;
      bad = m->ring()->format(t.coeff);
      break;
    }
  }
  out.record(tag + " integral coefficients", integral, "non-integral coefficient " + bad);
  check_axioms(out, tag, m->law(), degree);
  if (degree >= 2) {
    auto b1 = m->ring()->generator(0);
    Series want = Series::monomial(m->ring(), F.space(), F.precision(), ExponentVector{1, 1},
                                   b1.scaled(-2));
    out.record(tag + " degree-2 part", check_equal(graded_component(F, 2), graded_component(want, 2), "-2*b1*x*y"));
  }
  out.record(tag + " homogeneous of degree 1", check_equal(homogeneous_component(F, 1), F, "homogeneity"));

  auto q = m->log().ring();
  auto xy = F.space();
  auto lhs = substitute(m->log(), {{"x", change_ring(F, q)}});
  auto rhs = embed(m->log(), xy, {"x"}) + embed(m->log(), xy, {"y"});
  out.record(tag + " log F = log x + log y", check_equal(lhs, rhs, "logarithm"));

  for (int a = -2; a <= 3; ++a) {
    for (int b = -2; b <= 3; ++b) {
      auto sum = m->law().apply(m->law().n_series(a), m->law().n_series(b));
      out.record(tag + " [" + std::to_string(a) + "]+[" + std::to_string(b) + "]",
                 check_equal(sum, m->law().n_series(a + b), "n-series additivity"));
    }
  }
  return out;
}

SuiteResult suite_zeta(int max_rank, int max_mult, int precision) {
  SuiteResult out{"subset decomposition"};
  auto ZZ = CoeffRing::integers();
  auto m = universal_fgl(precision);
  std::vector<NamedLaw> laws{{"add", FormalGroupLaw::additive(ZZ, precision)},
                             {"mult", FormalGroupLaw::multiplicative(ZZ, precision)},
                             {"univ", m.law()}};
  for (const auto& [name, law] : laws) {
    for (const auto& n : multiplicity_vectors(max_rank, max_mult)) {
      const std::string tag = name + " (" + join(n) + ")";
      out.record(tag + " reassembly", verify_decomposition(decompose(law, n, precision)));
      if (n.size() >= 2) out.record(tag + " splitting", verify_inductive_splitting(law, n, precision));
    }
    for (int k = 1; k <= 5; ++k) {
      out.record(name + " x F(x) = [" + std::to_string(k) + "]x", verify_single_divisor_identity(law, k, precision));
    }
  }
  return out;
}

SuiteResult suite_base_independence(int max_rank, int max_mult, int precision) {
  SuiteResult out{"base independence"};
  auto ZZ = CoeffRing::integers();
  auto m = universal_fgl(precision);
  std::vector<NamedLaw> targets{{"add", FormalGroupLaw::additive(ZZ, precision)},
                                {"mult", FormalGroupLaw::multiplicative(ZZ, precision)}};
  for (const auto& [name, law] : targets) {
    for (const auto& n : multiplicity_vectors(max_rank, max_mult)) {
      out.record(name + " (" + join(n) + ")", specialization_commutes(m, law, n, precision));
    }
  }
  return out;
}

SuiteResult suite_chern_whitney(int max_rank, int cap) {
  SuiteResult out{"chern classes"};
  for (const auto& [name, law] : chern_laws()) {
    for (int r = 1; r <= max_rank; ++r) {
      std::vector<int> caps(r, cap);
      ChernContext ctx(law, caps);
      const std::string tag = caps_label(name, caps);
      auto roots = ctx.roots();
      auto total = total_chern_class(ctx, roots);
      for (int k = 1; k < r; ++k) {
        std::vector<Series> left(roots.begin(), roots.begin() + k), right(roots.begin() + k, roots.end());
        out.record(tag + " whitney split " + std::to_string(k),
                   check_equal(total, total_chern_class(ctx, left) * total_chern_class(ctx, right), "whitney"));
      }
      auto c = chern_classes(ctx, roots);
      Series euler = ctx.one();
      for (const auto& x : roots) euler = euler * x;
      out.record(tag + " c_r = e(E)", check_equal(c.back(), euler, "top chern class"));
      auto via = chern_classes_from_relation(ctx);
      for (int i = 0; i <= r; ++i) {
        out.record(tag + " c_" + std::to_string(i) + " from relation", check_equal(c[i], via[i], "relation"));
      }
      for (const auto& x : roots) {
        out.record(tag + " e(L (x) L^dual) = 0", check_equal(euler_tensor(ctx, x, euler_dual(ctx, x)), ctx.zero(),
                                                            "dual"));
      }
    }
  }
  return out;
}

SuiteResult suite_pbf_structure(int max_rank, int max_cap, int depth, const Mutation& mutation) {
  SuiteResult out{"projective bundle structure"};
  for (const auto& [name, law] : chern_laws()) {
    Series F = law.series();
    if (mutation.flip_a) F = mutate_law_series(F, mutation.flip_a->first, mutation.flip_a->second);
    for (const auto& caps : cap_shapes(max_rank, max_cap)) {
      ChernContext ctx(law, caps);
      const std::string tag = caps_label(name, caps);
      const int r = static_cast<int>(caps.size());
      auto u = pb_fundamental_coefficients(ctx, std::max(2 * r - 1, r + depth), F);

      bool shape = true;
      std::string witness;
      for (int i = 0; i < static_cast<int>(u.size()) && shape; ++i) {
        const bool want_unit = i == r - 1;
        if (want_unit ? !u[i].is_unit() : !u[i].is_nilpotent()) {
          shape = false;
          witness = "u_" + std::to_string(i) + " = " + to_text(u[i]) + (want_unit ? " is not a unit" : " is not nilpotent");
        }
      }
      out.record(tag + " unit/nilpotent coefficients", shape, witness);

      Matrix A;
      for (int j = 0; j < r; ++j) {
        A.emplace_back();
        for (int i = 0; i < r; ++i) A[j].push_back(u[i + j]);
      }
      auto structure = check_matrix_structure(A);
      out.record(tag + " matrix structure", structure);
      if (structure) {
        auto inv = invert_matrix(A);
        out.record(tag + " A A^-1 = I", check_identity(multiply(A, inv), "A A^-1"));
        out.record(tag + " A^-1 A = I", check_identity(multiply(inv, A), "A^-1 A"));
      }

      auto pb = hyperplane_relation(ctx);
      if (mutation.flip_d) pb = mutate_relation(pb, *mutation.flip_d);
      out.record(tag + " recursion", coefficient_recursion_check(pb, depth, u));

      if (r >= 2 && caps[0] == caps[1]) {
        auto names = ctx.space()->names;
        std::swap(names[0], names[1]);
        for (int i = 0; i < static_cast<int>(u.size()); ++i) {
          out.record(tag + " u_" + std::to_string(i) + " symmetric",
                     check_equal(embed(u[i], ctx.space(), names), u[i], "symmetry"));
        }
      }
    }
  }
  return out;
}

SuiteResult suite_conner_floyd(int max_rank, int max_cap, int series_precision, const Mutation& mutation) {
  SuiteResult out{"conner-floyd"};
  auto theory = SpecializedTheory::multiplicative();
  Series F = theory.law().series();
  if (mutation.flip_a) F = mutate_law_series(F, mutation.flip_a->first, mutation.flip_a->second);
  for (int r = 1; r <= max_rank; ++r) {
    for (int c = 1; c <= max_cap; ++c) {
      std::vector<int> caps(r, c);
      auto ctx = theory.context(caps);
      auto pb = hyperplane_relation(ctx);
      if (mutation.flip_d) pb = mutate_relation(pb, *mutation.flip_d);
      for (int i = 0; i < r; ++i) {
        auto v = pushforward_projective(theory, pb, pb.hyperplane_power(i), F);
        out.record(caps_label("mult", caps) + " pi_!(t^" + std::to_string(i) + ")",
                   check_equal(v, ctx.one(), "pi_!(t^" + std::to_string(i) + ") = 1"));
      }
      // pi_!(t^r) through the relation vs sum_m u_{m+r} read off directly.
      const int count = r * (c + 1) + r;
      auto u = pb_fundamental_coefficients(ctx, count, F);
      Series direct = ctx.zero();
      for (int m = r; m < count; ++m) direct = direct + u[m];
      out.record(caps_label("mult", caps) + " pi_!(t^" + std::to_string(r) + ")",
                 check_equal(pushforward_projective(theory, pb, pb.hyperplane_power(r), F), direct,
                             "hyperplane_relation: pi_!(t^r) via relation vs expansion"));
    }
  }
  out.record("geometric series, precision " + std::to_string(series_precision),
             verify_geometric_series_identity(series_precision));
  auto ctx = theory.context({max_cap, max_cap});
  out.record("ch(L1 (x) L2)", ch_multiplicativity_check(ctx, ctx.root(0), ctx.root(1)));
  out.record("ch(trivial rank 3)", check_equal(chern_character_multiplicative(ctx, {ctx.zero(), ctx.zero(), ctx.zero()}),
                                               ctx.constant(ctx.ring()->from_rational(3)), "rank"));
  out.record("geometric formal group law identity", geom_fgl_specialization_check(theory, max_cap));
  return out;
}

SuiteResult suite_hrr(int max_n, int max_d, const Mutation& mutation) {
  SuiteResult out{"hirzebruch-riemann-roch"};
  Series todd = todd_series(max_n + 1);
  if (mutation.flip_todd_x2) todd = mutate_todd(todd);
  for (int n = 0; n <= max_n; ++n) {
    for (int d = 0; d <= max_d; ++d) {
      const mpq_class got = hrr_projective_space_value(n, d, todd);
      const mpq_class want(binomial(n + d, n));
      out.record("chi(P^" + std::to_string(n) + ", O(" + std::to_string(d) + "))", got == want,
                 "got " + got.get_str() + ", binomial gives " + want.get_str());
    }
  }
  auto add = SpecializedTheory::additive();
  auto ctx = add.context({2, 2, 1});
  auto r = ctx.roots();
  out.record("todd multiplicativity",
             check_equal(todd_class(ctx, r, todd), todd_class(ctx, {r[0], r[1]}, todd) * todd_class(ctx, {r[2]}, todd),
                         "Td(E + E')"));
  return out;
}

// ---------------------------------------------------------------------------
// Runner

Profile parse_profile(const std::string& name) {
  if (name == "quick") return Profile::Quick;
  if (name == "full") return Profile::Full;
  throw InvalidArgument("unknown profile '" + name + "' (quick, full)");
}

std::string to_string(Profile profile) { return profile == Profile::Quick ? "quick" : "full"; }

bool SelftestReport::ok() const {
  for (const auto& s : suites) {
    if (!s.ok()) return false;
  }
  return true;
}

nlohmann::ordered_json SelftestReport::to_json() const {
  nlohmann::ordered_json j;
  j["profile"] = to_string(profile);
  j["seed"] = seed;
  j["mutation"] = mutation.describe();
  j["ok"] = ok();
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& s : suites) {
    nlohmann::ordered_json e;
    e["name"] = s.name;
    e["cases"] = s.cases;
    e["ok"] = s.ok();
    e["failures"] = s.failures;
    j["suites"].push_back(e);
  }
  return j;
}

std::string SelftestReport::to_text() const {
  std::ostringstream os;
  os << "selftest profile=" << to_string(profile) << " seed=" << seed << " mutation=" << mutation.describe() << "\n";
  for (const auto& s : suites) {
    os << (s.ok() ? "PASS " : "FAIL ") << s.name << " (" << s.cases << " cases";
    if (!s.ok()) os << ", " << s.failures.size() << " failed";
    os << ")\n";
    for (const auto& f : s.failures) os << "  " << f << "\n";
  }
  os << (ok() ? "OK" : "FAILED") << "\n";
  return os.str();
}

SelftestReport run_selftest(Profile profile, std::uint64_t seed, const Mutation& mutation, int threads) {
  const bool full = profile == Profile::Full;
  using Suite = std::pair<std::string, std::function<SuiteResult()>>;
  std::vector<Suite> suites{
      {"ring-core properties", [=] { return suite_ring_properties(full ? 1000 : 200, seed); }},
      {"universal formal group law", [=] { return suite_universal_fgl(full ? 8 : 5); }},
      {"subset decomposition", [=] { return suite_zeta(full ? 3 : 2, 3, full ? 8 : 5); }},
      {"base independence", [=] { return suite_base_independence(full ? 3 : 2, 3, full ? 8 : 5); }},
      {"chern classes", [=] { return suite_chern_whitney(full ? 4 : 2, full ? 3 : 2); }},
      {"projective bundle structure", [=] { return suite_pbf_structure(full ? 3 : 2, full ? 3 : 2, 3, mutation); }},
      {"conner-floyd", [=] { return suite_conner_floyd(full ? 4 : 2, full ? 3 : 2, 12, mutation); }},
      {"hirzebruch-riemann-roch", [=] { return suite_hrr(full ? 4 : 2, full ? 5 : 3, mutation); }},
  };
  auto guarded = [](const Suite& s) {
    try {
      return s.second();
    } catch (const std::exception& e) {
      SuiteResult r{s.first};
      r.record("uncaught error", false, e.what());
      return r;
    }
  };
  SelftestReport report{profile, seed, mutation, {}};
  const std::size_t batch = static_cast<std::size_t>(std::max(1, threads));
  for (std::size_t start = 0; start < suites.size(); start += batch) {
    std::vector<std::future<SuiteResult>> pending;
    const std::size_t end = std::min(suites.size(), start + batch);
    for (std::size_t i = start; i < end; ++i) {
      pending.push_back(std::async(batch == 1 ? std::launch::deferred : std::launch::async, guarded, suites[i]));
    }
    for (auto& f : pending) report.suites.push_back(f.get());
  }
  return report;
}

}  // namespace cobcalc
