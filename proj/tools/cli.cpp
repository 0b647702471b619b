#include "cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cobcalc/chern.hpp"
#include "cobcalc/errors.hpp"
#include "cobcalc/fgl.hpp"
#include "cobcalc/rr.hpp"
#include "cobcalc/selftest.hpp"
#include "cobcalc/series_io.hpp"
#include "cobcalc/zeta.hpp"

namespace cobcalc::cli {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Outcome() = default;
  Outcome(Json r, std::string t) : result(std::move(r)), text(std::move(t)) {}

  Json result;
  std::string text;
  bool ok = true;
  std::string witness;
  std::optional<int> precision;
};

Json series_json(const Series& s) { return Json::parse(to_json(s).dump()); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& e : row) r.push_back(to_text(e));
    rows.push_back(r);
  }
  return rows;
}

std::string matrix_text(const Matrix& m) {
  std::string out;
  for (const auto& row : m) {
    out += "  [";
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? ", " : "") + to_text(row[i]);
    out += "]\n";
  }
  return out;
}

void note(Outcome& o, const std::string& label, const CheckResult& r) {
  o.text += (r.ok ? "PASS " : "FAIL ") + label + (r.ok ? "" : ": " + r.witness) + "\n";
  o.result["checks"].push_back(Json{{"check", label}, {"ok", r.ok}, {"witness", r.witness}});
  if (!r.ok && o.ok) {
    o.ok = false;
    o.witness = label + ": " + r.witness;
  }
}

// --- request options -------------------------------------------------------

struct Request {
  bool json = false;
  bool timing = false;
  std::string law_file;
  int threads = 1;
  std::string law = "mult";
  std::optional<int> degree;
  int n = 1;
  int d = 0;
  int rank = 2;
  int r1 = 1;
  int r2 = 1;
  int count = 0;
  std::vector<int> caps;
  std::vector<int> mult;
  std::string identity;
  std::string profile = "quick";
  std::uint64_t seed = kDefaultSeed;
  std::optional<int> mutate_d;
  std::vector<int> mutate_a;
  bool mutate_todd = false;

  int precision() const { return degree ? *degree : default_degree(); }
};

void require(bool cond, const std::string& message) {
  if (!cond) throw UsageError(message);
}

int checked_degree(const Request& q) {
  const int p = q.precision();
  require(p >= 1 && p <= 16, "--degree must be between 1 and 16");
  return p;
}

std::vector<int> checked_caps(const Request& q, int rank, int fallback) {
  require(rank >= 1 && rank <= 6, "--ranks must be between 1 and 6");
  std::vector<int> caps = q.caps.empty() ? std::vector<int>{fallback} : q.caps;
  if (caps.size() == 1) caps.assign(rank, caps[0]);
  require(static_cast<int>(caps.size()) == rank, "--caps needs one value or one per root");
  for (int c : caps) require(c >= 0 && c <= 6, "--caps values must be between 0 and 6");
  return caps;
}

// Named laws (add, mult, univ), a series in x, y, or --law-file. For Chern
// computations the universal law is taken over the weight quotient.
FormalGroupLaw resolve_law(const Request& q, int degree, bool exact_univ) {
  if (!q.law_file.empty()) {
    std::ifstream in(q.law_file);
    require(static_cast<bool>(in), "--law-file: cannot read " + q.law_file);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw UsageError("--law-file: " + std::string(e.what()));
    }
    return fgl_from_series(series_from_json(j), degree);
  }
  auto ZZ = CoeffRing::integers();
  if (q.law == "add") return FormalGroupLaw::additive(ZZ, degree);
  if (q.law == "mult") return FormalGroupLaw::multiplicative(ZZ, degree);
  if (q.law == "univ") {
    LazardModel m(degree);
    return exact_univ ? m.reduced_law() : m.law();
  }
  Series F;
  try {
    F = parse_series(q.law, ZZ, make_space({"x", "y"}), degree);
  } catch (const Error& e) {
    throw UsageError("--law: expected add, mult, univ or a series in x, y (" + std::string(e.what()) + ")");
  }
  return fgl_from_series(F, degree);
}

// --- fgl --------------------------------------------------------------------

Outcome fgl_universal(const Request& q) {
  const int p = checked_degree(q);
  auto m = universal_fgl(p);
  Outcome o{series_json(m.law().series()), to_text(m.law().series()) + "\n"};
  o.precision = p;
  return o;
}

Outcome fgl_nseries(const Request& q) {
  const int p = checked_degree(q);
  auto law = resolve_law(q, p, false);
  auto s = law.n_series(q.n, p);
  Outcome o{series_json(s), to_text(s) + "\n"};
  o.precision = p;
  return o;
}

Outcome fgl_inverse(const Request& q) {
  const int p = checked_degree(q);
  auto s = resolve_law(q, p, false).inverse(p);
  Outcome o{series_json(s), to_text(s) + "\n"};
  o.precision = p;
  return o;
}

Outcome fgl_check(const Request& q) {
  const int p = checked_degree(q);
  Outcome o;
  o.precision = p;
  try {
    auto law = resolve_law(q, p, false);
    o.result = Json{{"law", series_json(law.series().truncated(p))}};
    o.text = "OK formal group law to degree " + std::to_string(p) + "\n";
  } catch (const AxiomViolation& e) {
    o.ok = false;
    o.witness = e.what();
    o.result = Json{{"axiom", e.axiom()}, {"degree", e.degree()}};
    o.text = "FAIL " + std::string(e.what()) + "\n";
  }
  return o;
}

// --- zeta -------------------------------------------------------------------

std::vector<int> checked_mult(const Request& q) {
  require(!q.mult.empty(), "--mult is required");
  require(q.mult.size() <= 6, "--mult: at most 6 divisors");
  for (int n : q.mult) require(n >= 1, "--mult: multiplicity " + std::to_string(n) + " is not positive");
  return q.mult;
}

Outcome zeta_decompose(const Request& q) {
  const int p = checked_degree(q);
  auto n = checked_mult(q);
  auto d = decompose(resolve_law(q, p, false), n, p);
  Outcome o;
  o.precision = p;
  o.result["multiplicities"] = n;
  o.result["sum"] = series_json(d.sum);
  o.result["components"] = Json::object();
  for (std::uint32_t mask = 1; mask < d.components.size(); ++mask) {
    o.result["components"][subset_label(mask)] = series_json(d.component(mask));
    o.text += subset_label(mask) + ": " + to_text(d.component(mask)) + "\n";
  }
  return o;
}

Outcome zeta_verify(const Request& q) {
  const int p = checked_degree(q);
  auto n = checked_mult(q);
  auto law = resolve_law(q, p, false);
  Outcome o;
  o.precision = p;
  o.result["checks"] = Json::array();
  note(o, "reassembly", verify_decomposition(decompose(law, n, p)));
  if (n.size() >= 2) note(o, "inductive splitting", verify_inductive_splitting(law, n, p));
  for (int m : n) note(o, "x F(x) = [" + std::to_string(m) + "]x", verify_single_divisor_identity(law, m, p));
  if (q.law_file.empty() && (q.law == "add" || q.law == "mult")) {
    note(o, "specialization commutes", specialization_commutes(universal_fgl(p), law, n, p));
  }
  return o;
}

// --- chern ------------------------------------------------------------------

Outcome chern_pbf(const Request& q, bool matrix_only) {
  const int p = checked_degree(q);
  auto caps = checked_caps(q, q.rank, ChernContext::kDefaultCap);
  ChernContext ctx(resolve_law(q, p, true), caps);
  const int r = q.rank;
  const int count = q.count > 0 ? std::max(q.count, 2 * r - 1) : 2 * r - 1;
  auto u = pb_fundamental_coefficients(ctx, count);
  Outcome o;
  o.precision = p;
  if (!matrix_only) {
    o.result["u"] = Json::array();
    for (int i = 0; i < count; ++i) {
      o.result["u"].push_back(to_text(u[i]));
      o.text += "u_" + std::to_string(i) + " = " + to_text(u[i]) + "\n";
    }
  }
  Matrix A = coefficient_matrix(ctx, u);
  o.result["A"] = matrix_json(A);
  o.text += "A =\n" + matrix_text(A);
  o.result["checks"] = Json::array();
  auto structure = check_matrix_structure(A);
  note(o, "anti-diagonal units", structure);
  if (structure) {
    auto inv = invert_matrix(A);
    o.result["A_inv"] = matrix_json(inv);
    o.text += "A^-1 =\n" + matrix_text(inv);
    note(o, "A A^-1 = I", check_identity(multiply(A, inv), "A A^-1"));
    note(o, "A^-1 A = I", check_identity(multiply(inv, A), "A^-1 A"));
  }
  if (matrix_only) note(o, "hyperplane recursion", coefficient_recursion_check(hyperplane_relation(ctx), 3));
  return o;
}

Outcome chern_whitney(const Request& q) {
  const int p = checked_degree(q);
  require(q.r1 >= 1 && q.r2 >= 1, "--r1 and --r2 must be positive");
  const int r = q.r1 + q.r2;
  auto caps = checked_caps(q, r, 2);
  ChernContext ctx(resolve_law(q, p, true), caps);
  auto roots = ctx.roots();
  std::vector<Series> left(roots.begin(), roots.begin() + q.r1), right(roots.begin() + q.r1, roots.end());
  auto c1 = total_chern_class(ctx, left), c2 = total_chern_class(ctx, right), c = total_chern_class(ctx, roots);
  Outcome o;
  o.precision = p;
  o.result["c(E')"] = to_text(c1);
  o.result["c(E'')"] = to_text(c2);
  o.result["c(E)"] = to_text(c);
  o.text = "c(E') = " + to_text(c1) + "\nc(E'') = " + to_text(c2) + "\nc(E) = " + to_text(c) + "\n";
  o.result["checks"] = Json::array();
  note(o, "c(E) = c(E') c(E'')", check_equal(c, c1 * c2, "whitney"));
  Series euler = ctx.one();
  for (const auto& x : roots) euler = euler * x;
  note(o, "c_r(E) = e(E)", check_equal(chern_classes(ctx, roots).back(), euler, "top class"));
  return o;
}

// --- rr ---------------------------------------------------------------------

Outcome rr_hrr(const Request& q) {
  require(q.n >= 0 && q.n <= 12, "--n must be between 0 and 12");
  require(q.d >= -12 && q.d <= 12, "--d must be between -12 and 12");
  auto v = hrr_projective_space(q.n, q.d);
  Outcome o{Json(v.get_str()), v.get_str() + "\n"};
  o.precision = q.n + 1;
  return o;
}

Outcome rr_cf_push(const Request& q) {
  auto caps = checked_caps(q, q.rank, 2);
  auto theory = SpecializedTheory::multiplicative();
  auto pb = hyperplane_relation(theory.context(caps));
  auto values = pushforward_hyperplane_powers(theory, pb);
  Outcome o;
  o.result["pushforwards"] = Json::array();
  o.result["checks"] = Json::array();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const std::string label = "pi_!(t^" + std::to_string(i) + ")";
    o.result["pushforwards"].push_back(to_text(values[i]));
    o.text += label + " = " + to_text(values[i]) + "\n";
    note(o, label + " = 1", check_equal(values[i], pb.base().one(), label));
  }
  return o;
}

Outcome rr_identity(const Request& q) {
  Outcome o;
  o.result["checks"] = Json::array();
  if (q.identity == "geometric-series") {
    const int p = q.degree ? *q.degree : 12;
    require(p >= 1 && p <= 64, "--degree must be between 1 and 64");
    o.precision = p;
    note(o, "sum (-x)^i/(1-x)^i = 1 - x", verify_geometric_series_identity(p));
  } else if (q.identity == "geom-fgl") {
    require(q.law == "add" || q.law == "mult" || q.law == "univ", "--law must be add, mult or univ");
    const int cap = q.caps.empty() ? 2 : q.caps[0];
    require(cap >= 1 && cap <= 3, "--caps must be between 1 and 3");
    std::optional<SpecializedTheory> th;
    if (q.law == "add") th = SpecializedTheory::additive();
    if (q.law == "mult") th = SpecializedTheory::multiplicative();
    if (q.law == "univ") th = SpecializedTheory::universal_reduced(LazardModel(checked_degree(q)));
    note(o, "geometric formal group law identity", geom_fgl_specialization_check(*th, cap));
  } else if (q.identity == "todd") {
    const int p = checked_degree(q);
    auto t = todd_series(p);
    o.precision = p;
    o.result["todd"] = series_json(t);
    o.text = to_text(t) + "\n";
  } else {
    throw UsageError("identity: expected geometric-series, geom-fgl or todd");
  }
  return o;
}

// --- selftest ---------------------------------------------------------------

Outcome selftest(const Request& q) {
  Mutation m;
  m.flip_d = q.mutate_d;
  if (!q.mutate_a.empty()) {
    require(q.mutate_a.size() == 2 && q.mutate_a[0] >= 1 && q.mutate_a[1] >= 1, "--mutate-a expects i,j >= 1");
    m.flip_a = std::make_pair(q.mutate_a[0], q.mutate_a[1]);
  }
  if (m.flip_d) require(*m.flip_d >= 1, "--mutate-d expects i >= 1");
  m.flip_todd_x2 = q.mutate_todd;
  require(q.threads >= 1, "--threads must be positive");
  Profile profile;
  try {
    profile = parse_profile(q.profile);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--profile: ") + e.what());
  }
  auto report = run_selftest(profile, q.seed, m, q.threads);
  Outcome o{report.to_json(), report.to_text()};
  o.ok = report.ok();
  if (!o.ok) {
    for (const auto& s : report.suites) {
      if (!s.ok()) {
        o.witness = s.name + ": " + s.failures.front();
        break;
      }
    }
  }
  return o;
}

}  // namespace

int default_degree() {
  const char* env = std::getenv("COBCALC_DEFAULT_DEGREE");
  if (!env || !*env) return 6;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 16) throw UsageError("COBCALC_DEFAULT_DEGREE must be an integer in 1..16");
  return static_cast<int>(v);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations with formal group laws and characteristic classes", "cobcalc"};
  app.fallthrough();
  app.require_subcommand(1);
  Request q;
  app.add_flag("--json", q.json, "Machine-readable output");
  app.add_flag("--timing", q.timing, "Report elapsed time on stderr");
  app.add_option("--law-file", q.law_file, "Series JSON for a custom law (validated)");
  app.add_option("--threads", q.threads, "Worker threads for selftest");

  auto add_degree = [&](CLI::App* c) { c->add_option("--degree", q.degree, "Precision (default 6)"); };
  auto add_law = [&](CLI::App* c) { c->add_option("--law", q.law, "add, mult, univ or a series in x, y"); };

  std::string command;
  std::vector<std::pair<CLI::App*, std::function<Outcome()>>> handlers;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, std::function<Outcome()> fn) {
    auto* c = parent->add_subcommand(name, help);
    handlers.emplace_back(c, std::move(fn));
    return c;
  };

  auto* fgl = app.add_subcommand("fgl", "Formal group laws");
  fgl->require_subcommand(1);
  add_degree(leaf(fgl, "universal", "Universal law over Z[b1..b_{N-1}]", [&] { return fgl_universal(q); }));
  {
    auto* c = leaf(fgl, "nseries", "[n]_F x", [&] { return fgl_nseries(q); });
    add_law(c), add_degree(c);
    c->add_option("--n", q.n, "Multiple")->required();
  }
  for (auto [name, fn] : std::vector<std::pair<std::string, Outcome (*)(const Request&)>>{
           {"inverse", fgl_inverse}, {"check", fgl_check}}) {
    auto* c = leaf(fgl, name, name == "inverse" ? "Formal inverse" : "Validate the axioms",
                   [&q, fn = fn] { return fn(q); });
    add_law(c), add_degree(c);
  }

  auto* zeta = app.add_subcommand("zeta", "Subset decompositions of formal sums");
  zeta->require_subcommand(1);
  for (auto [name, fn] : std::vector<std::pair<std::string, Outcome (*)(const Request&)>>{
           {"decompose", zeta_decompose}, {"verify", zeta_verify}}) {
    auto* c = leaf(zeta, name, name == "decompose" ? "Components F_I" : "Check decomposition identities",
                   [&q, fn = fn] { return fn(q); });
    add_law(c), add_degree(c);
    c->add_option("--mult", q.mult, "Multiplicities, e.g. 1,2,3")->delimiter(',')->required();
  }

  auto* chern = app.add_subcommand("chern", "Chern classes and projective bundles");
  chern->require_subcommand(1);
  for (auto [name, matrix_only] : std::vector<std::pair<std::string, bool>>{{"pbf", false}, {"matrix", true}}) {
    auto* c = leaf(chern, name, matrix_only ? "Coefficient matrix and its inverse" : "Fundamental class coefficients",
                   [&q, m = matrix_only] { return chern_pbf(q, m); });
    add_law(c), add_degree(c);
    c->add_option("--ranks", q.rank, "Rank of the split bundle");
    c->add_option("--caps", q.caps, "Nilpotency caps (one value or one per root)")->delimiter(',');
    if (!matrix_only) c->add_option("--count", q.count, "Number of coefficients");
  }
  {
    auto* c = leaf(chern, "whitney", "Whitney sum formula for E' + E''", [&] { return chern_whitney(q); });
    add_law(c), add_degree(c);
    c->add_option("--r1", q.r1, "Rank of E'");
    c->add_option("--r2", q.r2, "Rank of E''");
    c->add_option("--caps", q.caps, "Nilpotency caps")->delimiter(',');
  }

  auto* rr = app.add_subcommand("rr", "Specializations and Riemann-Roch");
  rr->require_subcommand(1);
  {
    auto* c = leaf(rr, "hrr", "chi(P^n, O(d)) via Hirzebruch-Riemann-Roch", [&] { return rr_hrr(q); });
    c->add_option("--n", q.n, "Dimension")->required();
    c->add_option("--d", q.d, "Twist")->required();
  }
  {
    auto* c = leaf(rr, "cf-push", "Multiplicative pushforwards pi_!(t^i)", [&] { return rr_cf_push(q); });
    c->add_option("--ranks", q.rank, "Rank of the split bundle");
    c->add_option("--caps", q.caps, "Nilpotency caps")->delimiter(',');
  }
  {
    auto* c = leaf(rr, "identity", "Check a named identity", [&] { return rr_identity(q); });
    c->add_option("name", q.identity, "geometric-series, geom-fgl or todd")->required();
    add_law(c), add_degree(c);
    c->add_option("--caps", q.caps, "Cap for geom-fgl");
  }

  {
    auto* c = leaf(&app, "selftest", "Run the invariant suites", [&] { return selftest(q); });
    c->add_option("--profile", q.profile, "quick or full");
    c->add_option("--seed", q.seed, "Seed for random cases");
    c->add_option("--mutate-d", q.mutate_d, "Negate d_i (mutation test)");
    c->add_option("--mutate-a", q.mutate_a, "Negate a_ij, e.g. 1,2 (mutation test)")->delimiter(',');
    c->add_flag("--mutate-todd", q.mutate_todd, "Negate the Todd x^2 coefficient (mutation test)");
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  std::function<Outcome()> handler;
  for (auto& [c, fn] : handlers) {
    if (c->parsed()) {
      handler = fn;
      for (auto* p = c; p && p != &app; p = p->get_parent()) command = p->get_name() + (command.empty() ? "" : " ") + command;
    }
  }
  if (!handler) {
    err << "usage error: missing subcommand\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = handler();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const NonPositiveMultiplicity& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const PrecisionTooLow& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    o.ok = false;
    o.witness = e.what();
    o.text = "FAIL " + std::string(e.what()) + "\n";
  }
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (q.json) {
    Json j;
    j["command"] = command;
    j["ok"] = o.ok;
    if (o.precision) j["precision"] = *o.precision;
    j["result"] = o.result;
    if (!o.ok) j["witness"] = o.witness;
    if (q.timing) j["elapsed_seconds"] = elapsed;
    out << j.dump(2) << "\n";
  } else {
    out << o.text;
  }
  if (!o.ok) err << "check failed: " << o.witness << "\n";
  if (q.timing) err << "elapsed " << elapsed << " s\n";
  return o.ok ? kOk : kCheckFailed;
}

}  // namespace cobcalc::cli
