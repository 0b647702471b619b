#include "cobcalc/series_io.hpp"

#include <cctype>
#include <nlohmann/json.hpp>
#include <sstream>

#include "cobcalc/errors.hpp"

namespace cobcalc {

using nlohmann::json;

namespace {

std::string format_term(const CoeffRing& ring, const VarSpace& space, const Series::Term& t,
                        bool first) {
  std::string out;
  bool has_vars = !t.exps.is_zero();
  std::string mono = has_vars ? format_monomial(space, t.exps) : "";
  if (t.coeff.terms().size() == 1) {
    const auto& [gmono, q] = t.coeff.terms().front();
    bool neg = q < 0;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    std::string mag = ring.format(t.coeff.scaled(neg ? mpq_class(-1) : mpq_class(1)));
    if (!has_vars) return out + mag;
    if (mag == "1") return out + mono;
    return out + mag + "*" + mono;
  }
  if (!first) out += " + ";
  out += "(" + ring.format(t.coeff) + ")";
  if (has_vars) out += "*" + mono;
  return out;
}

// Recursive-descent evaluator over series with rational scalars.
class Parser {
 public:
  Parser(const std::string& text, RingPtr ring, SpacePtr space, int precision)
      : text_(text), ring_(std::move(ring)), space_(std::move(space)), precision_(precision) {}

  Series parse() {
    Series value = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return value;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at offset " + std::to_string(pos_) + " in \"" + text_ + "\"");
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Series constant(const mpq_class& q) const {
    return Series::constant(ring_, space_, precision_, ring_->from_rational(q));
  }

  Series expr() {
    Series acc = eat('-') ? -term() : (eat('+'), term());
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Series term() {
    Series acc = power();
    for (;;) {
      if (eat('*')) {
        acc = acc * power();
      } else if (eat('/')) {
        Series d = power();
        if (d.size() > 1 || (d.size() == 1 && !d.terms()[0].exps.is_zero()) ||
            (d.size() == 1 && !d.terms()[0].coeff.is_constant())) {
          fail("division only by rational constants");
        }
        if (d.is_zero()) fail("division by zero");
        acc = acc.scaled(ring_->from_rational(1 / d.terms()[0].coeff.constant_part()));
      } else {
        return acc;
      }
    }
  }

  Series power() {
    Series base = atom();
    if (eat('^')) {
      skip_ws();
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      int e = std::stoi(text_.substr(start, pos_ - start));
      return base.pow(e);
    }
    return base;
  }

  Series atom() {
    if (eat('(')) {
      Series v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return constant(mpq_class(mpz_class(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      std::string name = text_.substr(start, pos_ - start);
      if (space_->index_of(name)) return Series::variable(ring_, space_, precision_, name);
      if (auto g = ring_->generator_index(name)) {
        return Series::constant(ring_, space_, precision_, ring_->generator(*g));
      }
      fail("unknown identifier '" + name + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string text_;
  RingPtr ring_;
  SpacePtr space_;
  int precision_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_text(const Series& a) {
  if (a.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : a.terms()) {
    out += format_term(*a.ring(), *a.space(), t, first);
    first = false;
  }
  return out;
}

Series parse_series(const std::string& text, RingPtr ring, SpacePtr space, int precision) {
  RingPtr q = ring->rationalized();
  Series value = Parser(text, q, space, precision).parse();
  return change_ring(value, ring);
}

Coeff parse_coeff(const std::string& text, const RingPtr& ring) {
  static const SpacePtr empty = make_space({});
  Series s = parse_series(text, ring, empty, 0);
  return s.constant_term();
}

json ring_to_json(const CoeffRing& ring) {
  json gens = json::array();
  for (const auto& g : ring.generators()) {
    json e = {{"name", g.name}};
    e["weight"] = g.weight ? json(*g.weight) : json(nullptr);
    gens.push_back(e);
  }
  json zeros = json::array();
  for (const auto& z : ring.zero_monomials()) {
    json e = json::array();
    for (std::size_t i = 0; i < z.size(); ++i) e.push_back(z[i]);
    zeros.push_back(e);
  }
  json j = {{"kind", to_string(ring.kind())},
            {"scalars", ring.scalars() == Scalars::Integer ? "ZZ" : "QQ"},
            {"generators", gens},
            {"zero_monomials", zeros}};
  j["weight_bound"] = ring.weight_bound() ? json(*ring.weight_bound()) : json(nullptr);
  return j;
}

RingPtr ring_from_json(const json& j) {
  try {
    std::string sc = j.at("scalars").get<std::string>();
    if (sc != "ZZ" && sc != "QQ") throw ParseError("scalars must be ZZ or QQ");
    std::vector<Generator> gens;
    for (const auto& g : j.value("generators", json::array())) {
      Generator gen{g.at("name").get<std::string>(), std::nullopt};
      if (g.contains("weight") && !g["weight"].is_null()) gen.weight = g["weight"].get<int>();
      gens.push_back(gen);
    }
    std::vector<ExponentVector> zeros;
    for (const auto& z : j.value("zero_monomials", json::array())) {
      auto exps = z.get<std::vector<int>>();
      if (exps.size() != gens.size()) throw ParseError("zero monomial has wrong length");
      ExponentVector ev(gens.size());
      for (std::size_t i = 0; i < exps.size(); ++i) ev.set(i, exps[i]);
      zeros.push_back(ev);
    }
    std::optional<int> wb;
    if (j.contains("weight_bound") && !j["weight_bound"].is_null()) wb = j["weight_bound"].get<int>();
    return std::make_shared<const CoeffRing>(sc == "ZZ" ? Scalars::Integer : Scalars::Rational,
                                             std::move(gens), std::move(zeros), wb);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad ring json: ") + e.what());
  }
}

json to_json(const Series& a) {
  const VarSpace& sp = *a.space();
  json caps = json::object();
  for (std::size_t i = 0; i < sp.size(); ++i) {
    if (sp.caps[i] != VarSpace::kNoCap) caps[sp.names[i]] = sp.caps[i];
  }
  json terms = json::array();
  for (const auto& t : a.terms()) {
    json exps = json::array();
    for (std::size_t i = 0; i < sp.size(); ++i) exps.push_back(t.exps[i]);
    terms.push_back({{"exps", exps}, {"coeff", a.ring()->format(t.coeff)}});
  }
  return {{"ring", ring_to_json(*a.ring())},
          {"vars", sp.names},
          {"precision", a.precision()},
          {"caps", caps},
          {"terms", terms}};
}

Series series_from_json(const json& j) {
  try {
    RingPtr ring = ring_from_json(j.at("ring"));
    auto names = j.at("vars").get<std::vector<std::string>>();
    std::vector<int> caps(names.size(), VarSpace::kNoCap);
    if (j.contains("caps")) {
      for (const auto& [name, cap] : j["caps"].items()) {
        auto it = std::find(names.begin(), names.end(), name);
        if (it == names.end()) throw ParseError("cap for unknown variable " + name);
        caps[it - names.begin()] = cap.get<int>();
      }
    }
    SpacePtr space = make_space(names, caps);
    int precision = j.at("precision").get<int>();
    std::vector<Series::Term> terms;
    for (const auto& t : j.value("terms", json::array())) {
      auto exps = t.at("exps").get<std::vector<int>>();
      if (exps.size() != names.size()) throw ParseError("term exponent vector has wrong length");
      ExponentVector ev(names.size());
      for (std::size_t i = 0; i < exps.size(); ++i) {
        if (exps[i] < 0) throw ParseError("negative exponent");
        ev.set(i, exps[i]);
      }
      const auto& c = t.at("coeff");
      Coeff coeff = c.is_string() ? parse_coeff(c.get<std::string>(), ring)
                                  : ring->from_rational(mpq_class(c.get<long>()));
      terms.push_back({ev, coeff});
    }
    return Series::from_terms(ring, space, precision, std::move(terms));
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad series json: ") + e.what());
  }
}

}  // namespace cobcalc
