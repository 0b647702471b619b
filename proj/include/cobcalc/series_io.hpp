#pragma once

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "cobcalc/series.hpp"

namespace cobcalc {

// Canonical text: terms in graded-lex order, e.g. "1 - 2*b1*x*y + 3*x^2".
// Multi-term coefficients are parenthesised: "(b1 + b2)*x^2".
std::string to_text(const Series& a);

// Parses a polynomial expression (+ - * ^, parentheses, integer and a/b
// literals, division by integer constants) whose identifiers are variables of
// `space` or generators of `ring`.
Series parse_series(const std::string& text, RingPtr ring, SpacePtr space, int precision);

// Parses a coefficient expression in the generators of `ring`.
Coeff parse_coeff(const std::string& text, const RingPtr& ring);

nlohmann::json ring_to_json(const CoeffRing& ring);
RingPtr ring_from_json(const nlohmann::json& j);

// {"ring": ..., "vars": [...], "precision": N, "caps": {...},
//  "terms": [{"exps": [...], "coeff": "..."}]}
nlohmann::json to_json(const Series& a);
Series series_from_json(const nlohmann::json& j);

}  // namespace cobcalc
