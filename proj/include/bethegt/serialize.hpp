#pragma once

// JSON forms of the library's values. Rationals are "p/q" strings; weights
// and pattern entries are doubled integers with a "half" flag.

#include "bethegt/envelope.hpp"
#include "bethegt/gtpattern.hpp"
#include "bethegt/liealg.hpp"
#include "bethegt/polyalg.hpp"
#include "bethegt/yangian.hpp"

#include "json.hpp"

#include <string>

namespace bethegt::io {

using json = nlohmann::json;

/// Sorted keys, no insignificant whitespace beyond the given indent, and
/// doubles printed with 17 significant digits.
std::string canonical_dump(const json& j, int indent = 2);

json rational_json(const Rational& q);
Rational rational_from_json(const json& j);

json to_json(const lie::LieElement& x);
lie::LieElement lie_from_json(const json& j);

json to_json(const poly::PolyQ& p);
poly::PolyQ poly_from_json(const json& j);

json to_json(const env::PBWElement& a);

json to_json(const gt::WeightD& w);
json to_json(const gt::GTPatternD& p);
gt::GTPatternD pattern_from_json(const json& j);
json to_json(const gt::BranchParams& p);

json to_json(const yang::OperatorPencil<Rational>& p);
json to_json(const yang::OperatorPencil<double>& p);
json to_json(const yang::RelationReport& r);
json to_json(const yang::SpectrumResult& s);
json to_json(const yang::FlowResult& f);
json to_json(const yang::LabelingResult& r);

json to_json(const poly::PoincareReport& r);
json to_json(const poly::LeadingTermCheck& c);

/// One row per grid point: t, then one column per tracked line.
std::string eigenvalue_csv(const yang::FlowResult& f);

}  // namespace bethegt::io
