#pragma once

// JSON forms of the library's reports. Words are written in their string
// form, rationals as "p/q".

#include "treefactor/action.hpp"
#include "treefactor/boundary.hpp"
#include "treefactor/full_group.hpp"
#include "treefactor/ratio_set.hpp"
#include "treefactor/sampler.hpp"

#include <nlohmann/json.hpp>

#include <string_view>

namespace treefactor {

using nlohmann::json;

json to_json(const CylinderUnion &u, const Presentation &p);
/// Parses a JSON array of word strings into a canonical union.
CylinderUnion parse_cylinder_union(std::string_view text, const Presentation &p);

/// [{cell, value, exponent}, ...]
json to_json(const RNTable &table, const Presentation &p);

/// {x, y, step_count, pieces: [{domain, element, image}], exceptional, residual, residual_measure}
json to_json(const PiecewiseTranslation &k);
json to_json(const VerificationReport &r);

/// {lambda, E, F, g, k1, k2, rn_checks: [{cell, value}], ...}
json to_json(const Witness &w, const Presentation &p);
json to_json(const Classification &c, const Presentation &p);

/// Frequencies of the depth-k cells with their exact measures.
json summary_json(const SampleBatch &batch, std::size_t k);

} // namespace treefactor
