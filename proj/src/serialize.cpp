#include "treefactor/serialize.hpp"

#include "treefactor/error.hpp"

namespace treefactor {

json to_json(const CylinderUnion &u, const Presentation &p) {
  json out = json::array();
  for (const auto &c : u)
    out.push_back(format(c.base, p));
  return out;
}

CylinderUnion parse_cylinder_union(std::string_view text, const Presentation &p) {
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("cylinder union is not valid JSON: ") + e.what());
  }
  if (!parsed.is_array())
    throw ValidationError("cylinder union must be a JSON array of words");
  std::vector<Cylinder> cylinders;
  for (const auto &item : parsed) {
    if (!item.is_string())
      throw ValidationError("cylinder union entries must be strings");
    const auto letters = parse_letters(item.get<std::string>(), p);
    if (!is_reduced(letters, p))
      throw ValidationError("cylinder base '" + item.get<std::string>() + "' is not reduced");
    cylinders.push_back({reduce(letters, p)});
  }
  return CylinderUnion::of(std::move(cylinders), p);
}

json to_json(const RNTable &table, const Presentation &p) {
  json out = json::array();
  for (const auto &cell : table.cells())
    out.push_back({{"cell", format(cell.cell.base, p)},
                   {"value", to_fraction_string(cell.value)},
                   {"exponent", cell.exponent}});
  return out;
}

json to_json(const PiecewiseTranslation &k) {
  const Presentation &p = k.presentation();
  json pieces = json::array();
  for (const auto &piece : k.forward_pieces())
    pieces.push_back({{"domain", format(piece.domain.base, p)},
                      {"element", format(piece.element, p)},
                      {"image", format(piece.image.base, p)}});
  json exceptional = json::array();
  for (const auto &[from, to] : k.exceptional())
    exceptional.push_back({format(from, p), format(to, p)});
  const auto residual = k.residual();
  return {{"x", format(k.x(), p)},
          {"y", format(k.y(), p)},
          {"step_count", k.steps()},
          {"pieces", std::move(pieces)},
          {"exceptional", std::move(exceptional)},
          {"residual", residual ? json(format(residual->base, p)) : json(nullptr)},
          {"residual_measure", to_fraction_string(residual ? measure(*residual, p) : Rational(0))}};
}

json to_json(const VerificationReport &r) {
  return {{"ok", r.ok},
          {"failures", r.failures},
          {"steps", r.steps},
          {"piece_count", r.piece_count},
          {"covered_measure", to_fraction_string(r.covered_measure)},
          {"residual_measure", to_fraction_string(r.residual_measure)},
          {"expected_residual_measure", to_fraction_string(r.expected_residual_measure)}};
}

namespace {

json ends_json(const std::pair<Word, Word> &ends, const Presentation &p) {
  return {{"x", format(ends.first, p)}, {"y", format(ends.second, p)}};
}

json step_json(const WitnessStep &step, const Presentation &p) {
  return {{"k1", ends_json(step.k1, p)},
          {"g", p.format(step.generator)},
          {"k2", step.k2 ? ends_json(*step.k2, p) : json("id")},
          {"inverted", step.inverted}};
}

} // namespace

json to_json(const Witness &w, const Presentation &p) {
  json checks = json::array();
  for (const auto &cell : w.t.cells())
    checks.push_back({{"cell", format(cell.cell.base, p)},
                      {"element", format(cell.element, p)},
                      {"value", to_fraction_string(
                                    rational_power(p.n(), rn_exponent(cell.element, cell.cell, p)))}});
  json chain = json::array();
  for (const auto &step : w.chain)
    chain.push_back(step_json(step, p));
  const WitnessStep &head = w.chain.front();
  return {{"lambda", to_fraction_string(w.lambda)},
          {"E", to_json(w.E, p)},
          {"F", to_json(w.F, p)},
          {"tF", to_json(w.tF, p)},
          {"nu_F", to_fraction_string(measure(w.F, p))},
          {"g", p.format(head.generator)},
          {"k1", ends_json(head.k1, p)},
          {"k2", head.k2 ? ends_json(*head.k2, p) : json("id")},
          {"chain", std::move(chain)},
          {"epsilon", to_fraction_string(w.epsilon)},
          {"rn_checks", std::move(checks)}};
}

json to_json(const Classification &c, const Presentation &p) {
  json transitivity = json::array();
  for (const auto &[m, passed] : c.transitivity)
    transitivity.push_back({{"m", m}, {"transitive", passed}});
  json witnesses = json::array();
  for (std::size_t i = 0; i < c.witnesses.size(); ++i) {
    json entry = {{"lambda", to_fraction_string(c.witnesses[i].lambda)},
                  {"nu_F", to_fraction_string(measure(c.witnesses[i].F, p))},
                  {"ok", c.witness_checks[i].ok},
                  {"failures", c.witness_checks[i].failures}};
    witnesses.push_back(std::move(entry));
  }
  return {{"s", p.involutions()},
          {"t", p.free_generators()},
          {"n", c.n},
          {"type", c.label},
          {"evidence_ok", c.evidence_ok},
          {"evidence",
           {{"freeness",
             {{"elements_checked", c.freeness.elements_checked},
              {"max_fixed_points", c.freeness.max_fixed_points},
              {"fixed_point_measure", "0/1"},
              {"ok", c.freeness.ok}}},
            {"ergodic_subgroup_transitivity", std::move(transitivity)},
            {"ratio_set_witnesses", std::move(witnesses)},
            {"hyperfiniteness", c.hyperfiniteness}}}};
}

json summary_json(const SampleBatch &batch, std::size_t k) {
  const Presentation &p = batch.presentation();
  json cells = json::array();
  for (const auto &y : sphere(static_cast<unsigned>(k), p)) {
    const Cylinder c{y};
    cells.push_back({{"cell", format(y, p)},
                     {"count", batch.hits(c)},
                     {"frequency", batch.frequency(c)},
                     {"exact", to_fraction_string(measure(c, p))}});
  }
  return {{"s", p.involutions()},
          {"t", p.free_generators()},
          {"depth", batch.depth()},
          {"count", batch.count()},
          {"seed", batch.seed()},
          {"rng", "splitmix64"},
          {"cell_depth", k},
          {"cells", std::move(cells)}};
}

} // namespace treefactor
