#include "treefactor/ratio_set.hpp"

#include "treefactor/action.hpp"
#include "treefactor/error.hpp"

namespace treefactor {

std::set<Rational> realized_rn_values(const Presentation &p, std::size_t max_len,
                                      std::size_t depth, std::uint64_t limit) {
  if (depth <= max_len)
    throw ValidationError("realized_rn_values needs depth > max_len");
  BigInt work = 0;
  for (std::size_t len = 0; len <= max_len; ++len)
    work += sphere_size(static_cast<unsigned>(len), p);
  work *= sphere_size(static_cast<unsigned>(depth), p);
  if (work > BigInt(std::to_string(limit)))
    throw ResourceLimitError("realized_rn_values would evaluate " + work.get_str() +
                             " (element, cell) pairs, above the limit of " +
                             std::to_string(limit));

  std::set<long> exponents;
  for (std::size_t len = 0; len <= max_len; ++len)
    for_each_in_sphere(static_cast<unsigned>(len), p, [&](const Word &g) {
      for_each_in_sphere(static_cast<unsigned>(depth), p, [&](const Word &y) {
        exponents.insert(rn_exponent(g, Cylinder{y}, p));
      });
    });
  std::set<Rational> out;
  for (long k : exponents)
    out.insert(rational_power(p.n(), k));
  return out;
}

namespace {

Word first_word_avoiding(std::size_t length, Letter forbidden_first, const Presentation &p) {
  Word found;
  bool done = false;
  for_each_in_sphere(static_cast<unsigned>(length), p, [&](const Word &w) {
    if (!done && w.front() != forbidden_first) {
      found = w;
      done = true;
    }
  });
  return found;
}

// t = k2 g^-1 k1 with lambda = n, restricted to
//   F = { w in E : k1 w in Omega^x and t w in E },  x = g·e.
// k1 carries a cylinder Omega^{uz} ⊆ E onto Omega^{x v}; g^-1 then lands in
// Omega^v, and k2 = k_{v,u} brings that back into Omega^u ⊆ E (k2 = id when
// v = u already works).
Witness unit_witness(const CylinderUnion &E, const Presentation &p,
                     const WitnessOptions &options) {
  if (E.empty() || measure(E, p) == 0)
    throw ValidationError("witness needs a set of positive measure");
  const Letter g = options.generator.value_or(p.letters().front());
  p.validate(g);
  const Letter g_inv = p.inverse(g);
  const Word x = letter_word(g, p);

  const Word u = E.cylinders().front().base;
  Word v = u;
  std::optional<std::pair<Word, Word>> k2_ends;
  if (!u.empty() && u.front() == g_inv) {
    v = first_word_avoiding(u.size(), g_inv, p);
    k2_ends = std::make_pair(v, u);
  }
  Word w = x;
  for (Letter l : v)
    w = w.extended(l, p);

  Word c;
  for (Letter z : p.letters())
    if (u.empty() || z != p.inverse(u.back())) {
      c = u.extended(z, p);
      break;
    }

  const auto k1 = PiecewiseTranslation::build(c, w, options.max_step, p);
  const CylinderUnion omega_x = CylinderUnion::of({Cylinder{x}}, p);
  PiecewiseMap t = PiecewiseMap::from_translation(k1, E).with_image_in(omega_x, p);
  t = t.then(PiecewiseMap::translation(invert(x, p), omega_x, p), p);
  if (k2_ends) {
    const auto k2 = PiecewiseTranslation::build(k2_ends->first, k2_ends->second,
                                                options.max_step, p);
    t = t.then(PiecewiseMap::from_translation(k2, CylinderUnion::whole()), p);
  }
  t = t.with_image_in(E, p);

  Witness out;
  out.exponent = 1;
  out.lambda = rational_power(p.n(), 1);
  out.E = E;
  out.F = t.domain(p);
  out.tF = t.image(p);
  out.t = std::move(t);
  out.chain.push_back({{c, w}, g, k2_ends, false});
  out.epsilon = 0;
  return out;
}

Witness inverted(Witness w, const Presentation &p) {
  w.exponent = -w.exponent;
  w.lambda = rational_power(p.n(), w.exponent);
  std::swap(w.F, w.tF);
  w.t = w.t.inverse(p);
  // (t_k ... t_1)^-1 = t_1^-1 ... t_k^-1
  std::vector<WitnessStep> chain(w.chain.rbegin(), w.chain.rend());
  for (auto &step : chain)
    step.inverted = !step.inverted;
  w.chain = std::move(chain);
  return w;
}

Witness signed_unit(const CylinderUnion &E, long sign, const Presentation &p,
                    const WitnessOptions &options) {
  Witness w = unit_witness(E, p, options);
  return sign > 0 ? w : inverted(std::move(w), p);
}

} // namespace

Witness chain_witness(const Witness &first, long exponent_step, const Presentation &p,
                      const WitnessOptions &options) {
  if (exponent_step != 1 && exponent_step != -1)
    throw ValidationError("chain links change the exponent by +1 or -1");
  const Witness next = signed_unit(first.tF, exponent_step, p, options);
  Witness out;
  out.exponent = first.exponent + exponent_step;
  out.lambda = rational_power(p.n(), out.exponent);
  out.E = first.E;
  out.t = first.t.then(next.t, p);
  out.F = out.t.domain(p);
  out.tF = out.t.image(p);
  out.chain = first.chain;
  out.chain.insert(out.chain.end(), next.chain.begin(), next.chain.end());
  out.epsilon = 0;
  return out;
}

Witness find_witness(const Rational &lambda, const CylinderUnion &E, const Presentation &p,
                     const WitnessOptions &options) {
  const auto k = exact_log(lambda, p.n());
  if (!k || *k == 0)
    throw ValidationError("lambda must be n^k with k != 0 (got " + to_fraction_string(lambda) +
                          ", n = " + std::to_string(p.n()) + ")");
  const long sign = *k > 0 ? 1 : -1;
  Witness w = signed_unit(E, sign, p, options);
  for (long i = 1; i < sign * *k; ++i)
    w = chain_witness(w, sign, p, options);
  return w;
}

WitnessCheck check_witness(const Witness &w, const Presentation &p) {
  WitnessCheck check;
  auto fail = [&](std::string what) {
    check.ok = false;
    check.failures.push_back(std::move(what));
  };
  if (measure(w.F, p) <= 0)
    fail("nu(F) is not positive");
  if (!is_subset(w.F, w.E, p))
    fail("F is not contained in E");
  if (!is_subset(w.tF, w.E, p))
    fail("tF is not contained in E");
  if (w.t.domain(p) != w.F)
    fail("recorded F differs from the domain of t");
  if (w.t.image(p) != w.tF)
    fail("recorded tF differs from the image of t");
  if (w.lambda != rational_power(p.n(), w.exponent))
    fail("lambda is not n^exponent");
  for (const auto &cell : w.t.cells()) {
    if (!translates_cylinder(cell.element, cell.cell, p)) {
      fail("element does not translate cell " + format(cell.cell.base, p));
      continue;
    }
    if (rn_exponent(cell.element, cell.cell, p) != w.exponent)
      fail("RN exponent differs on cell " + format(cell.cell.base, p));
    const auto image = act_cylinder(cell.element, cell.cell, p);
    if (measure(image, p) / measure(cell.cell, p) != w.lambda)
      fail("measure ratio differs from lambda on cell " + format(cell.cell.base, p));
  }
  return check;
}

std::string type_label(const Presentation &p) {
  return "III_{1/" + std::to_string(p.n()) + "}";
}

Classification classify(const Presentation &p) {
  Classification out;
  out.n = p.n();
  out.label = type_label(p);

  for (unsigned len = 1; len <= 2; ++len)
    for_each_in_sphere(len, p, [&](const Word &g) {
      const auto points = fixed_points(g, p);
      ++out.freeness.elements_checked;
      out.freeness.max_fixed_points = std::max(out.freeness.max_fixed_points, points.size());
      if (points.size() > 2)
        out.freeness.ok = false;
      for (const auto &pt : points)
        if (act_point(g, pt, p) != pt)
          out.freeness.ok = false;
    });

  for (unsigned m = 0; m <= 2; ++m)
    out.transitivity.emplace_back(m, transitivity_check(m, p));

  for (long k : {1L, -1L}) {
    Witness w = find_witness(rational_power(p.n(), k), CylinderUnion::whole(), p);
    out.witness_checks.push_back(check_witness(w, p));
    out.witnesses.push_back(std::move(w));
  }

  out.evidence_ok = out.freeness.ok;
  for (const auto &[m, passed] : out.transitivity)
    out.evidence_ok = out.evidence_ok && passed;
  for (const auto &check : out.witness_checks)
    out.evidence_ok = out.evidence_ok && check.ok;
  return out;
}

} // namespace treefactor
