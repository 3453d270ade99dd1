#include "support.hpp"

#include "treefactor/action.hpp"
#include "treefactor/error.hpp"
#include "treefactor/full_group.hpp"

#include <doctest.h>

using namespace treefactor;
using treefactor::testing::Gen;
using treefactor::testing::test_presentations;
using treefactor::testing::w;

namespace {

Word word_of(std::initializer_list<Word> parts, const Presentation &p) {
  Word out;
  for (const auto &part : parts)
    out = multiply(out, part, p);
  return out;
}

// Piece lookup done by hand: the unique materialized piece containing the point.
std::optional<BoundaryPoint> apply_by_lookup(const PiecewiseTranslation &k, const BoundaryPoint &x) {
  const Presentation &p = k.presentation();
  for (const auto &pieces : {k.forward_pieces(), k.backward_pieces()})
    for (const auto &piece : pieces)
      if (contains(piece.domain, x))
        return act_point(piece.element, x, p);
  if (!contains(Cylinder{k.x()}, x) && !contains(Cylinder{k.y()}, x))
    return x;
  return std::nullopt;
}

} // namespace

TEST_CASE("first steps of the swap between a1 and a2") {
  const Presentation p(3, 0);
  const auto k = PiecewiseTranslation::build(w("a1", p), w("a2", p), 2, p);
  const auto pieces = k.forward_pieces();
  REQUIRE(pieces.size() == 2);

  CHECK(format(pieces[0].domain.base, p) == "a1 a3");
  CHECK(format(pieces[0].element, p) == "a2 a1");
  CHECK(format(pieces[0].image.base, p) == "a2 a3");
  CHECK(measure(pieces[0].domain, p) == Rational(1, 6));
  CHECK(measure(pieces[0].image, p) == Rational(1, 6));

  CHECK(format(pieces[1].domain.base, p) == "a1 a2 a3");
  CHECK(format(pieces[1].element, p) == "a2 a1 a2 a1");
  CHECK(format(pieces[1].image.base, p) == "a2 a1 a3");
  CHECK(measure(pieces[1].domain, p) == Rational(1, 12));
  CHECK(measure(pieces[1].image, p) == Rational(1, 12));

  const auto ex = k.exceptional();
  REQUIRE(ex.size() == 2);
  CHECK(format(ex[0].first, p) == "(a1 a2)");
  CHECK(format(ex[0].second, p) == "(a2 a1)");
  CHECK(ex[1].first == ex[0].second);
  CHECK(ex[1].second == ex[0].first);
}

TEST_CASE("residual measures decay by 1/n") {
  const Presentation p(3, 0);
  const auto k1 = PiecewiseTranslation::build(w("a1", p), w("a2", p), 1, p);
  REQUIRE(k1.residual().has_value());
  CHECK(measure(*k1.residual(), p) == Rational(1, 6));
  CHECK(format(k1.residual()->base, p) == "a1 a2");
  const auto k4 = PiecewiseTranslation::build(w("a1", p), w("a2", p), 4, p);
  CHECK(measure(*k4.residual(), p) == Rational(1, 48));
  CHECK(measure(*k4.residual_image(), p) == Rational(1, 48));

  // Extending keeps the earlier pieces.
  k1.extend_to(4);
  CHECK(k1.forward_pieces().size() == k4.forward_pieces().size());
  CHECK(measure(*k1.residual(), p) == Rational(1, 48));
}

TEST_CASE("step elements follow the alternating pattern") {
  for (const auto &p : test_presentations()) {
    Gen gen(41);
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t m = 1 + gen.below(3);
      const Word x = gen.word(p, m);
      const Word y = gen.word(p, m);
      if (x == y || x.back() == y.back())
        continue;
      const Word xi = invert(x, p);
      const Word xm = letter_word(x.back(), p);
      const Word ym = letter_word(y.back(), p);
      const Word xmi = invert(xm, p);
      CHECK(step_element(x, y, 1, p) == word_of({y, xi}, p));
      CHECK(step_element(x, y, 2, p) == word_of({y, xmi, ym, xi}, p));
      CHECK(step_element(x, y, 3, p) == word_of({y, xmi, ym, xmi, ym, xi}, p));
    }
  }
}

TEST_CASE("identity and first-step closure") {
  const Presentation p(3, 0);
  const auto id = PiecewiseTranslation::build(w("a1 a2", p), w("a1 a2", p), 4, p);
  CHECK(id.is_identity());
  CHECK(id.forward_pieces().empty());
  CHECK_FALSE(id.residual().has_value());
  const auto x = parse_point("a1 a2 a3 (a1 a2)", p);
  CHECK(id.apply(x) == x);
  CHECK(verify_k(id).ok);

  const auto closed = PiecewiseTranslation::build(w("a1 a2", p), w("a3 a2", p), 4, p);
  CHECK(closed.closes_at_first_step());
  CHECK_FALSE(closed.residual().has_value());
  CHECK(closed.exceptional().empty());
  CHECK(closed.steps() == 1);
  const auto report = verify_k(closed);
  CHECK(report.ok);
  CHECK(report.covered_measure == measure(Cylinder{w("a1 a2", p)}, p));
  CHECK(closed.image(Cylinder{w("a1 a2", p)}) == CylinderUnion::of({{w("a3 a2", p)}}, p));
}

TEST_CASE("build rejects bad input") {
  const Presentation p(3, 0);
  CHECK_THROWS_AS(PiecewiseTranslation::build(w("a1", p), w("a2 a1", p), 4, p), ValidationError);
  CHECK_THROWS_AS(PiecewiseTranslation::build(Word(), Word(), 4, p), ValidationError);
  CHECK_THROWS_AS(PiecewiseTranslation::build(w("a1", p), w("a2", p), 0, p), ValidationError);
}

TEST_CASE("apply examples") {
  const Presentation p(3, 0);
  const auto k = PiecewiseTranslation::build(w("a1", p), w("a2", p), 6, p);
  const auto outside = parse_point("a3 (a1 a2)", p);
  CHECK(k.apply(outside) == outside);
  CHECK(format(k.apply(parse_point("a1 a3 (a2 a3)", p)), p) == "(a2 a3)");
  CHECK(format(k.apply(parse_point("(a1 a2)", p)), p) == "(a2 a1)");
  CHECK(format(k.apply(parse_point("(a2 a1)", p)), p) == "(a1 a2)");
  // Deep points are reached by extending the construction on demand.
  const auto deep = parse_point("a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a2 a1 a3 (a1 a2)", p);
  const auto moved = k.apply(deep);
  CHECK(contains(Cylinder{w("a2", p)}, moved));
  CHECK(k.apply(moved) == deep);
}

TEST_CASE("property: k is an involution swapping the two cylinders") {
  Gen gen(42);
  for (const auto &p : test_presentations()) {
    for (int pair = 0; pair < 6; ++pair) {
      const std::size_t m = 1 + gen.below(2);
      const Word x = gen.word(p, m);
      const Word y = gen.word(p, m);
      const auto k = PiecewiseTranslation::build(x, y, 6, p);
      for (int trial = 0; trial < 170; ++trial) {
        // Bias half the points into Omega^x.
        auto point = gen.point(p, 6, 3);
        if (trial % 2 == 0) {
          const auto tail = gen.point(p, 5, 3);
          if (tail.prefix().empty() || tail.prefix().front() != p.inverse(x.back()))
            point = act_point(x, tail, p);
        }
        const auto image = k.apply(point);
        CHECK(k.apply(image) == point);
        if (contains(Cylinder{x}, point))
          CHECK(contains(Cylinder{y}, image));
        if (x != y && contains(Cylinder{y}, point))
          CHECK(contains(Cylinder{x}, image));
        if (const auto expected = apply_by_lookup(k, point))
          CHECK(*expected == image);
      }
    }
  }
}

TEST_CASE("property: verification over small spheres") {
  for (const auto &p : test_presentations()) {
    const unsigned top = p.letters().size() >= 4 ? 2 : 3;
    for (unsigned m = 1; m <= top; ++m) {
      const auto level = sphere(m, p);
      for (const auto &x : level)
        for (const auto &y : level)
          for (std::size_t j : {1, 3, 6}) {
            const auto k = PiecewiseTranslation::build(x, y, j, p);
            const auto report = verify_k(k);
            CHECK_MESSAGE(report.ok, format(x, p) << " -> " << format(y, p) << " J=" << j);
          }
    }
  }
}

TEST_CASE("property: exact images preserve measure") {
  Gen gen(43);
  for (const auto &p : test_presentations())
    for (int trial = 0; trial < 30; ++trial) {
      const std::size_t m = 1 + gen.below(2);
      const Word x = gen.word(p, m);
      const Word y = gen.word(p, m);
      const auto k = PiecewiseTranslation::build(x, y, 6, p);
      CHECK(k.image(Cylinder{x}) == CylinderUnion::of({{y}}, p));
      CHECK(k.image(Cylinder{y}) == CylinderUnion::of({{x}}, p));
      const auto set = gen.union_of(p, 4, 4);
      const auto image = k.image(set);
      CHECK(measure(image, p) == measure(set, p));
      CHECK(k.image(image) == set);
    }
}

TEST_CASE("transitivity on cylinder levels") {
  CHECK(transitivity_check(0, Presentation(3, 0)));
  CHECK(transitivity_check(1, Presentation(3, 0)));
  CHECK(transitivity_check(2, Presentation(1, 1)));
  const auto report = transitivity_report(2, Presentation(0, 2));
  CHECK(report.transitive);
  CHECK(report.pairs_checked == 144);
  CHECK(report.failures.empty());
}
