#include "support.hpp"

#include "treefactor/boundary.hpp"
#include "treefactor/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace treefactor;
using treefactor::testing::Gen;
using treefactor::testing::test_presentations;
using treefactor::testing::w;

namespace {

// A union seen through its depth-d shadow: the depth-d words lying inside it.
std::set<Word> shadow(const CylinderUnion &u, unsigned d, const Presentation &p) {
  std::set<Word> out;
  for (const auto &x : sphere(d, p))
    for (const auto &c : u)
      if (x.has_prefix(c.base)) {
        out.insert(x);
        break;
      }
  return out;
}

Rational formula(std::size_t len, const Presentation &p) {
  if (len == 0)
    return 1;
  Rational r(1, p.degree());
  for (std::size_t i = 1; i < len; ++i)
    r /= p.n();
  return r;
}

} // namespace

TEST_CASE("cylinder measure examples") {
  const Presentation p(3, 0);
  CHECK(measure(Cylinder{w("a1", p)}, p) == Rational(1, 3));
  CHECK(measure(Cylinder{w("a1 a2", p)}, p) == Rational(1, 6));
  CHECK(measure(Cylinder{}, p) == 1);
  CHECK(measure(CylinderUnion::whole(), p) == 1);
  CHECK(measure(CylinderUnion(), p) == 0);
}

TEST_CASE("children examples") {
  const Presentation p(3, 0);
  const auto kids = children(Cylinder{w("a1", p)}, p);
  REQUIRE(kids.size() == 2);
  CHECK(format(kids[0].base, p) == "a1 a2");
  CHECK(format(kids[1].base, p) == "a1 a3");
  CHECK(children(Cylinder{}, p).size() == 3);
  CHECK(measure(kids[0], p) + measure(kids[1], p) == Rational(1, 3));
}

TEST_CASE("property: measure matches the closed form and is additive") {
  for (const auto &p : test_presentations())
    for (unsigned m = 0; m <= 5; ++m) {
      Rational total = 0;
      for (const auto &x : sphere(m, p)) {
        const Cylinder c{x};
        CHECK(measure(c, p) == formula(m, p));
        total += measure(c, p);
        Rational kids = 0;
        for (const auto &k : children(c, p))
          kids += measure(k, p);
        CHECK(kids == measure(c, p));
      }
      CHECK(total == 1);
    }
}

TEST_CASE("union normalization") {
  const Presentation p(3, 0);
  // Complete sibling families merge into the parent.
  const auto merged = CylinderUnion::of({{w("a1 a2", p)}, {w("a1 a3", p)}}, p);
  REQUIRE(merged.size() == 1);
  CHECK(format(merged.cylinders()[0].base, p) == "a1");
  // Nested cylinders collapse to the outer one.
  const auto nested = CylinderUnion::of({{w("a1", p)}, {w("a1 a2 a3", p)}}, p);
  REQUIRE(nested.size() == 1);
  // Everything merges to the whole space.
  CHECK(CylinderUnion::of({{w("a1", p)}, {w("a2", p)}, {w("a3", p)}}, p) ==
        CylinderUnion::whole());
  CHECK(CylinderUnion::of({}, p).empty());
}

TEST_CASE("property: set algebra agrees with a truncation oracle") {
  Gen gen(21);
  for (const auto &p : test_presentations()) {
    const unsigned d = 5;
    for (int trial = 0; trial < 40; ++trial) {
      const auto a = gen.union_of(p, 5, 4);
      const auto b = gen.union_of(p, 5, 4);
      const auto sa = shadow(a, d, p);
      const auto sb = shadow(b, d, p);

      std::set<Word> u = sa, i, s;
      u.insert(sb.begin(), sb.end());
      for (const auto &x : sa)
        (sb.count(x) ? i : s).insert(x);

      CHECK(shadow(unite(a, b, p), d, p) == u);
      CHECK(shadow(intersect(a, b, p), d, p) == i);
      CHECK(shadow(subtract(a, b, p), d, p) == s);
      CHECK(is_subset(a, b, p) == std::includes(sb.begin(), sb.end(), sa.begin(), sa.end()));

      CHECK(measure(a, p) == Rational(static_cast<long>(sa.size())) * formula(d, p));
      CHECK(measure(unite(a, b, p), p) + measure(intersect(a, b, p), p) ==
            measure(a, p) + measure(b, p));
      CHECK(unite(a, b, p) == unite(b, a, p));
      CHECK(CylinderUnion::of(a.cylinders(), p) == a);

      // Canonical form: pairwise disjoint, sorted.
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = x + 1; y < a.size(); ++y) {
          CHECK(a.cylinders()[x].disjoint_from(a.cylinders()[y]));
          CHECK(a.cylinders()[x] < a.cylinders()[y]);
        }

      const auto fine = refine_to_depth(a, d, p);
      std::set<Word> fine_words;
      for (const auto &c : fine) {
        CHECK(c.depth() == d);
        fine_words.insert(c.base);
      }
      CHECK(fine_words == sa);
    }
  }
}

TEST_CASE("boundary point normalization and parsing") {
  const Presentation p(3, 0);
  const auto x = parse_point("a3 (a1 a2)", p);
  CHECK(format(x, p) == "a3 (a1 a2)");
  // Prefix letters that repeat the cycle are absorbed.
  const auto y = parse_point("a1 a2 (a1 a2)", p);
  CHECK(format(y, p) == "(a1 a2)");
  CHECK(parse_point("a2 (a1 a2)", p) == parse_point("(a2 a1)", p));
  // Non-primitive cycles shrink.
  CHECK(parse_point("(a1 a2 a1 a2)", p) == parse_point("(a1 a2)", p));
  CHECK(format(parse_point("e (a1 a2)", p), p) == "(a1 a2)");

  CHECK_THROWS_AS(parse_point("a1 a2", p), ValidationError);
  CHECK_THROWS_AS(parse_point("a1 (a1 a2)", p), ValidationError);
  CHECK_THROWS_AS(parse_point("(a1 a2 a1)", p), ValidationError);
  CHECK_THROWS_AS(parse_point("(a3)", p), ValidationError);
  CHECK_THROWS_AS(parse_point("a1 ()", p), ValidationError);

  const Presentation q(0, 2);
  CHECK(format(parse_point("(b1)", q), q) == "(b1)");
  CHECK(format(parse_point("b1 b1 (b1)", q), q) == "(b1)");
  CHECK_THROWS_AS(parse_point("b1' (b1)", q), ValidationError);
}

TEST_CASE("locate examples") {
  const Presentation p(3, 0);
  CHECK(format(locate(parse_point("(a1 a2)", p), 3).base, p) == "a1 a2 a1");
  CHECK(format(locate(parse_point("a3 (a1 a2)", p), 1).base, p) == "a3");
  CHECK(locate(parse_point("a3 (a1 a2)", p), 0).base.empty());
}

TEST_CASE("property: locate nests and agrees with letters") {
  Gen gen(22);
  for (const auto &p : test_presentations())
    for (int trial = 0; trial < 100; ++trial) {
      const auto x = gen.point(p, 4, 4);
      for (std::size_t m = 0; m < 12; ++m) {
        const auto here = locate(x, m);
        const auto next = locate(x, m + 1);
        CHECK(next.within(here));
        CHECK(next.base[m] == x.letter(m));
        CHECK(is_reduced(next.base.letters(), p));
        CHECK(contains(here, x));
      }
      CHECK(parse_point(format(x, p), p) == x);
    }
}

TEST_CASE("property: first difference of distinct points") {
  Gen gen(23);
  for (const auto &p : test_presentations())
    for (int trial = 0; trial < 200; ++trial) {
      const auto a = gen.point(p, 3, 3);
      const auto b = gen.point(p, 3, 3);
      const auto diff = first_difference(a, b);
      if (a == b) {
        CHECK_FALSE(diff.has_value());
        continue;
      }
      REQUIRE(diff.has_value());
      CHECK(a.truncation(*diff) == b.truncation(*diff));
      CHECK(a.letter(*diff) != b.letter(*diff));
      CHECK((a < b) == (a.letter(*diff) < b.letter(*diff)));
    }
}

TEST_CASE("union membership") {
  const Presentation p(3, 0);
  const auto u = CylinderUnion::of({{w("a1 a2", p)}, {w("a3", p)}}, p);
  CHECK(contains(u, parse_point("(a1 a2)", p)));
  CHECK(contains(u, parse_point("a3 (a1 a2)", p)));
  CHECK_FALSE(contains(u, parse_point("a1 a3 (a1 a2)", p)));
}
