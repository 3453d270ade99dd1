#include "support.hpp"

#include "treefactor/error.hpp"
#include "treefactor/sampler.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace treefactor;
using treefactor::testing::test_presentations;
using treefactor::testing::w;

namespace {

double bernoulli_sigma(double prob, std::size_t n) {
  return std::sqrt(prob * (1 - prob) / static_cast<double>(n));
}

} // namespace

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafull);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ull);
  SplitMix64 bounded(7);
  for (int i = 0; i < 1000; ++i)
    CHECK(bounded.below(3) < 3);
}

TEST_CASE("samples are reduced words of the requested depth") {
  for (const auto &p : test_presentations()) {
    const auto batch = sample(p, 6, 2000, 99);
    CHECK(batch.count() == 2000);
    for (std::size_t i = 0; i < batch.count(); ++i)
      CHECK(batch.word(i).size() == 6);
  }
}

TEST_CASE("sampling is deterministic and shard independent") {
  const Presentation p(1, 1);
  const auto a = sample(p, 5, 10007, 3);
  CHECK(a == sample(p, 5, 10007, 3));
  CHECK(a == sample(p, 5, 10007, 3, 4));
  CHECK(a == sample(p, 5, 10007, 3, 7));
  CHECK_FALSE(a == sample(p, 5, 10007, 4));
  // A prefix of a larger run is the smaller run.
  const auto small = sample(p, 5, 100, 3);
  for (std::size_t i = 0; i < small.count(); ++i)
    CHECK(small.word(i) == a.word(i));
}

TEST_CASE("sample input errors") {
  const Presentation p(3, 0);
  CHECK_THROWS_AS(sample(p, 0, 10, 1), ValidationError);
  CHECK_THROWS_AS(sample(p, 3, 0, 1), ValidationError);
  CHECK_THROWS_AS(sample(p, 10, 1000, 1, 1, 100), ResourceLimitError);
  const auto batch = sample(p, 2, 10, 1);
  CHECK_THROWS_AS(batch.hits(Cylinder{w("a1 a2 a1", p)}), ValidationError);
}

TEST_CASE("frequency of a first-level cylinder is within 3 sigma") {
  const Presentation p(3, 0);
  const std::size_t n = 1'000'000;
  const auto batch = sample(p, 2, n, 20240501);
  const double f = batch.frequency(Cylinder{w("a1", p)});
  CHECK(std::abs(f - 1.0 / 3) < 3 * bernoulli_sigma(1.0 / 3, n));
}

TEST_CASE("property: cell frequencies match the exact measure") {
  for (const auto &p : test_presentations()) {
    const std::size_t n = 200'000;
    const auto batch = sample(p, 3, n, 17);
    for (unsigned d = 1; d <= 3; ++d) {
      const auto chi = chi_square(batch, d);
      CHECK(chi.dof + 1 == sphere(d, p).size());
      CHECK(chi.statistic < chi.quantile_999);
    }
    std::uint64_t total = 0;
    for (const auto &x : sphere(2, p))
      total += batch.hits(Cylinder{x});
    CHECK(total == n);
  }
}

TEST_CASE("empirical RN values agree with the exact ones") {
  const Presentation p(3, 0);
  const auto batch = sample(p, 4, 1'000'000, 5);
  const auto rows = empirical_rn(w("a1", p), batch, 1);
  REQUIRE(rows.size() == 3);
  for (const auto &row : rows) {
    CHECK(std::abs(row.estimate - row.exact.get_d()) < 3 * row.sigma);
    if (format(row.cell.base, p) == "a2")
      CHECK(row.exact == Rational(1, 2));
    if (format(row.cell.base, p) == "a1")
      CHECK(row.exact == 2);
  }
  for (const auto &row : empirical_rn(Word(), batch, 2)) {
    CHECK(row.exact == 1);
    CHECK(row.estimate == 1.0);
  }
  CHECK_THROWS_AS(empirical_rn(w("a1 a2 a3", p), batch, 1), ValidationError);
}

TEST_CASE("pushforward through a swap preserves frequencies") {
  const Presentation p(3, 0);
  const std::size_t n = 300'000;
  const auto batch = sample(p, 4, n, 8);
  const auto k = PiecewiseTranslation::build(w("a1", p), w("a2", p), 6, p);
  const auto moved = pushforward(k, batch);
  CHECK(moved.count() == n);
  CHECK(moved.hits(Cylinder{w("a2", p)}) == batch.hits(Cylinder{w("a1", p)}));
  CHECK(moved.hits(Cylinder{w("a1", p)}) == batch.hits(Cylinder{w("a2", p)}));
  CHECK(moved.hits(Cylinder{w("a3", p)}) == batch.hits(Cylinder{w("a3", p)}));
  const double f = moved.frequency(Cylinder{w("a2", p)});
  CHECK(std::abs(f - 1.0 / 3) < 3 * bernoulli_sigma(1.0 / 3, n));
  CHECK(chi_square(moved, 3).statistic < chi_square(moved, 3).quantile_999);
  CHECK(pushforward(k, moved) == batch);
}

TEST_CASE("csv export has one word per line") {
  const Presentation p(3, 0);
  const auto batch = sample(p, 3, 5, 1);
  std::istringstream in(to_csv(batch));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    CHECK(parse_word(line, p) == batch.word(lines));
    ++lines;
  }
  CHECK(lines == 5);
}
