#pragma once

// Hand-rolled generators for property tests, all driven by fixed seeds.

#include "treefactor/boundary.hpp"
#include "treefactor/group.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace treefactor::testing {

inline const std::vector<Presentation> &test_presentations() {
  static const std::vector<Presentation> all{Presentation(3, 0), Presentation(1, 1),
                                             Presentation(0, 2), Presentation(4, 0)};
  return all;
}

class Gen {
public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  std::size_t below(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }

  Letter letter(const Presentation &p) { return p.letters()[below(p.letters().size())]; }

  // Arbitrary letter sequence, typically not reduced.
  std::vector<Letter> letters(const Presentation &p, std::size_t max_len) {
    std::vector<Letter> out(below(max_len + 1));
    for (auto &l : out)
      l = letter(p);
    return out;
  }

  Word word(const Presentation &p, std::size_t len) {
    Word w;
    while (w.size() < len) {
      const Letter l = letter(p);
      if (w.empty() || l != p.inverse(w.back()))
        w = w.extended(l, p);
    }
    return w;
  }

  Word word_up_to(const Presentation &p, std::size_t max_len) {
    return word(p, below(max_len + 1));
  }

  Word nontrivial_word(const Presentation &p, std::size_t max_len) {
    return word(p, 1 + below(max_len));
  }

  // Eventually periodic point with prefix length <= max_prefix and cycle
  // length in [1, max_cycle]; retries until the junctions are reduced.
  BoundaryPoint point(const Presentation &p, std::size_t max_prefix, std::size_t max_cycle) {
    for (;;) {
      const Word prefix = word_up_to(p, max_prefix);
      const Word cycle = nontrivial_word(p, max_cycle);
      if (cycle.size() >= 1 && cycle.front() == p.inverse(cycle.back()))
        continue;
      if (!prefix.empty() && cycle.front() == p.inverse(prefix.back()))
        continue;
      return BoundaryPoint::make(prefix, cycle, p);
    }
  }

  CylinderUnion union_of(const Presentation &p, std::size_t max_cylinders, std::size_t max_depth) {
    std::vector<Cylinder> cs;
    const std::size_t count = 1 + below(max_cylinders);
    for (std::size_t i = 0; i < count; ++i)
      cs.push_back({word(p, 1 + below(max_depth))});
    return CylinderUnion::of(std::move(cs), p);
  }

  std::mt19937_64 &engine() { return rng_; }

private:
  std::mt19937_64 rng_;
};

inline Word w(const char *text, const Presentation &p) { return parse_word(text, p); }

} // namespace treefactor::testing
