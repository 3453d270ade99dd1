#pragma once

// Reduced-word arithmetic in the free product of s copies of Z/2 and t copies
// of Z, and enumeration of its Cayley tree (homogeneous of degree s + 2t).

#include "treefactor/rational.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace treefactor {

/// One generator or its inverse. Generators 1..s are involutions and always
/// carry exponent +1; generators s+1..s+t are free.
///
/// Ordering is the canonical letter order a_1 < ... < a_s < b_1 < b_1' < ...
/// < b_t < b_t', which does not depend on s.
struct Letter {
  std::uint16_t generator = 1;
  std::int8_t exponent = 1;

  friend bool operator==(const Letter &, const Letter &) = default;
  friend std::strong_ordering operator<=>(const Letter &a, const Letter &b) {
    if (auto c = a.generator <=> b.generator; c != 0)
      return c;
    return b.exponent <=> a.exponent; // +1 before -1
  }
};

class BoundaryPoint;

class Presentation {
public:
  /// Throws ValidationError unless s + 2t >= 3.
  Presentation(unsigned s, unsigned t);

  unsigned involutions() const { return s_; }
  unsigned free_generators() const { return t_; }
  /// Branching number n = s + 2t - 1.
  unsigned n() const { return s_ + 2 * t_ - 1; }
  /// Tree degree n + 1 = s + 2t; also the number of letters.
  unsigned degree() const { return s_ + 2 * t_; }
  unsigned generator_count() const { return s_ + t_; }

  bool is_involution(std::uint16_t generator) const { return generator <= s_; }
  /// Throws ValidationError for an out-of-range generator or a non-normalized exponent.
  void validate(Letter l) const;
  Letter inverse(Letter l) const;

  /// All n + 1 letters in canonical order.
  const std::vector<Letter> &letters() const { return letters_; }
  /// Position of a letter in canonical order.
  std::size_t index_of(Letter l) const;

  /// a1, b2, b2' ...
  std::string format(Letter l) const;
  Letter parse_letter(std::string_view token) const;

  friend bool operator==(const Presentation &a, const Presentation &b) {
    return a.s_ == b.s_ && a.t_ == b.t_;
  }

private:
  unsigned s_;
  unsigned t_;
  std::vector<Letter> letters_;
};

/// A reduced word. Immutable value with structural equality; the empty word
/// is the identity e.
///
/// Comparison is shortlex: shorter words first, then lexicographic in the
/// canonical letter order.
class Word {
public:
  Word() = default;

  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  const Letter &operator[](std::size_t i) const { return letters_[i]; }
  const Letter &front() const { return letters_.front(); }
  const Letter &back() const { return letters_.back(); }
  auto begin() const { return letters_.begin(); }
  auto end() const { return letters_.end(); }
  std::span<const Letter> letters() const { return letters_; }

  /// First k letters (k <= size()).
  Word prefix(std::size_t k) const;
  /// Letters from position k onward.
  Word suffix(std::size_t k) const;
  bool has_prefix(const Word &p) const;

  /// This word followed by l; throws ValidationError if that is not reduced.
  Word extended(Letter l, const Presentation &p) const;

  friend bool operator==(const Word &, const Word &) = default;
  friend std::strong_ordering operator<=>(const Word &a, const Word &b);

  friend Word reduce(std::span<const Letter>, const Presentation &);
  friend class BoundaryPoint;

private:
  explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}
  std::vector<Letter> letters_;
};

/// Free-product normal form. Validates every letter.
Word reduce(std::span<const Letter> letters, const Presentation &p);
Word multiply(const Word &a, const Word &b, const Presentation &p);
Word invert(const Word &a, const Presentation &p);
/// Single-letter word.
Word letter_word(Letter l, const Presentation &p);
bool is_reduced(std::span<const Letter> letters, const Presentation &p);

/// Space-separated tokens, "e" for the identity.
std::string format(const Word &w, const Presentation &p);
/// Parses the format() form and reduces. Throws ValidationError.
Word parse_word(std::string_view text, const Presentation &p);
/// Tokens as letters without reduction.
std::vector<Letter> parse_letters(std::string_view text, const Presentation &p);

/// Default bound on the size of an enumerated sphere.
inline constexpr std::uint64_t kDefaultSphereLimit = 10'000'000;

/// N_m = (n+1) n^(m-1), N_0 = 1.
BigInt sphere_size(unsigned m, const Presentation &p);

/// All reduced words of length m, lexicographic in canonical letter order.
/// Throws ResourceLimitError when sphere_size(m) exceeds limit.
std::vector<Word> sphere(unsigned m, const Presentation &p,
                         std::uint64_t limit = kDefaultSphereLimit);

/// Calls visit(w) for every reduced word of length m in sphere() order,
/// without materializing the sphere.
void for_each_in_sphere(unsigned m, const Presentation &p,
                        const std::function<void(const Word &)> &visit);

/// The transition matrix of the tree's boundary shift: rows and columns in
/// canonical letter order, entry 1 iff the column letter may follow the row
/// letter in a reduced word.
std::vector<std::vector<int>> cuntz_krieger_matrix(const Presentation &p);

struct WordHash {
  std::size_t operator()(const Word &w) const noexcept;
};

} // namespace treefactor
