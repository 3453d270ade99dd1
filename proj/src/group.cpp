#include "treefactor/group.hpp"

#include "treefactor/error.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace treefactor {

Presentation::Presentation(unsigned s, unsigned t) : s_(s), t_(t) {
  if (s + 2 * t < 3)
    throw ValidationError("presentation needs s + 2t >= 3 (got s=" + std::to_string(s) +
                          ", t=" + std::to_string(t) + ")");
  if (s + t > 0xffff)
    throw ValidationError("too many generators");
  letters_.reserve(degree());
  for (unsigned i = 1; i <= s; ++i)
    letters_.push_back({static_cast<std::uint16_t>(i), 1});
  for (unsigned j = 1; j <= t; ++j) {
    auto g = static_cast<std::uint16_t>(s + j);
    letters_.push_back({g, 1});
    letters_.push_back({g, -1});
  }
}

void Presentation::validate(Letter l) const {
  if (l.generator < 1 || l.generator > generator_count())
    throw ValidationError("generator index " + std::to_string(l.generator) +
                          " out of range");
  if (l.exponent != 1 && l.exponent != -1)
    throw ValidationError("exponent must be +1 or -1");
  if (is_involution(l.generator) && l.exponent != 1)
    throw ValidationError("involutive generator with exponent -1");
}

Letter Presentation::inverse(Letter l) const {
  if (is_involution(l.generator))
    return l;
  return {l.generator, static_cast<std::int8_t>(-l.exponent)};
}

std::size_t Presentation::index_of(Letter l) const {
  if (is_involution(l.generator))
    return l.generator - 1u;
  return s_ + 2u * (l.generator - s_ - 1u) + (l.exponent == 1 ? 0u : 1u);
}

std::string Presentation::format(Letter l) const {
  if (is_involution(l.generator))
    return "a" + std::to_string(l.generator);
  std::string out = "b" + std::to_string(l.generator - s_);
  if (l.exponent == -1)
    out += '\'';
  return out;
}

Letter Presentation::parse_letter(std::string_view token) const {
  auto fail = [&]() -> Letter {
    throw ValidationError("malformed letter '" + std::string(token) + "'");
  };
  if (token.size() < 2)
    return fail();
  const char kind = token.front();
  bool inverted = token.back() == '\'';
  std::string_view digits = token.substr(1, token.size() - 1 - (inverted ? 1 : 0));
  unsigned index = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || index == 0)
    return fail();
  if (kind == 'a') {
    if (inverted || index > s_)
      throw ValidationError("no involutive generator '" + std::string(token) + "'");
    return {static_cast<std::uint16_t>(index), 1};
  }
  if (kind == 'b') {
    if (index > t_)
      throw ValidationError("no free generator '" + std::string(token) + "'");
    return {static_cast<std::uint16_t>(s_ + index), static_cast<std::int8_t>(inverted ? -1 : 1)};
  }
  return fail();
}

Word Word::prefix(std::size_t k) const {
  return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + static_cast<std::ptrdiff_t>(k)));
}

Word Word::suffix(std::size_t k) const {
  return Word(std::vector<Letter>(letters_.begin() + static_cast<std::ptrdiff_t>(k), letters_.end()));
}

bool Word::has_prefix(const Word &p) const {
  return p.size() <= size() && std::equal(p.begin(), p.end(), letters_.begin());
}

Word Word::extended(Letter l, const Presentation &p) const {
  p.validate(l);
  if (!letters_.empty() && p.inverse(letters_.back()) == l)
    throw ValidationError("extension by " + p.format(l) + " is not reduced");
  std::vector<Letter> out = letters_;
  out.push_back(l);
  return Word(std::move(out));
}

std::strong_ordering operator<=>(const Word &a, const Word &b) {
  if (auto c = a.size() <=> b.size(); c != 0)
    return c;
  return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
}

Word reduce(std::span<const Letter> letters, const Presentation &p) {
  std::vector<Letter> stack;
  stack.reserve(letters.size());
  for (Letter l : letters) {
    p.validate(l);
    if (!stack.empty() && stack.back() == p.inverse(l))
      stack.pop_back();
    else
      stack.push_back(l);
  }
  return Word(std::move(stack));
}

bool is_reduced(std::span<const Letter> letters, const Presentation &p) {
  for (std::size_t i = 0; i < letters.size(); ++i) {
    p.validate(letters[i]);
    if (i > 0 && p.inverse(letters[i - 1]) == letters[i])
      return false;
  }
  return true;
}

Word multiply(const Word &a, const Word &b, const Presentation &p) {
  std::vector<Letter> joined(a.begin(), a.end());
  joined.insert(joined.end(), b.begin(), b.end());
  return reduce(joined, p);
}

Word invert(const Word &a, const Presentation &p) {
  std::vector<Letter> out;
  out.reserve(a.size());
  for (auto it = a.letters().rbegin(); it != a.letters().rend(); ++it)
    out.push_back(p.inverse(*it));
  return reduce(out, p);
}

Word letter_word(Letter l, const Presentation &p) { return Word().extended(l, p); }

std::string format(const Word &w, const Presentation &p) {
  if (w.empty())
    return "e";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i)
      out += ' ';
    out += p.format(w[i]);
  }
  return out;
}

std::vector<Letter> parse_letters(std::string_view text, const Presentation &p) {
  std::vector<Letter> out;
  std::istringstream in{std::string(text)};
  std::string token;
  bool saw_identity = false;
  while (in >> token) {
    if (token == "e") {
      saw_identity = true;
      continue;
    }
    out.push_back(p.parse_letter(token));
  }
  if (out.empty() && !saw_identity)
    throw ValidationError("empty word (use 'e' for the identity)");
  return out;
}

Word parse_word(std::string_view text, const Presentation &p) {
  return reduce(parse_letters(text, p), p);
}

BigInt sphere_size(unsigned m, const Presentation &p) {
  if (m == 0)
    return 1;
  BigInt power;
  mpz_ui_pow_ui(power.get_mpz_t(), p.n(), m - 1);
  return BigInt(p.degree()) * power;
}

void for_each_in_sphere(unsigned m, const Presentation &p,
                        const std::function<void(const Word &)> &visit) {
  const auto &alphabet = p.letters();
  if (m == 0) {
    visit(Word());
    return;
  }
  // Depth-first in canonical order yields lexicographic output.
  std::vector<Word> stack;
  stack.reserve(m * alphabet.size());
  for (auto it = alphabet.rbegin(); it != alphabet.rend(); ++it)
    stack.push_back(letter_word(*it, p));
  while (!stack.empty()) {
    Word w = std::move(stack.back());
    stack.pop_back();
    if (w.size() == m) {
      visit(w);
      continue;
    }
    const Letter forbidden = p.inverse(w.back());
    for (auto it = alphabet.rbegin(); it != alphabet.rend(); ++it)
      if (*it != forbidden)
        stack.push_back(w.extended(*it, p));
  }
}

std::vector<Word> sphere(unsigned m, const Presentation &p, std::uint64_t limit) {
  const BigInt size = sphere_size(m, p);
  if (size > BigInt(std::to_string(limit)))
    throw ResourceLimitError("sphere of radius " + std::to_string(m) + " has " + size.get_str() +
                             " words, above the limit of " + std::to_string(limit));
  std::vector<Word> out;
  out.reserve(size.get_ui());
  for_each_in_sphere(m, p, [&](const Word &w) { out.push_back(w); });
  return out;
}

std::vector<std::vector<int>> cuntz_krieger_matrix(const Presentation &p) {
  const auto &alphabet = p.letters();
  std::vector<std::vector<int>> a(alphabet.size(), std::vector<int>(alphabet.size(), 0));
  for (std::size_t i = 0; i < alphabet.size(); ++i)
    for (std::size_t j = 0; j < alphabet.size(); ++j)
      a[i][j] = alphabet[j] == p.inverse(alphabet[i]) ? 0 : 1;
  return a;
}

std::size_t WordHash::operator()(const Word &w) const noexcept {
  std::size_t h = 0xcbf29ce484222325ull;
  for (Letter l : w) {
    h ^= (static_cast<std::size_t>(l.generator) << 1) | (l.exponent == 1 ? 0u : 1u);
    h *= 0x100000001b3ull;
  }
  return h;
}

} // namespace treefactor
