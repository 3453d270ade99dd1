#include "treefactor/boundary.hpp"

#include "treefactor/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace treefactor {

Rational measure(const Cylinder &c, const Presentation &p) {
  if (c.base.empty())
    return 1;
  Rational r = rational_power(p.n(), -static_cast<long>(c.depth() - 1));
  r /= p.degree();
  return r;
}

std::vector<Cylinder> children(const Cylinder &c, const Presentation &p) {
  std::vector<Cylinder> out;
  out.reserve(p.degree());
  for (Letter l : p.letters()) {
    if (!c.base.empty() && l == p.inverse(c.base.back()))
      continue;
    out.push_back({c.base.extended(l, p)});
  }
  return out;
}

CylinderUnion CylinderUnion::of(std::vector<Cylinder> cylinders, const Presentation &p) {
  std::set<Cylinder> kept;
  std::sort(cylinders.begin(), cylinders.end());
  for (auto &c : cylinders) {
    bool covered = false;
    for (std::size_t k = 0; k <= c.depth() && !covered; ++k)
      covered = kept.contains(Cylinder{c.base.prefix(k)});
    if (!covered)
      kept.insert(std::move(c));
  }

  // Replace every complete family of siblings by its parent, deepest first.
  std::size_t depth = kept.empty() ? 0 : kept.rbegin()->depth();
  for (; depth > 0; --depth) {
    std::map<Word, std::size_t> siblings;
    for (const auto &c : kept)
      if (c.depth() == depth)
        ++siblings[c.base.prefix(depth - 1)];
    for (const auto &[parent, count] : siblings) {
      const std::size_t full = parent.empty() ? p.degree() : p.n();
      if (count != full)
        continue;
      for (auto &child : children(Cylinder{parent}, p))
        kept.erase(child);
      kept.insert(Cylinder{parent});
    }
  }
  return CylinderUnion(std::vector<Cylinder>(kept.begin(), kept.end()));
}

Rational measure(const CylinderUnion &u, const Presentation &p) {
  Rational total = 0;
  for (const auto &c : u)
    total += measure(c, p);
  return total;
}

CylinderUnion unite(const CylinderUnion &a, const CylinderUnion &b, const Presentation &p) {
  std::vector<Cylinder> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  return CylinderUnion::of(std::move(all), p);
}

CylinderUnion intersect(const CylinderUnion &a, const CylinderUnion &b, const Presentation &p) {
  std::vector<Cylinder> out;
  for (const auto &x : a)
    for (const auto &y : b) {
      if (x.within(y))
        out.push_back(x);
      else if (y.within(x))
        out.push_back(y);
    }
  return CylinderUnion::of(std::move(out), p);
}

namespace {

void subtract_from_cylinder(const Cylinder &c, const std::vector<const Cylinder *> &cuts,
                            const Presentation &p, std::vector<Cylinder> &out) {
  std::vector<const Cylinder *> inside;
  for (const Cylinder *cut : cuts) {
    if (c.within(*cut))
      return;
    if (cut->within(c))
      inside.push_back(cut);
  }
  if (inside.empty()) {
    out.push_back(c);
    return;
  }
  for (const auto &child : children(c, p))
    subtract_from_cylinder(child, inside, p, out);
}

} // namespace

CylinderUnion subtract(const CylinderUnion &a, const CylinderUnion &b, const Presentation &p) {
  std::vector<const Cylinder *> cuts;
  for (const auto &c : b)
    cuts.push_back(&c);
  std::vector<Cylinder> out;
  for (const auto &c : a)
    subtract_from_cylinder(c, cuts, p, out);
  return CylinderUnion::of(std::move(out), p);
}

bool is_subset(const CylinderUnion &inner, const CylinderUnion &outer, const Presentation &p) {
  return subtract(inner, outer, p).empty();
}

std::vector<Cylinder> refine_to_depth(const CylinderUnion &u, std::size_t depth,
                                      const Presentation &p) {
  std::vector<Cylinder> out;
  std::vector<Cylinder> work(u.begin(), u.end());
  while (!work.empty()) {
    Cylinder c = std::move(work.back());
    work.pop_back();
    if (c.depth() >= depth) {
      out.push_back(std::move(c));
      continue;
    }
    for (auto &child : children(c, p))
      work.push_back(std::move(child));
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::size_t primitive_period(const Word &cycle) {
  const std::size_t len = cycle.size();
  for (std::size_t d = 1; d < len; ++d) {
    if (len % d != 0)
      continue;
    bool periodic = true;
    for (std::size_t i = d; i < len && periodic; ++i)
      periodic = cycle[i] == cycle[i - d];
    if (periodic)
      return d;
  }
  return len;
}

Word rotate_right(const Word &cycle, const Presentation &p) {
  Word out = letter_word(cycle.back(), p);
  for (std::size_t i = 0; i + 1 < cycle.size(); ++i)
    out = out.extended(cycle[i], p);
  return out;
}

} // namespace

BoundaryPoint BoundaryPoint::make(const Word &prefix, const Word &cycle, const Presentation &p) {
  if (cycle.empty())
    throw ValidationError("boundary point needs a nonempty cycle");
  if (!prefix.empty() && p.inverse(prefix.back()) == cycle.front())
    throw ValidationError("prefix/cycle junction is not reduced");
  if (p.inverse(cycle.back()) == cycle.front())
    throw ValidationError("cycle is not cyclically reduced");

  Word c = cycle.prefix(primitive_period(cycle));
  Word pre = prefix;
  while (!pre.empty() && pre.back() == c.back()) {
    c = rotate_right(c, p);
    pre = pre.prefix(pre.size() - 1);
  }
  return BoundaryPoint(std::move(pre), std::move(c));
}

Letter BoundaryPoint::letter(std::size_t i) const {
  if (i < prefix_.size())
    return prefix_[i];
  return cycle_[(i - prefix_.size()) % cycle_.size()];
}

Word BoundaryPoint::truncation(std::size_t k) const {
  if (k <= prefix_.size())
    return prefix_.prefix(k);
  std::vector<Letter> letters;
  letters.reserve(k);
  for (std::size_t i = 0; i < k; ++i)
    letters.push_back(letter(i));
  return Word(std::move(letters));
}

std::optional<std::size_t> first_difference(const BoundaryPoint &a, const BoundaryPoint &b) {
  if (a == b)
    return std::nullopt;
  // Distinct eventually periodic words differ before max prefix + lcm(periods).
  const std::size_t bound = std::max(a.prefix_.size(), b.prefix_.size()) +
                            std::lcm(a.cycle_.size(), b.cycle_.size());
  for (std::size_t i = 0; i < bound; ++i)
    if (a.letter(i) != b.letter(i))
      return i;
  return bound; // unreachable for normalized points
}

std::strong_ordering operator<=>(const BoundaryPoint &a, const BoundaryPoint &b) {
  const auto diff = first_difference(a, b);
  if (!diff)
    return std::strong_ordering::equal;
  return a.letter(*diff) <=> b.letter(*diff);
}

bool contains(const Cylinder &c, const BoundaryPoint &w) {
  for (std::size_t i = 0; i < c.depth(); ++i)
    if (w.letter(i) != c.base[i])
      return false;
  return true;
}

bool contains(const CylinderUnion &u, const BoundaryPoint &w) {
  return std::any_of(u.begin(), u.end(), [&](const Cylinder &c) { return contains(c, w); });
}

Cylinder locate(const BoundaryPoint &w, std::size_t m) { return {w.truncation(m)}; }

std::string format(const BoundaryPoint &w, const Presentation &p) {
  std::string out;
  if (!w.prefix().empty())
    out = format(w.prefix(), p) + " ";
  return out + "(" + format(w.cycle(), p) + ")";
}

BoundaryPoint parse_point(std::string_view text, const Presentation &p) {
  const auto open = text.find('(');
  const auto close = text.rfind(')');
  if (open == std::string_view::npos || close == std::string_view::npos || close < open)
    throw ValidationError("boundary point must look like 'prefix (cycle)'");
  if (text.substr(close + 1).find_first_not_of(" \t") != std::string_view::npos)
    throw ValidationError("trailing text after cycle");
  std::string_view head = text.substr(0, open);
  Word prefix;
  if (head.find_first_not_of(" \t") != std::string_view::npos) {
    auto letters = parse_letters(head, p);
    if (!is_reduced(letters, p))
      throw ValidationError("prefix is not reduced");
    prefix = reduce(letters, p);
  }
  auto cycle_letters = parse_letters(text.substr(open + 1, close - open - 1), p);
  if (!is_reduced(cycle_letters, p))
    throw ValidationError("cycle is not reduced");
  return BoundaryPoint::make(prefix, reduce(cycle_letters, p), p);
}

} // namespace treefactor
