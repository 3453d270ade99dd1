#pragma once

// The boundary of the tree as an algebra of cylinder sets carrying the exact
// measure nu(Omega^x) = 1/(n+1) * (1/n)^(|x|-1).

#include "treefactor/group.hpp"
#include "treefactor/rational.hpp"

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treefactor {

/// Omega^x: all boundary words beginning with x. The empty base is all of Omega.
struct Cylinder {
  Word base;

  std::size_t depth() const { return base.size(); }
  /// True when this cylinder is inside other (other's base is a prefix of ours).
  bool within(const Cylinder &other) const { return base.has_prefix(other.base); }
  bool disjoint_from(const Cylinder &other) const {
    return !within(other) && !other.within(*this);
  }

  friend bool operator==(const Cylinder &, const Cylinder &) = default;
  friend std::strong_ordering operator<=>(const Cylinder &a, const Cylinder &b) {
    return a.base <=> b.base;
  }
};

Rational measure(const Cylinder &c, const Presentation &p);

/// The cylinders one level down: n of them, or n + 1 below Omega.
std::vector<Cylinder> children(const Cylinder &c, const Presentation &p);

/// A finite union of cylinders in canonical form: the maximal cylinders
/// contained in the set, sorted shortlex. Two unions denote the same set iff
/// they compare equal.
class CylinderUnion {
public:
  CylinderUnion() = default;

  /// Normalizes an arbitrary (possibly overlapping) family.
  static CylinderUnion of(std::vector<Cylinder> cylinders, const Presentation &p);
  static CylinderUnion whole() { return CylinderUnion(std::vector<Cylinder>{Cylinder{}}); }

  const std::vector<Cylinder> &cylinders() const { return cylinders_; }
  bool empty() const { return cylinders_.empty(); }
  std::size_t size() const { return cylinders_.size(); }
  auto begin() const { return cylinders_.begin(); }
  auto end() const { return cylinders_.end(); }

  friend bool operator==(const CylinderUnion &, const CylinderUnion &) = default;

private:
  explicit CylinderUnion(std::vector<Cylinder> c) : cylinders_(std::move(c)) {}
  std::vector<Cylinder> cylinders_;
};

Rational measure(const CylinderUnion &u, const Presentation &p);

CylinderUnion unite(const CylinderUnion &a, const CylinderUnion &b, const Presentation &p);
CylinderUnion intersect(const CylinderUnion &a, const CylinderUnion &b, const Presentation &p);
/// a \ b, refining cylinders of a where b cuts into them.
CylinderUnion subtract(const CylinderUnion &a, const CylinderUnion &b, const Presentation &p);
/// inner ⊆ outer.
bool is_subset(const CylinderUnion &inner, const CylinderUnion &outer, const Presentation &p);
/// Every cylinder of u refined to exactly the given depth (those deeper are kept).
std::vector<Cylinder> refine_to_depth(const CylinderUnion &u, std::size_t depth,
                                      const Presentation &p);

/// An eventually periodic point of the boundary: prefix followed by the cycle
/// repeated forever. Always normalized to the shortest prefix and a primitive
/// cycle, so equality of points is equality of representations.
class BoundaryPoint {
public:
  /// Throws ValidationError if the cycle is empty or the infinite word is not
  /// reduced at the prefix/cycle or cycle/cycle junction.
  static BoundaryPoint make(const Word &prefix, const Word &cycle, const Presentation &p);

  const Word &prefix() const { return prefix_; }
  const Word &cycle() const { return cycle_; }

  Letter letter(std::size_t i) const;
  /// The first k letters.
  Word truncation(std::size_t k) const;
  /// Index of the first letter where the two points differ; nullopt if equal.
  friend std::optional<std::size_t> first_difference(const BoundaryPoint &a,
                                                     const BoundaryPoint &b);

  friend bool operator==(const BoundaryPoint &, const BoundaryPoint &) = default;
  /// Lexicographic order of the infinite words.
  friend std::strong_ordering operator<=>(const BoundaryPoint &a, const BoundaryPoint &b);

private:
  BoundaryPoint(Word prefix, Word cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {}
  Word prefix_;
  Word cycle_;
};

bool contains(const Cylinder &c, const BoundaryPoint &w);
bool contains(const CylinderUnion &u, const BoundaryPoint &w);

/// The depth-m cylinder containing the point.
Cylinder locate(const BoundaryPoint &w, std::size_t m);

/// "a3 (a1 a2)": prefix tokens then the cycle in parentheses.
std::string format(const BoundaryPoint &w, const Presentation &p);
BoundaryPoint parse_point(std::string_view text, const Presentation &p);

} // namespace treefactor
