#pragma once

// Left action of the group on boundary points and cylinders, and the exact
// Radon-Nikodym cocycle.
//
// Convention: the value attached to a cell Omega^y for an element g is
// nu(g Omega^y) / nu(Omega^y). Reading nu∘g as the measure E -> nu(gE), this
// is d(nu∘g)/d(nu) on the cell. For a generator g with x = g·e, the table of
// g^-1 is constantly n on Omega^x.

#include "treefactor/boundary.hpp"
#include "treefactor/group.hpp"
#include "treefactor/rational.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace treefactor {

BoundaryPoint act_point(const Word &g, const BoundaryPoint &w, const Presentation &p);

/// Exact image g·Omega^x as a canonical cylinder union.
CylinderUnion act_cylinder(const Word &g, const Cylinder &c, const Presentation &p);
CylinderUnion act_union(const Word &g, const CylinderUnion &u, const Presentation &p);

/// True when g·Omega^c is the single cylinder Omega^{gc}, i.e. reducing g·c
/// does not consume all of c. Always the case when |c| > |g|.
bool translates_cylinder(const Word &g, const Cylinder &c, const Presentation &p);

/// log_n of the (constant) RN value of g on a cylinder that g translates:
/// |y| - |g y|. Throws ValidationError otherwise.
long rn_exponent(const Word &g, const Cylinder &cell, const Presentation &p);

struct RNCell {
  Cylinder cell;
  long exponent = 0;
  Rational value;
};

/// RN values of one group element over the depth-m cylinder partition.
class RNTable {
public:
  RNTable(Word element, std::size_t depth, std::vector<RNCell> cells)
      : element_(std::move(element)), depth_(depth), cells_(std::move(cells)) {}

  const Word &element() const { return element_; }
  std::size_t depth() const { return depth_; }
  const std::vector<RNCell> &cells() const { return cells_; }

  /// Value on a cylinder: the cell containing it, or the common value of the
  /// cells inside it. nullopt when the value is not constant there.
  std::optional<long> exponent_on(const Cylinder &c) const;

private:
  Word element_;
  std::size_t depth_;
  std::vector<RNCell> cells_;
};

/// Throws ValidationError unless depth > |g|, ResourceLimitError when the
/// depth-m sphere exceeds limit.
RNTable rn_table(const Word &g, std::size_t depth, const Presentation &p,
                 std::uint64_t limit = kDefaultSphereLimit);

/// Boundary fixed points of g among eventually periodic points.
///
/// Writing g = u c u^-1 with c cyclically reduced: if c is a single involutive
/// letter, g flips an edge and fixes nothing; otherwise the fixed points are
/// u·ccc... and u·c^-1 c^-1 .... Throws ValidationError for g = e.
std::vector<BoundaryPoint> fixed_points(const Word &g, const Presentation &p);

/// Splits g into (u, c) with g = u c u^-1 and c cyclically reduced.
std::pair<Word, Word> cyclic_core(const Word &g, const Presentation &p);

} // namespace treefactor
