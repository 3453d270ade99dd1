#pragma once

// Finite partial maps of the boundary that act on each of finitely many
// cylinders by a single group element. Composition, inversion and
// restriction stay exact, which is what witness construction needs.

#include "treefactor/action.hpp"
#include "treefactor/boundary.hpp"
#include "treefactor/full_group.hpp"
#include "treefactor/group.hpp"

#include <vector>

namespace treefactor {

/// Omega^cell is carried onto Omega^{element·cell}.
struct MapCell {
  Cylinder cell;
  Word element;
};

class PiecewiseMap {
public:
  PiecewiseMap() = default;

  /// Left multiplication by h on a set; cells are refined until h translates each.
  static PiecewiseMap translation(const Word &h, const CylinderUnion &on, const Presentation &p);
  /// k restricted to a set: its materialized pieces on both sides plus the
  /// identity off Omega^x ∪ Omega^y. The residual cylinders are left out.
  static PiecewiseMap from_translation(const PiecewiseTranslation &k, const CylinderUnion &on);

  const std::vector<MapCell> &cells() const { return cells_; }
  bool empty() const { return cells_.empty(); }

  CylinderUnion domain(const Presentation &p) const;
  CylinderUnion image(const Presentation &p) const;

  /// Cells (or parts of cells) lying in the set.
  PiecewiseMap restricted_to(const CylinderUnion &set, const Presentation &p) const;
  /// Keeps the part of the domain whose image lies in the set.
  PiecewiseMap with_image_in(const CylinderUnion &set, const Presentation &p) const;
  /// next ∘ this, defined where this lands in next's domain.
  PiecewiseMap then(const PiecewiseMap &next, const Presentation &p) const;
  PiecewiseMap inverse(const Presentation &p) const;

private:
  explicit PiecewiseMap(std::vector<MapCell> cells) : cells_(std::move(cells)) {}
  std::vector<MapCell> cells_;
};

} // namespace treefactor
