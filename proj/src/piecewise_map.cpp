#include "treefactor/piecewise_map.hpp"

#include <algorithm>

namespace treefactor {

namespace {

void add_translated(const Word &h, const Cylinder &c, const Presentation &p,
                    std::vector<MapCell> &out) {
  if (translates_cylinder(h, c, p)) {
    out.push_back({c, h});
    return;
  }
  for (const auto &child : children(c, p))
    add_translated(h, child, p, out);
}

} // namespace

PiecewiseMap PiecewiseMap::translation(const Word &h, const CylinderUnion &on,
                                       const Presentation &p) {
  std::vector<MapCell> out;
  for (const auto &c : on)
    add_translated(h, c, p, out);
  return PiecewiseMap(std::move(out));
}

PiecewiseMap PiecewiseMap::from_translation(const PiecewiseTranslation &k,
                                            const CylinderUnion &on) {
  const Presentation &p = k.presentation();
  std::vector<MapCell> cells;
  if (k.is_identity())
    return translation(Word(), on, p);
  for (const auto &piece : k.forward_pieces())
    cells.push_back({piece.domain, piece.element});
  for (const auto &piece : k.backward_pieces())
    cells.push_back({piece.domain, piece.element});
  for (const auto &rest : subtract(CylinderUnion::whole(),
                                   CylinderUnion::of({Cylinder{k.x()}, Cylinder{k.y()}}, p), p))
    cells.push_back({rest, Word()});
  return PiecewiseMap(std::move(cells)).restricted_to(on, p);
}

CylinderUnion PiecewiseMap::domain(const Presentation &p) const {
  std::vector<Cylinder> out;
  for (const auto &c : cells_)
    out.push_back(c.cell);
  return CylinderUnion::of(std::move(out), p);
}

CylinderUnion PiecewiseMap::image(const Presentation &p) const {
  std::vector<Cylinder> out;
  for (const auto &c : cells_)
    out.push_back({multiply(c.element, c.cell.base, p)});
  return CylinderUnion::of(std::move(out), p);
}

PiecewiseMap PiecewiseMap::restricted_to(const CylinderUnion &set, const Presentation &p) const {
  std::vector<MapCell> out;
  for (const auto &c : cells_)
    for (const auto &s : set) {
      if (c.cell.within(s))
        out.push_back(c);
      else if (s.within(c.cell))
        out.push_back({s, c.element});
    }
  std::sort(out.begin(), out.end(),
            [](const MapCell &a, const MapCell &b) { return a.cell < b.cell; });
  (void)p;
  return PiecewiseMap(std::move(out));
}

PiecewiseMap PiecewiseMap::with_image_in(const CylinderUnion &set, const Presentation &p) const {
  return inverse(p).restricted_to(set, p).inverse(p);
}

PiecewiseMap PiecewiseMap::then(const PiecewiseMap &next, const Presentation &p) const {
  std::vector<MapCell> out;
  for (const auto &c : cells_) {
    const Word &h = c.element;
    const Cylinder landed{multiply(h, c.cell.base, p)};
    const Word back = invert(h, p);
    for (const auto &d : next.cells_) {
      const Word composite = multiply(d.element, h, p);
      if (landed.within(d.cell))
        out.push_back({c.cell, composite});
      else if (d.cell.within(landed))
        out.push_back({Cylinder{multiply(back, d.cell.base, p)}, composite});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const MapCell &a, const MapCell &b) { return a.cell < b.cell; });
  return PiecewiseMap(std::move(out));
}

PiecewiseMap PiecewiseMap::inverse(const Presentation &p) const {
  std::vector<MapCell> out;
  out.reserve(cells_.size());
  for (const auto &c : cells_)
    out.push_back({Cylinder{multiply(c.element, c.cell.base, p)}, invert(c.element, p)});
  std::sort(out.begin(), out.end(),
            [](const MapCell &a, const MapCell &b) { return a.cell < b.cell; });
  return PiecewiseMap(std::move(out));
}

} // namespace treefactor
