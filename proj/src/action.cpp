#include "treefactor/action.hpp"

#include "treefactor/error.hpp"

#include <algorithm>

namespace treefactor {

BoundaryPoint act_point(const Word &g, const BoundaryPoint &w, const Presentation &p) {
  if (g.empty())
    return w;
  // Unroll past |g| letters so cancellation never reaches the cycle.
  std::size_t unrolled = w.prefix().size();
  while (unrolled <= g.size())
    unrolled += w.cycle().size();
  Word head = multiply(g, w.truncation(unrolled), p);
  return BoundaryPoint::make(head, w.cycle(), p);
}

namespace {

bool fully_cancelled(const Word &g, const Cylinder &c, const Presentation &p) {
  const std::size_t reduced = multiply(g, c.base, p).size();
  return (g.size() + c.depth() - reduced) / 2 >= c.depth();
}

// Only cells that g cancels completely need splitting; those lie on the single
// path of prefixes of g^-1, so the recursion is linear in |g|.
void collect_images(const Word &g, const Cylinder &c, const Presentation &p,
                    std::vector<Cylinder> &out) {
  if (!fully_cancelled(g, c, p)) {
    out.push_back({multiply(g, c.base, p)});
    return;
  }
  for (const auto &child : children(c, p))
    collect_images(g, child, p, out);
}

} // namespace

CylinderUnion act_cylinder(const Word &g, const Cylinder &c, const Presentation &p) {
  if (g.empty())
    return CylinderUnion::of({c}, p);
  std::vector<Cylinder> images;
  collect_images(g, c, p, images);
  return CylinderUnion::of(std::move(images), p);
}

CylinderUnion act_union(const Word &g, const CylinderUnion &u, const Presentation &p) {
  CylinderUnion out;
  for (const auto &c : u)
    out = unite(out, act_cylinder(g, c, p), p);
  return out;
}

bool translates_cylinder(const Word &g, const Cylinder &c, const Presentation &p) {
  return !fully_cancelled(g, c, p);
}

long rn_exponent(const Word &g, const Cylinder &cell, const Presentation &p) {
  const Word image = multiply(g, cell.base, p);
  const std::size_t cancelled = (g.size() + cell.depth() - image.size()) / 2;
  if (cancelled >= cell.depth())
    throw ValidationError("g does not act on " + format(cell.base, p) +
                          " as a single translation; refine the cell");
  return static_cast<long>(cell.depth()) - static_cast<long>(image.size());
}

std::optional<long> RNTable::exponent_on(const Cylinder &c) const {
  std::optional<long> common;
  for (const auto &cell : cells_) {
    if (c.within(cell.cell))
      return cell.exponent;
    if (cell.cell.within(c)) {
      if (common && *common != cell.exponent)
        return std::nullopt;
      common = cell.exponent;
    }
  }
  return common;
}

RNTable rn_table(const Word &g, std::size_t depth, const Presentation &p, std::uint64_t limit) {
  if (depth <= g.size())
    throw ValidationError("rn_table needs depth > |g| (depth " + std::to_string(depth) +
                          ", |g| = " + std::to_string(g.size()) + ")");
  if (sphere_size(static_cast<unsigned>(depth), p) > BigInt(std::to_string(limit)))
    throw ResourceLimitError("rn_table at depth " + std::to_string(depth) + " exceeds the cell limit");
  std::vector<RNCell> cells;
  for_each_in_sphere(static_cast<unsigned>(depth), p, [&](const Word &y) {
    Cylinder cell{y};
    const long k = rn_exponent(g, cell, p);
    cells.push_back({std::move(cell), k, rational_power(p.n(), k)});
  });
  return RNTable(g, depth, std::move(cells));
}

std::pair<Word, Word> cyclic_core(const Word &g, const Presentation &p) {
  std::size_t lo = 0;
  std::size_t hi = g.size();
  while (hi - lo >= 2 && g[hi - 1] == p.inverse(g[lo])) {
    ++lo;
    --hi;
  }
  Word conjugator = g.prefix(lo);
  Word core = g.prefix(hi).suffix(lo);
  return {std::move(conjugator), std::move(core)};
}

std::vector<BoundaryPoint> fixed_points(const Word &g, const Presentation &p) {
  if (g.empty())
    throw ValidationError("the identity fixes every point");
  auto [u, c] = cyclic_core(g, p);
  if (c.size() == 1 && p.is_involution(c.front().generator))
    return {};
  std::vector<BoundaryPoint> out;
  out.push_back(act_point(u, BoundaryPoint::make(Word(), c, p), p));
  out.push_back(act_point(u, BoundaryPoint::make(Word(), invert(c, p), p), p));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace treefactor
