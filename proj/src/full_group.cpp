#include "treefactor/full_group.hpp"

#include "treefactor/action.hpp"
#include "treefactor/error.hpp"

#include <algorithm>

namespace treefactor {

PiecewiseTranslation::PiecewiseTranslation(Word x, Word y, const Presentation &p)
    : presentation_(p), x_(std::move(x)), y_(std::move(y)) {}

PiecewiseTranslation::PiecewiseTranslation(const PiecewiseTranslation &other)
    : presentation_(other.presentation_), x_(other.x_), y_(other.y_) {
  std::lock_guard lock(other.mutex_);
  steps_ = other.steps_;
  forward_ = other.forward_;
}

PiecewiseTranslation &PiecewiseTranslation::operator=(const PiecewiseTranslation &other) {
  if (this == &other)
    return *this;
  std::scoped_lock lock(mutex_, other.mutex_);
  presentation_ = other.presentation_;
  x_ = other.x_;
  y_ = other.y_;
  steps_ = other.steps_;
  forward_ = other.forward_;
  return *this;
}

PiecewiseTranslation PiecewiseTranslation::build(const Word &x, const Word &y,
                                                 std::size_t max_step, const Presentation &p) {
  if (x.size() != y.size())
    throw ValidationError("k_{x,y} needs |x| = |y|");
  if (x.empty())
    throw ValidationError("k_{x,y} needs |x| = |y| >= 1");
  if (max_step < 1)
    throw ValidationError("max step must be at least 1");
  PiecewiseTranslation k(x, y, p);
  k.extend_to(max_step);
  return k;
}

bool PiecewiseTranslation::closes_at_first_step() const {
  return !is_identity() && x_.back() == y_.back();
}

std::size_t PiecewiseTranslation::steps() const {
  std::lock_guard lock(mutex_);
  return steps_;
}

void PiecewiseTranslation::extend_to(std::size_t j) const {
  std::lock_guard lock(mutex_);
  extend_locked(j);
}

namespace {

/// R_j (x side) or S_j (y side).
Word residual_word(const Word &x, const Word &y, std::size_t j, bool y_side,
                   const Presentation &p) {
  const Letter xm = x.back();
  const Letter ym = y.back();
  Word w = y_side ? y : x;
  for (std::size_t i = 1; i <= j; ++i) {
    const bool odd = i % 2 == 1;
    if (y_side)
      w = w.extended(odd ? p.inverse(xm) : ym, p);
    else
      w = w.extended(odd ? p.inverse(ym) : xm, p);
  }
  return w;
}

} // namespace

Word PiecewiseTranslation::residual_word_locked(bool y_side) const {
  return residual_word(x_, y_, steps_, y_side, presentation_);
}

void PiecewiseTranslation::extend_locked(std::size_t j) const {
  if (is_identity())
    return;
  const Presentation &p = presentation_;
  while (steps_ < j) {
    if (closes_at_first_step() && steps_ >= 1)
      return;
    const Word from = residual_word(x_, y_, steps_, false, p);
    const Word to = residual_word(x_, y_, steps_, true, p);
    const Word element = multiply(to, invert(from, p), p);
    const Letter skip_from = p.inverse(from.back());
    const Letter skip_to = p.inverse(to.back());
    ++steps_;
    for (Letter z : p.letters()) {
      if (z == skip_from || z == skip_to)
        continue;
      forward_.push_back({Cylinder{from.extended(z, p)}, element, Cylinder{to.extended(z, p)}, steps_});
    }
  }
}

std::vector<Piece> PiecewiseTranslation::forward_pieces() const {
  std::lock_guard lock(mutex_);
  return forward_;
}

std::vector<Piece> PiecewiseTranslation::backward_pieces() const {
  std::lock_guard lock(mutex_);
  std::vector<Piece> out;
  out.reserve(forward_.size());
  for (const auto &piece : forward_)
    out.push_back({piece.image, invert(piece.element, presentation_), piece.domain, piece.step});
  return out;
}

std::optional<Cylinder> PiecewiseTranslation::residual() const {
  std::lock_guard lock(mutex_);
  if (is_identity() || closes_at_first_step())
    return std::nullopt;
  return Cylinder{residual_word_locked(false)};
}

std::optional<Cylinder> PiecewiseTranslation::residual_image() const {
  std::lock_guard lock(mutex_);
  if (is_identity() || closes_at_first_step())
    return std::nullopt;
  return Cylinder{residual_word_locked(true)};
}

namespace {

std::pair<BoundaryPoint, BoundaryPoint> exceptional_pair(const Word &x, const Word &y,
                                                         const Presentation &p) {
  const Letter xm = x.back();
  const Letter ym = y.back();
  Word x_cycle = letter_word(p.inverse(ym), p).extended(xm, p);
  Word y_cycle = letter_word(p.inverse(xm), p).extended(ym, p);
  return {BoundaryPoint::make(x, x_cycle, p), BoundaryPoint::make(y, y_cycle, p)};
}

} // namespace

std::vector<std::pair<BoundaryPoint, BoundaryPoint>> PiecewiseTranslation::exceptional() const {
  if (is_identity() || closes_at_first_step())
    return {};
  auto [in, out] = exceptional_pair(x_, y_, presentation_);
  return {{in, out}, {out, in}};
}

BoundaryPoint PiecewiseTranslation::apply(const BoundaryPoint &w) const {
  if (is_identity())
    return w;
  const Presentation &p = presentation_;
  const bool on_x = contains(Cylinder{x_}, w);
  const bool on_y = !on_x && contains(Cylinder{y_}, w);
  if (!on_x && !on_y)
    return w;

  std::size_t needed = 1;
  if (!closes_at_first_step()) {
    auto [x_inf, y_inf] = exceptional_pair(x_, y_, p);
    const BoundaryPoint &spine = on_x ? x_inf : y_inf;
    auto split = first_difference(w, spine);
    if (!split)
      return on_x ? y_inf : x_inf;
    needed = *split - m() + 1;
  }

  std::lock_guard lock(mutex_);
  extend_locked(needed);
  for (const auto &piece : forward_) {
    if (on_x && contains(piece.domain, w))
      return act_point(piece.element, w, p);
    if (on_y && contains(piece.image, w))
      return act_point(invert(piece.element, p), w, p);
  }
  throw std::logic_error("no piece covers the point after materializing its step");
}

CylinderUnion PiecewiseTranslation::image(const Cylinder &c) const {
  const Presentation &p = presentation_;
  if (is_identity())
    return CylinderUnion::of({c}, p);
  const Cylinder omega_x{x_};
  const Cylinder omega_y{y_};

  std::vector<Cylinder> parts;
  // Outside both cylinders k is the identity.
  for (const auto &rest :
       subtract(CylinderUnion::of({c}, p), CylinderUnion::of({omega_x, omega_y}, p), p))
    parts.push_back(rest);

  // Deep enough that c is never strictly inside the residual.
  const std::size_t needed = c.depth() > m() ? c.depth() - m() : 1;
  std::lock_guard lock(mutex_);
  extend_locked(needed);

  for (const bool x_side : {true, false}) {
    const Cylinder &side = x_side ? omega_x : omega_y;
    if (c.disjoint_from(side))
      continue;
    for (const auto &piece : forward_) {
      const Cylinder &from = x_side ? piece.domain : piece.image;
      const Cylinder &to = x_side ? piece.image : piece.domain;
      if (from.within(c)) {
        parts.push_back(to);
      } else if (c.within(from)) {
        const Word element = x_side ? piece.element : invert(piece.element, p);
        parts.push_back(Cylinder{multiply(element, c.base, p)});
      }
    }
    if (!is_identity() && !closes_at_first_step()) {
      const Cylinder from{residual_word_locked(!x_side)};
      const Cylinder to{residual_word_locked(x_side)};
      if (from.within(c))
        parts.push_back(to);
    }
  }
  return CylinderUnion::of(std::move(parts), p);
}

CylinderUnion PiecewiseTranslation::image(const CylinderUnion &u) const {
  CylinderUnion out;
  for (const auto &c : u)
    out = unite(out, image(c), presentation_);
  return out;
}

Word step_element(const Word &x, const Word &y, std::size_t j, const Presentation &p) {
  const Word to = residual_word(x, y, j - 1, true, p);
  const Word from = residual_word(x, y, j - 1, false, p);
  std::vector<Letter> letters(to.begin(), to.end());
  for (auto it = from.letters().rbegin(); it != from.letters().rend(); ++it)
    letters.push_back(p.inverse(*it));
  return reduce(letters, p);
}

VerificationReport verify_k(const PiecewiseTranslation &k) {
  const Presentation &p = k.presentation();
  VerificationReport report;
  const auto pieces = k.forward_pieces();
  report.steps = k.steps();
  report.piece_count = pieces.size();

  if (k.is_identity()) {
    if (!pieces.empty())
      report.fail("identity translation carries pieces");
    report.residual_measure = 0;
    report.expected_residual_measure = 0;
    report.covered_measure = measure(Cylinder{k.x()}, p);
    return report;
  }

  // (a) disjoint domains, disjoint images.
  for (std::size_t i = 0; i < pieces.size(); ++i)
    for (std::size_t j = i + 1; j < pieces.size(); ++j) {
      if (!pieces[i].domain.disjoint_from(pieces[j].domain))
        report.fail("domains overlap: " + format(pieces[i].domain.base, p) + " / " +
                    format(pieces[j].domain.base, p));
      if (!pieces[i].image.disjoint_from(pieces[j].image))
        report.fail("images overlap: " + format(pieces[i].image.base, p) + " / " +
                    format(pieces[j].image.base, p));
    }

  // (b) + (e): each piece is one group element carrying domain onto image,
  // preserving measure.
  std::vector<Cylinder> domains;
  std::vector<Cylinder> images;
  Rational covered = 0;
  for (const auto &piece : pieces) {
    const auto moved = act_cylinder(piece.element, piece.domain, p);
    if (moved != CylinderUnion::of({piece.image}, p))
      report.fail("element " + format(piece.element, p) + " does not carry " +
                  format(piece.domain.base, p) + " onto " + format(piece.image.base, p));
    const Rational from = measure(piece.domain, p);
    if (from != measure(piece.image, p))
      report.fail("piece on " + format(piece.domain.base, p) + " changes measure");
    covered += from;
    domains.push_back(piece.domain);
    images.push_back(piece.image);
  }
  report.covered_measure = covered;

  // (c) domains and residual exhaust Omega^x; images and residual image exhaust Omega^y.
  const auto residual = k.residual();
  const auto residual_image = k.residual_image();
  if (residual)
    domains.push_back(*residual);
  if (residual_image)
    images.push_back(*residual_image);
  if (CylinderUnion::of(domains, p) != CylinderUnion::of({Cylinder{k.x()}}, p))
    report.fail("domains plus residual do not tile Omega^x");
  if (CylinderUnion::of(images, p) != CylinderUnion::of({Cylinder{k.y()}}, p))
    report.fail("images plus residual image do not tile Omega^y");

  // (d) residual after step j is (1/(n+1)) (1/n)^(m+j-1).
  report.residual_measure = residual ? measure(*residual, p) : Rational(0);
  if (residual) {
    report.expected_residual_measure =
        rational_power(p.n(), -static_cast<long>(k.m() + report.steps - 1)) / p.degree();
    if (residual->depth() != k.m() + report.steps)
      report.fail("residual is not a single cylinder of depth m + j");
  } else {
    report.expected_residual_measure = 0;
  }
  if (report.residual_measure != report.expected_residual_measure)
    report.fail("residual measure " + to_fraction_string(report.residual_measure) + " != " +
                to_fraction_string(report.expected_residual_measure));
  if (covered + report.residual_measure != measure(Cylinder{k.x()}, p))
    report.fail("covered plus residual measure differs from nu(Omega^x)");

  // Exceptional points sit in every residual.
  for (const auto &[from, to] : k.exceptional()) {
    const bool x_side = contains(Cylinder{k.x()}, from);
    const auto &trap = x_side ? residual : residual_image;
    const auto &target = x_side ? residual_image : residual;
    if (!trap || !contains(*trap, from) || !target || !contains(*target, to))
      report.fail("exceptional pair escapes the residual cylinders");
  }
  return report;
}

TransitivityReport transitivity_report(unsigned m, const Presentation &p, std::size_t max_step) {
  TransitivityReport report;
  if (m == 0)
    return report;
  const auto level = sphere(m, p);
  for (const auto &x : level)
    for (const auto &y : level) {
      ++report.pairs_checked;
      const auto k = PiecewiseTranslation::build(x, y, max_step, p);
      const auto verdict = verify_k(k);
      bool onto = verdict.ok && k.image(Cylinder{x}) == CylinderUnion::of({Cylinder{y}}, p);
      if (!onto) {
        report.transitive = false;
        report.failures.push_back(format(x, p) + " -> " + format(y, p));
      }
    }
  return report;
}

bool transitivity_check(unsigned m, const Presentation &p) {
  return transitivity_report(m, p).transitive;
}

} // namespace treefactor
