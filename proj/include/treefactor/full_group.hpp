#pragma once

// Measure-preserving involutions k_{x,y} of the boundary that swap Omega^x
// and Omega^y by piecewise left translations, and the transitivity test that
// certifies ergodicity of the group they generate.
//
// For |x| = |y| = m, write R_0 = x, S_0 = y and extend
//   R_j = R_{j-1} y_m^-1,  S_j = S_{j-1} x_m^-1   (j odd)
//   R_j = R_{j-1} x_m,     S_j = S_{j-1} y_m      (j even).
// Step j translates each Omega^{R_{j-1} z} onto Omega^{S_{j-1} z} by the
// element S_{j-1} R_{j-1}^-1, for every letter z other than the inverses of
// the last letters of R_{j-1} and S_{j-1}. What is left after step j is the
// single cylinder Omega^{R_j}, mapped a.e. onto Omega^{S_j}. The common point
// x (y_m^-1 x_m)^inf of all R_j is sent to y (x_m^-1 y_m)^inf. When x_m = y_m
// step 1 already covers all of Omega^x.

#include "treefactor/boundary.hpp"
#include "treefactor/group.hpp"
#include "treefactor/rational.hpp"

#include <cstddef>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace treefactor {

/// Omega^domain is carried onto Omega^image by left multiplication by element.
struct Piece {
  Cylinder domain;
  Word element;
  Cylinder image;
  std::size_t step = 0;
};

inline constexpr std::size_t kDefaultMaxStep = 32;

class PiecewiseTranslation {
public:
  /// Throws ValidationError if |x| != |y|, |x| == 0, or max_step < 1.
  static PiecewiseTranslation build(const Word &x, const Word &y, std::size_t max_step,
                                    const Presentation &p);

  PiecewiseTranslation(const PiecewiseTranslation &other);
  PiecewiseTranslation &operator=(const PiecewiseTranslation &other);

  const Presentation &presentation() const { return presentation_; }
  const Word &x() const { return x_; }
  const Word &y() const { return y_; }
  std::size_t m() const { return x_.size(); }
  bool is_identity() const { return x_ == y_; }
  /// True when the construction finishes at step 1 (x_m = y_m).
  bool closes_at_first_step() const;

  /// Steps materialized so far (0 for the identity, 1 once closed).
  std::size_t steps() const;
  /// Materializes steps up to j (a no-op once the construction has closed).
  void extend_to(std::size_t j) const;

  /// Pieces on Omega^x, in step order then canonical letter order.
  std::vector<Piece> forward_pieces() const;
  /// Pieces on Omega^y: the inverses of the forward pieces.
  std::vector<Piece> backward_pieces() const;

  /// Uncovered part of Omega^x after the materialized steps (Omega^{R_j}).
  std::optional<Cylinder> residual() const;
  /// Its a.e. image Omega^{S_j}.
  std::optional<Cylinder> residual_image() const;

  /// Point mappings not covered by any piece, in both directions.
  std::vector<std::pair<BoundaryPoint, BoundaryPoint>> exceptional() const;

  /// k(w), materializing further steps on demand.
  BoundaryPoint apply(const BoundaryPoint &w) const;

  /// The image of a cylinder as an exact cylinder union (up to the null
  /// exceptional points).
  CylinderUnion image(const Cylinder &c) const;
  CylinderUnion image(const CylinderUnion &u) const;

private:
  PiecewiseTranslation(Word x, Word y, const Presentation &p);
  void extend_locked(std::size_t j) const;
  Word residual_word_locked(bool y_side) const;

  Presentation presentation_;
  Word x_;
  Word y_;
  mutable std::mutex mutex_;
  mutable std::size_t steps_ = 0;
  mutable std::vector<Piece> forward_;
};

/// Outcome of checking a translation: every failed check is listed.
struct VerificationReport {
  bool ok = true;
  std::vector<std::string> failures;
  std::size_t steps = 0;
  std::size_t piece_count = 0;
  Rational residual_measure;
  Rational expected_residual_measure;
  Rational covered_measure;

  void fail(std::string what) {
    ok = false;
    failures.push_back(std::move(what));
  }
};

VerificationReport verify_k(const PiecewiseTranslation &k);

/// The element used at step j (1-based), written out as the unreduced
/// alternating word S_{j-1} R_{j-1}^-1 and then reduced.
Word step_element(const Word &x, const Word &y, std::size_t j, const Presentation &p);

struct TransitivityReport {
  bool transitive = true;
  std::size_t pairs_checked = 0;
  std::vector<std::string> failures;
};

/// Checks that k_{x,y} carries Omega^x onto Omega^y for every ordered pair of
/// level-m words.
TransitivityReport transitivity_report(unsigned m, const Presentation &p,
                                       std::size_t max_step = 4);
bool transitivity_check(unsigned m, const Presentation &p);

} // namespace treefactor
