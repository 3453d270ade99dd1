#pragma once

// Realized Radon-Nikodym values, constructive ratio-set witnesses
// t = k2 g^-1 k1, and the type label with its evidence bundle.

#include "treefactor/boundary.hpp"
#include "treefactor/full_group.hpp"
#include "treefactor/group.hpp"
#include "treefactor/piecewise_map.hpp"
#include "treefactor/rational.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace treefactor {

/// RN values n^k realized by elements of length <= max_len on the depth-d
/// cylinders. Throws ValidationError unless depth > max_len.
std::set<Rational> realized_rn_values(const Presentation &p, std::size_t max_len,
                                      std::size_t depth,
                                      std::uint64_t limit = kDefaultSphereLimit);

/// One t = k2 g^-1 k1 (or its inverse) in a witness chain.
struct WitnessStep {
  std::pair<Word, Word> k1;
  Letter generator;
  std::optional<std::pair<Word, Word>> k2; // nullopt: identity
  bool inverted = false;
};

struct Witness {
  Rational lambda;
  long exponent = 0; // lambda = n^exponent
  CylinderUnion E;
  CylinderUnion F;
  CylinderUnion tF;
  /// t restricted to F, one group element per cell.
  PiecewiseMap t;
  std::vector<WitnessStep> chain;
  /// The RN derivative is exact, so every epsilon > 0 is met; recorded as 0.
  Rational epsilon;
};

struct WitnessOptions {
  /// Generator g with d(ge, e) = 1; defaults to the first letter.
  std::optional<Letter> generator;
  std::size_t max_step = 12;
};

/// A witness that lambda = n^k (k != 0) lies in the ratio set, for E.
/// Throws ValidationError if nu(E) = 0 or lambda is not a nonzero power of n.
Witness find_witness(const Rational &lambda, const CylinderUnion &E, const Presentation &p,
                     const WitnessOptions &options = {});

/// Witness for n^(a.exponent + b-exponent) obtained by running b's
/// construction inside a.tF; b_exponent must be +1 or -1 per link.
Witness chain_witness(const Witness &first, long exponent_step, const Presentation &p,
                      const WitnessOptions &options = {});

struct WitnessCheck {
  bool ok = true;
  std::vector<std::string> failures;
};

/// Exact re-check: nu(F) > 0, F ∪ tF ⊆ E, and on every cell of F the RN value
/// equals lambda both by word lengths and by the measure ratio of image to cell.
WitnessCheck check_witness(const Witness &w, const Presentation &p);

struct FreenessEvidence {
  std::size_t elements_checked = 0;
  std::size_t max_fixed_points = 0;
  bool ok = true;
};

struct Classification {
  unsigned n = 0;
  std::string label;              // "III_{1/n}"
  FreenessEvidence freeness;
  std::vector<std::pair<unsigned, bool>> transitivity; // (m, passed)
  std::vector<Witness> witnesses;                      // lambda = n and 1/n
  std::vector<WitnessCheck> witness_checks;
  bool evidence_ok = true;
  std::string hyperfiniteness = "not checked: amenability of the action is cited";
};

/// The type label with its evidence. A report, not a proof.
Classification classify(const Presentation &p);

std::string type_label(const Presentation &p);

} // namespace treefactor
