#pragma once

// Monte Carlo sampling of nu by its exact conditional law: the first letter is
// uniform over the n+1 letters, every later letter uniform over the n letters
// that keep the word reduced.
//
// Randomness is counter-based: draw i of a batch comes from a SplitMix64
// stream keyed by (seed, i), so a batch is the same for any shard count.

#include "treefactor/boundary.hpp"
#include "treefactor/full_group.hpp"
#include "treefactor/group.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace treefactor {

/// SplitMix64 (Steele, Lea and Flood, 2014).
class SplitMix64 {
public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}
  std::uint64_t next();
  /// Uniform on [0, bound), rejection-free of modulo bias.
  std::uint64_t below(std::uint64_t bound);

private:
  std::uint64_t state_;
};

inline constexpr std::uint64_t kDefaultSampleLimit = 100'000'000; // letters

class SampleBatch {
public:
  SampleBatch(Presentation p, std::size_t depth, std::uint64_t seed,
              std::vector<std::uint16_t> letter_indices);

  const Presentation &presentation() const { return presentation_; }
  std::size_t depth() const { return depth_; }
  std::size_t count() const { return letters_.size() / depth_; }
  std::uint64_t seed() const { return seed_; }

  Word word(std::size_t i) const;
  /// Number of samples in the cylinder (its depth must not exceed the batch depth).
  std::uint64_t hits(const Cylinder &c) const;
  std::uint64_t hits(const CylinderUnion &u) const;
  double frequency(const Cylinder &c) const;

  friend bool operator==(const SampleBatch &a, const SampleBatch &b) {
    return a.presentation_ == b.presentation_ && a.depth_ == b.depth_ && a.letters_ == b.letters_;
  }

private:
  const std::map<std::vector<std::uint16_t>, std::uint64_t> &counts_at(std::size_t k) const;

  Presentation presentation_;
  std::size_t depth_;
  std::uint64_t seed_;
  std::vector<std::uint16_t> letters_; // canonical letter indices, depth_ per sample
  struct CountCache {
    std::mutex mutex;
    std::map<std::size_t, std::map<std::vector<std::uint16_t>, std::uint64_t>> by_depth;
  };
  std::shared_ptr<CountCache> counts_ = std::make_shared<CountCache>();
};

/// N i.i.d. depth-d truncations of nu-random boundary points.
/// Throws ValidationError for d == 0 or N == 0 and ResourceLimitError above limit letters.
SampleBatch sample(const Presentation &p, std::size_t depth, std::size_t count,
                   std::uint64_t seed, unsigned threads = 1,
                   std::uint64_t limit = kDefaultSampleLimit);

struct EmpiricalRN {
  Cylinder cell;
  Rational exact;
  double estimate = 0;
  /// Delta-method standard error of the ratio estimate.
  double sigma = 0;
  std::uint64_t cell_hits = 0;
  std::uint64_t image_hits = 0;
};

/// Ratio of empirical masses of g·cell and cell for every depth-m cell.
/// Cells without samples get estimate NaN. Throws ValidationError unless the
/// batch is deeper than |g| + m.
std::vector<EmpiricalRN> empirical_rn(const Word &g, const SampleBatch &batch, std::size_t m);

struct ChiSquare {
  double statistic = 0;
  std::size_t dof = 0;
  double quantile_999 = 0;
};

/// Pearson statistic of the depth-k cell counts against the exact nu.
ChiSquare chi_square(const SampleBatch &batch, std::size_t k);

/// Each sample replaced by its image under k (k maps depth-d cylinders onto
/// depth-d cylinders).
SampleBatch pushforward(const PiecewiseTranslation &k, const SampleBatch &batch);

/// One word per line.
std::string to_csv(const SampleBatch &batch);

} // namespace treefactor
