#include "treefactor/sampler.hpp"

#include "treefactor/action.hpp"
#include "treefactor/error.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <cmath>
#include <limits>
#include <thread>

namespace treefactor {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // Lemire's nearly divisionless method.
  __uint128_t m = static_cast<__uint128_t>(next()) * bound;
  auto low = static_cast<std::uint64_t>(m);
  if (low < bound) {
    const std::uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(next()) * bound;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

SampleBatch::SampleBatch(Presentation p, std::size_t depth, std::uint64_t seed,
                         std::vector<std::uint16_t> letter_indices)
    : presentation_(std::move(p)), depth_(depth), seed_(seed), letters_(std::move(letter_indices)) {}

Word SampleBatch::word(std::size_t i) const {
  const auto &alphabet = presentation_.letters();
  std::vector<Letter> letters;
  letters.reserve(depth_);
  for (std::size_t j = 0; j < depth_; ++j)
    letters.push_back(alphabet[letters_[i * depth_ + j]]);
  return reduce(letters, presentation_);
}

const std::map<std::vector<std::uint16_t>, std::uint64_t> &
SampleBatch::counts_at(std::size_t k) const {
  std::lock_guard lock(counts_->mutex);
  if (auto it = counts_->by_depth.find(k); it != counts_->by_depth.end())
    return it->second;
  auto &table = counts_->by_depth[k];
  std::vector<std::uint16_t> key(k);
  for (std::size_t i = 0; i < count(); ++i) {
    std::copy_n(letters_.begin() + static_cast<std::ptrdiff_t>(i * depth_), k, key.begin());
    ++table[key];
  }
  return table;
}

std::uint64_t SampleBatch::hits(const Cylinder &c) const {
  if (c.depth() > depth_)
    throw ValidationError("cylinder deeper than the sample batch");
  std::vector<std::uint16_t> key;
  for (Letter l : c.base)
    key.push_back(static_cast<std::uint16_t>(presentation_.index_of(l)));
  const auto &table = counts_at(c.depth());
  auto it = table.find(key);
  return it == table.end() ? 0 : it->second;
}

std::uint64_t SampleBatch::hits(const CylinderUnion &u) const {
  std::uint64_t total = 0;
  for (const auto &c : u)
    total += hits(c);
  return total;
}

double SampleBatch::frequency(const Cylinder &c) const {
  return static_cast<double>(hits(c)) / static_cast<double>(count());
}

namespace {

std::uint64_t stream_key(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ SplitMix64(index).next());
  return mix.next();
}

void draw_range(const Presentation &p, std::size_t depth, std::uint64_t seed, std::size_t begin,
                std::size_t end, std::vector<std::uint16_t> &out) {
  const auto &alphabet = p.letters();
  const std::uint64_t degree = p.degree();
  for (std::size_t i = begin; i < end; ++i) {
    SplitMix64 rng(stream_key(seed, i));
    std::uint16_t *row = out.data() + i * depth;
    row[0] = static_cast<std::uint16_t>(rng.below(degree));
    for (std::size_t j = 1; j < depth; ++j) {
      // Choose among the n letters other than the inverse of the previous one.
      const auto forbidden = static_cast<std::uint16_t>(p.index_of(p.inverse(alphabet[row[j - 1]])));
      auto pick = static_cast<std::uint16_t>(rng.below(degree - 1));
      if (pick >= forbidden)
        ++pick;
      row[j] = pick;
    }
  }
}

} // namespace

SampleBatch sample(const Presentation &p, std::size_t depth, std::size_t count,
                   std::uint64_t seed, unsigned threads, std::uint64_t limit) {
  if (depth == 0)
    throw ValidationError("sample depth must be at least 1");
  if (count == 0)
    throw ValidationError("sample count must be at least 1");
  if (count > limit / depth)
    throw ResourceLimitError("sample of " + std::to_string(count) + " x " +
                             std::to_string(depth) + " letters exceeds the limit of " +
                             std::to_string(limit));
  std::vector<std::uint16_t> letters(count * depth);
  threads = std::max(1u, threads);
  if (threads == 1) {
    draw_range(p, depth, seed, 0, count, letters);
  } else {
    std::vector<std::jthread> workers;
    const std::size_t shard = (count + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(count, t * shard);
      const std::size_t end = std::min(count, begin + shard);
      workers.emplace_back([&, begin, end] { draw_range(p, depth, seed, begin, end, letters); });
    }
  }
  return SampleBatch(p, depth, seed, std::move(letters));
}

std::vector<EmpiricalRN> empirical_rn(const Word &g, const SampleBatch &batch, std::size_t m) {
  const Presentation &p = batch.presentation();
  if (batch.depth() <= g.size() + m)
    throw ValidationError("batch depth must exceed |g| + cell depth");
  const double total = static_cast<double>(batch.count());
  std::vector<EmpiricalRN> out;
  for (const auto &y : sphere(static_cast<unsigned>(m), p)) {
    const Cylinder cell{y};
    const CylinderUnion image = act_cylinder(g, cell, p);
    for (const auto &c : image)
      if (c.depth() > batch.depth())
        throw ValidationError("batch too shallow to resolve the image of " + format(y, p));
    EmpiricalRN row;
    row.cell = cell;
    const Rational cell_mass = measure(cell, p);
    const Rational image_mass = measure(image, p);
    row.exact = image_mass / cell_mass;
    row.cell_hits = batch.hits(cell);
    row.image_hits = batch.hits(image);
    if (row.cell_hits == 0) {
      row.estimate = std::numeric_limits<double>::quiet_NaN();
      row.sigma = std::numeric_limits<double>::infinity();
      out.push_back(std::move(row));
      continue;
    }
    row.estimate = static_cast<double>(row.image_hits) / static_cast<double>(row.cell_hits);

    const double p1 = image_mass.get_d();
    const double p2 = cell_mass.get_d();
    const double p12 = measure(intersect(image, CylinderUnion::of({cell}, p), p), p).get_d();
    const double var1 = p1 * (1 - p1) / total;
    const double var2 = p2 * (1 - p2) / total;
    const double cov = (p12 - p1 * p2) / total;
    const double r = p1 / p2;
    const double rel = var1 / (p1 * p1) + var2 / (p2 * p2) - 2 * cov / (p1 * p2);
    row.sigma = r * std::sqrt(std::max(rel, 0.0));
    out.push_back(std::move(row));
  }
  return out;
}

ChiSquare chi_square(const SampleBatch &batch, std::size_t k) {
  const Presentation &p = batch.presentation();
  ChiSquare out;
  const double total = static_cast<double>(batch.count());
  const auto cells = sphere(static_cast<unsigned>(k), p);
  for (const auto &y : cells) {
    const double expected = measure(Cylinder{y}, p).get_d() * total;
    const double diff = static_cast<double>(batch.hits(Cylinder{y})) - expected;
    out.statistic += diff * diff / expected;
  }
  out.dof = cells.size() - 1;
  if (out.dof > 0) {
    boost::math::chi_squared dist(static_cast<double>(out.dof));
    out.quantile_999 = boost::math::quantile(dist, 0.999);
  }
  return out;
}

SampleBatch pushforward(const PiecewiseTranslation &k, const SampleBatch &batch) {
  const Presentation &p = batch.presentation();
  std::map<Word, std::vector<std::uint16_t>> cache;
  std::vector<std::uint16_t> letters;
  letters.reserve(batch.count() * batch.depth());
  for (std::size_t i = 0; i < batch.count(); ++i) {
    const Word w = batch.word(i);
    auto it = cache.find(w);
    if (it == cache.end()) {
      const auto image = k.image(Cylinder{w});
      if (image.size() != 1 || image.cylinders().front().depth() != w.size())
        throw std::logic_error("k does not map " + format(w, p) + " onto a cylinder of equal depth");
      std::vector<std::uint16_t> row;
      for (Letter l : image.cylinders().front().base)
        row.push_back(static_cast<std::uint16_t>(p.index_of(l)));
      it = cache.emplace(w, std::move(row)).first;
    }
    letters.insert(letters.end(), it->second.begin(), it->second.end());
  }
  return SampleBatch(p, batch.depth(), batch.seed(), std::move(letters));
}

std::string to_csv(const SampleBatch &batch) {
  std::string out;
  for (std::size_t i = 0; i < batch.count(); ++i) {
    out += format(batch.word(i), batch.presentation());
    out += '\n';
  }
  return out;
}

} // namespace treefactor
