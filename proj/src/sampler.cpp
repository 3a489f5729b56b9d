#include "sps/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_set>

namespace sps {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(mix64(seed) ^ mix64(stream + 0xA511E9B3ULL))) {}

std::uint64_t CounterRng::next_u64() { return mix64(key_ + kGolden * counter_++); }

double CounterRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_gaussian() {
  // Box-Muller; one output per pair keeps the stream a pure counter map.
  double u1 = next_double();
  const double u2 = next_double();
  if (u1 <= 0.0) u1 = 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

std::uint64_t CounterRng::next_below(std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
}

Sampler::Sampler(Kind kind, std::uint64_t seed, std::uint64_t stream)
    : kind_(kind), rng_(seed, stream) {}

Sampler Sampler::uniform(std::uint64_t seed, std::uint64_t stream) {
  return Sampler(Kind::UniformWithReplacement, seed, stream);
}

Sampler Sampler::weighted(std::vector<double> probs, std::uint64_t seed,
                          std::uint64_t stream) {
  if (probs.empty()) throw std::invalid_argument("weighted sampler: empty probabilities");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("weighted sampler: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw std::invalid_argument("weighted sampler: probabilities must sum to 1");
  }
  Sampler s(Kind::Weighted, seed, stream);
  s.cdf_.resize(probs.size());
  double acc = 0.0;
  for (size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    s.cdf_[i] = acc;
  }
  s.cdf_.back() = 1.0;
  return s;
}

int Sampler::draw(int n) {
  if (kind_ == Kind::Weighted) {
    if (n != static_cast<int>(cdf_.size())) {
      throw std::invalid_argument("weighted sampler: n does not match probabilities");
    }
    const double u = rng_.next_double();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return static_cast<int>(std::min<std::size_t>(it - cdf_.begin(), cdf_.size() - 1));
  }
  return static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(n)));
}

std::vector<int> Sampler::draw_batch(int n, int b) {
  if (b < 1 || b > n) throw std::invalid_argument("batch size must be in [1, n]");
  std::vector<int> batch;
  batch.reserve(b);
  if (b == 1) {
    batch.push_back(draw(n));
    return batch;
  }
  if (kind_ == Kind::Weighted) {
    for (int j = 0; j < b; ++j) batch.push_back(draw(n));
    return batch;
  }
  if (b == n) {
    batch.resize(n);
    std::iota(batch.begin(), batch.end(), 0);
    return batch;
  }
  // Floyd's subset sampling: b distinct indices, then sorted so the batch
  // mean accumulates in a fixed order.
  std::unordered_set<int> chosen;
  chosen.reserve(b * 2);
  for (int j = n - b; j < n; ++j) {
    const int t = static_cast<int>(rng_.next_below(static_cast<std::uint64_t>(j) + 1));
    if (chosen.count(t)) {
      chosen.insert(j);
    } else {
      chosen.insert(t);
    }
  }
  batch.assign(chosen.begin(), chosen.end());
  std::sort(batch.begin(), batch.end());
  return batch;
}

}  // namespace sps
