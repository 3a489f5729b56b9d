#ifndef SPS_SAMPLER_HPP
#define SPS_SAMPLER_HPP

#include <cstdint>
#include <vector>

#include "sps/types.hpp"

namespace sps {

/// Counter-based generator: output i is a pure function of (key, i), so a
/// stream can be replayed or split without storing state beyond a counter.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  double next_double();              // uniform in [0, 1)
  double next_gaussian();            // standard normal (Box-Muller)
  std::uint64_t next_below(std::uint64_t n);  // uniform in [0, n)

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Index source for the engine. Uniform mode draws i.i.d. uniform indices;
/// weighted mode draws from fixed probabilities p_i (inverse CDF).
/// Batches of size b < n are uniform random subsets (members distinct);
/// b = n is a full pass in index order. Weighted batches are b independent
/// draws.
class Sampler {
 public:
  enum class Kind { UniformWithReplacement, Weighted };

  static Sampler uniform(std::uint64_t seed, std::uint64_t stream = 0);
  /// probs must sum to 1 within 1e-12.
  static Sampler weighted(std::vector<double> probs, std::uint64_t seed,
                          std::uint64_t stream = 0);

  Kind kind() const { return kind_; }
  int draw(int n);
  std::vector<int> draw_batch(int n, int b);

 private:
  Sampler(Kind kind, std::uint64_t seed, std::uint64_t stream);
  Kind kind_;
  CounterRng rng_;
  std::vector<double> cdf_;
};

}  // namespace sps

#endif  // SPS_SAMPLER_HPP
