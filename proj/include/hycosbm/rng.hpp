#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>

namespace hycosbm {

/// Counter-based generator: output n of stream (seed, stream) is
/// finalize(key + (n + 1) * 0x9E3779B97F4A7C15) with
/// key = finalize(seed ^ finalize(stream + 0x9E3779B97F4A7C15)) and
/// finalize the SplitMix64 output mixer. Any draw can be recomputed from
/// (seed, stream, n) alone, so substreams are independent of scheduling.
///
/// Satisfies UniformRandomBitGenerator, but the helpers below are what the
/// library uses; std distributions are implementation-defined.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform double in [0, 1), 53 random bits.
  double uniform();
  /// Uniform double in (0, 1).
  double uniform_open();
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  /// Independent child stream; does not advance this generator.
  CounterRng substream(std::uint64_t id) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }
  std::uint64_t counter() const { return counter_; }

  template <class T>
  void shuffle(std::span<T> values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(values[i - 1], values[j]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t splitmix_finalize(std::uint64_t z);

}  // namespace hycosbm
