#ifndef CASCADE_RNG_HPP_
#define CASCADE_RNG_HPP_

#include <cstdint>
#include <vector>

namespace cascade {

// Deterministic splitmix64 generator. Fold-plan, outlier and fixture
// generation all go through this so results are identical across platforms
// and standard-library versions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n). n must be > 0.
  std::uint64_t bounded(std::uint64_t n) {
    // Debiased modulo via rejection sampling.
    const std::uint64_t threshold = (0 - n) % n;
    while (true) {
      const std::uint64_t r = next();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Independent stream derived from this seed; used for per-tree and
  // per-subset parallel determinism.
  Rng fork(std::uint64_t stream) const {
    Rng child(state_ ^ (0xA0761D6478BD642FULL * (stream + 1)));
    child.next();
    return child;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(bounded(i));
      using std::swap;
      swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace cascade

#endif  // CASCADE_RNG_HPP_
