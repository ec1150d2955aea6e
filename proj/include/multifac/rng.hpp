// Seedable RNG with a fixed, documented draw order so runs replay exactly.
// Uniform doubles come straight from mt19937_64 output (53-bit mantissa)
// rather than std::uniform_real_distribution, whose stream is
// implementation-defined.
#ifndef MULTIFAC_RNG_HPP
#define MULTIFAC_RNG_HPP

#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace multifac {

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Roulette-wheel draw over nonnegative weights; -1 if all weights are zero.
  int pick_weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) return -1;
    double u = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (u < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  std::uint64_t next_raw() { return engine_(); }

  std::string serialize() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
  }
  void deserialize(const std::string& state) {
    std::istringstream is(state);
    is >> engine_;
    if (!is) throw std::runtime_error("bad RNG state string");
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace multifac

#endif  // MULTIFAC_RNG_HPP
