#ifndef CAC_RNG_HPP
#define CAC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace cac {

// Deterministic random stream: mt19937_64 plus hand-rolled transforms, so
// identical seeds give identical draws on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double exponential(double mean_value) {
        return -mean_value * std::log1p(-uniform01());
    }

    // Index drawn with probability proportional to the weights.
    std::size_t pick(const std::vector<double>& cumulative) {
        const double u = uniform01() * cumulative.back();
        for (std::size_t i = 0; i < cumulative.size(); ++i)
            if (u <= cumulative[i]) return i;
        return cumulative.size() - 1;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace cac

#endif
