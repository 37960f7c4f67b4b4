// rng.hpp — reproducible random numbers. mt19937_64 is fully specified by
// the standard, so a fixed seed gives bit-identical streams on every
// platform; uniforms and normals are generated by explicit formulas rather
// than the implementation-defined std distributions. Parallel consumers
// derive independent substreams from (seed, block index).

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace spinreg {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    static Rng substream(std::uint64_t seed, std::uint64_t block) {
        return Rng(seed ^ splitmix64(0x5851f42d4c957f2dULL + block));
    }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1]; safe as a logarithm argument.
    double uniform_open() {
        return static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller; the paired deviate is cached.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double radius = std::sqrt(-2.0 * std::log(uniform_open()));
        const double angle = 6.28318530717958647692 * uniform();
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace spinreg
