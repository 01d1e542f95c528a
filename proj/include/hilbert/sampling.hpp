#pragma once

#include "hilbert/core.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <random>

namespace hilbert {

inline double radical_inverse(std::uint64_t index, unsigned base)
{
    double result = 0.0;
    double f = 1.0 / base;
    while (index > 0) {
        result += f * static_cast<double>(index % base);
        index /= base;
        f /= base;
    }
    return result;
}

/// Halton sequence with a Cranley-Patterson rotation drawn from `seed`.
/// Deterministic for a given (seed, dim).
class ScrambledHalton
{
  public:
    ScrambledHalton(Eigen::Index dim, std::uint64_t seed) : shift_(dim)
    {
        std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
        for (Eigen::Index k = 0; k < dim; ++k)
            shift_[k] = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    }

    //! Point of the unit cube for the given index (index 0 is skipped)
    Vector operator()(std::uint64_t index) const
    {
        static constexpr std::array<unsigned, 8> primes{2, 3, 5, 7, 11, 13, 17, 19};
        Vector p(shift_.size());
        for (Eigen::Index k = 0; k < shift_.size(); ++k) {
            const double v = radical_inverse(index + 1, primes[static_cast<std::size_t>(k) % primes.size()]) + shift_[k];
            p[k] = v - std::floor(v);
        }
        return p;
    }

  private:
    Vector shift_;
};

}  // namespace hilbert
