#pragma once
//! Seeded random draws with a pinned mapping from engine bits to values.
//!
//! std::mt19937_64 supplies the bit stream; the float/int mappings are done
//! by hand (instead of std::uniform_*_distribution) so that a given seed
//! produces the same draws on any standard library.  Reproducibility from
//! seeds is part of the toolkit contract.

#include <cstdint>
#include <random>

namespace tcs {

struct Rng {
  explicit Rng(std::uint64_t seed) : eng(seed) {}

  std::uint64_t bits() { return eng(); }

  //! Uniform on [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(eng() >> 11) * 0x1.0p-53; }

  //! Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  //! Uniform integer in [lo, hi] inclusive.
  long uniform_int(long lo, long hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<long>(eng() % span);
  }

  std::mt19937_64 eng;
};

}  // namespace tcs
