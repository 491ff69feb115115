#pragma once

#include <bit>
#include <cmath>
#include <cstdint>

#include "fram/errors.hpp"
#include "fram/precision.hpp"

namespace fram::detail {

// Precomputed rounding to a FloatFormat on binary64 carriers.
class NarrowRound {
 public:
  explicit NarrowRound(const FloatFormat& f)
      : identity_(f.is_host()),
        check_range_(f.exponent_bits < 11),
        shift_(f.mantissa_bits >= 52 ? 0 : 52 - f.mantissa_bits),
        max_finite_(f.max_finite()),
        min_normal_(f.min_normal()) {}

  double operator()(double x) const {
    if (identity_) return x;
    if (!std::isfinite(x)) throw RangeError("cannot round a non-finite value");
    double r = x;
    if (shift_ > 0) {
      constexpr std::uint64_t sign_mask = 0x8000000000000000ULL;
      const std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
      std::uint64_t mag = bits & ~sign_mask;
      const std::uint64_t lsb = (mag >> shift_) & 1U;
      mag += (std::uint64_t{1} << (shift_ - 1)) - 1 + lsb;
      mag &= ~((std::uint64_t{1} << shift_) - 1);
      r = std::bit_cast<double>((bits & sign_mask) | mag);
    }
    if (check_range_) {
      const double a = std::fabs(r);
      if (a > max_finite_) throw RangeError("value overflows the target format");
      if (a < min_normal_) return std::copysign(0.0, x);
    } else if (!std::isfinite(r)) {
      throw RangeError("value overflows the target format");
    }
    return r;
  }

  bool identity() const noexcept { return identity_; }

 private:
  bool identity_;
  bool check_range_;
  int shift_;
  double max_finite_;
  double min_normal_;
};

}  // namespace fram::detail
