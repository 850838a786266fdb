#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace backhaul {

// Data rate stored exactly in units of 1/16 Gb/s. All rates used by the
// scenarios (2.5, 1.25, 0.625) are representable, so admission checks are
// integer comparisons with no floating-point drift.
class Gbps {
 public:
  constexpr Gbps() = default;

  static constexpr Gbps from_sixteenths(std::int64_t n) {
    Gbps g;
    g.sixteenths_ = n;
    return g;
  }

  // Accepts only multiples of 1/16 Gb/s; everything else is a config error.
  static Gbps from_gbps(double value);
  static Gbps parse(std::string_view text);

  constexpr std::int64_t sixteenths() const { return sixteenths_; }
  constexpr double gbps() const { return static_cast<double>(sixteenths_) / 16.0; }

  // Exact decimal rendering, e.g. "2.5", "0.625", "3".
  std::string str() const;

  constexpr Gbps operator+(Gbps o) const { return from_sixteenths(sixteenths_ + o.sixteenths_); }
  constexpr Gbps operator-(Gbps o) const { return from_sixteenths(sixteenths_ - o.sixteenths_); }
  constexpr Gbps& operator+=(Gbps o) {
    sixteenths_ += o.sixteenths_;
    return *this;
  }
  constexpr Gbps& operator-=(Gbps o) {
    sixteenths_ -= o.sixteenths_;
    return *this;
  }
  constexpr auto operator<=>(const Gbps&) const = default;

 private:
  std::int64_t sixteenths_ = 0;
};

inline constexpr Gbps kZeroGbps = Gbps::from_sixteenths(0);

}  // namespace backhaul
