#include "backhaul/gbps.hpp"

#include <cmath>
#include <charconv>

namespace backhaul {

Gbps Gbps::from_gbps(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("rate must be finite, got " + std::to_string(value));
  }
  const double scaled = value * 16.0;
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-6) {
    throw std::invalid_argument("rate " + std::to_string(value) +
                                " Gb/s is not a multiple of 1/16 Gb/s");
  }
  return from_sixteenths(static_cast<std::int64_t>(rounded));
}

Gbps Gbps::parse(std::string_view text) {
  double value = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("cannot parse rate: '" + std::string(text) + "'");
  }
  return from_gbps(value);
}

std::string Gbps::str() const {
  std::int64_t whole = sixteenths_ / 16;
  std::int64_t frac = sixteenths_ % 16;
  if (frac < 0) {
    // keep the sign on the whole part for negative residuals
    frac = -frac;
    if (whole == 0) return "-" + from_sixteenths(-sixteenths_).str();
  }
  if (frac == 0) return std::to_string(whole);
  // n/16 has at most four decimal digits (1/16 = 0.0625)
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%lld.%04lld", static_cast<long long>(whole),
                static_cast<long long>(frac * 625));
  std::string s(buf);
  while (s.back() == '0') s.pop_back();
  return s;
}

}  // namespace backhaul
