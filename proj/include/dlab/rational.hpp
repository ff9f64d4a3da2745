#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace dlab {

using Int = boost::multiprecision::cpp_int;

// Exact rational arithmetic. Values are kept in lowest terms with a positive
// denominator; +, -, *, / and all comparisons are exact.
using Rat = boost::multiprecision::cpp_rational;

inline Rat rat(long long num, long long den = 1) { return Rat(num, den); }

// Renders as "p/q", always including the denominator ("0/1", "1/1", "-3/4").
std::string rat_to_string(const Rat& value);

// Accepts "p/q", plain integers, and decimal literals with an optional
// exponent ("0.25", "-1.5e-2"). Decimals are converted exactly.
// Throws std::invalid_argument on malformed input or a zero denominator.
Rat rat_from_string(std::string_view text);

// A non-negative rational extended with +infinity, used for welfare ratios
// whose denominator may be zero.
class ExtRat {
 public:
  ExtRat() = default;
  static ExtRat infinity() {
    ExtRat r;
    r.infinite_ = true;
    return r;
  }
  ExtRat(Rat value) : value_(std::move(value)) {}  // NOLINT: implicit by design

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  const Rat& value() const {
    if (infinite_) throw std::logic_error("ExtRat: value() on infinity");
    return value_;
  }

  friend bool operator==(const ExtRat& a, const ExtRat& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }
  friend bool operator!=(const ExtRat& a, const ExtRat& b) { return !(a == b); }
  friend bool operator<(const ExtRat& a, const ExtRat& b) {
    if (a.infinite_) return false;
    if (b.infinite_) return true;
    return a.value_ < b.value_;
  }
  friend bool operator<=(const ExtRat& a, const ExtRat& b) { return !(b < a); }
  friend bool operator>(const ExtRat& a, const ExtRat& b) { return b < a; }
  friend bool operator>=(const ExtRat& a, const ExtRat& b) { return !(a < b); }

  // Scaling by a finite non-negative rational keeps infinity infinite.
  friend ExtRat operator*(const ExtRat& a, const Rat& s) {
    if (a.infinite_) return infinity();
    return ExtRat(a.value_ * s);
  }
  friend ExtRat operator*(const Rat& s, const ExtRat& a) { return a * s; }

  friend ExtRat max(const ExtRat& a, const ExtRat& b) { return a < b ? b : a; }
  friend ExtRat min(const ExtRat& a, const ExtRat& b) { return b < a ? b : a; }

 private:
  bool infinite_ = false;
  Rat value_{};
};

std::string ext_to_string(const ExtRat& value);

}  // namespace dlab
