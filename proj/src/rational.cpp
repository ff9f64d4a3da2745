#include "dlab/rational.hpp"

#include <cctype>

namespace dlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Int parse_int(std::string_view digits) { return Int(std::string(digits)); }

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
}

Int pow10(long long e) {
  Int r = 1;
  for (long long i = 0; i < e; ++i) r *= 10;
  return r;
}

}  // namespace

std::string rat_to_string(const Rat& value) {
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string ext_to_string(const ExtRat& value) {
  return value.is_infinite() ? "inf" : rat_to_string(value.value());
}

Rat rat_from_string(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) bad(text);

  Rat magnitude;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad(text);
    Int d = parse_int(den);
    if (d == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
    magnitude = Rat(parse_int(num), d);
  } else {
    // decimal literal: digits[.digits][(e|E)[sign]digits]
    std::string_view mantissa = s;
    long long exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      mantissa = s.substr(0, e);
      std::string_view es = s.substr(e + 1);
      bool eneg = false;
      if (!es.empty() && (es[0] == '+' || es[0] == '-')) {
        eneg = es[0] == '-';
        es.remove_prefix(1);
      }
      if (!all_digits(es) || es.size() > 6) bad(text);
      exp10 = std::stoll(std::string(es));
      if (eneg) exp10 = -exp10;
    }
    std::string_view whole = mantissa;
    std::string_view frac;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      whole = mantissa.substr(0, dot);
      frac = mantissa.substr(dot + 1);
      if (whole.empty() && frac.empty()) bad(text);
      if (!whole.empty() && !all_digits(whole)) bad(text);
      if (!frac.empty() && !all_digits(frac)) bad(text);
    } else if (!all_digits(whole)) {
      bad(text);
    }
    Int digits = whole.empty() ? Int(0) : parse_int(whole);
    for (char c : frac) digits = digits * 10 + (c - '0');
    long long scale = static_cast<long long>(frac.size()) - exp10;
    magnitude = scale >= 0 ? Rat(digits, pow10(scale)) : Rat(digits * pow10(-scale), 1);
  }
  return negative ? Rat(-magnitude) : magnitude;
}

}  // namespace dlab
