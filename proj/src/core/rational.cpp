#include "core/rational.hpp"

#include "core/error.hpp"

#include <cctype>
#include <charconv>
#include <numeric>

namespace heurbench {

namespace {

using Wide = __int128;

std::int64_t narrow(Wide value) {
  if (value > Wide(INT64_MAX) || value < Wide(INT64_MIN))
    fail(Errc::InvalidValue, "rational arithmetic overflow");
  return static_cast<std::int64_t>(value);
}

// Reduce a wide fraction and narrow it back to 64 bits.
std::pair<std::int64_t, std::int64_t> reduce(Wide num, Wide den) {
  if (den == 0)
    fail(Errc::InvalidValue, "rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  Wide a = num < 0 ? -num : num;
  Wide b = den;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  if (a > 1) {
    num /= a;
    den /= a;
  }
  return {narrow(num), narrow(den)};
}

std::int64_t parse_int(std::string_view text, std::string_view what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    fail(Errc::InvalidValue, "malformed " + std::string(what) + ": '" + std::string(text) + "'");
  return value;
}

} // namespace

Rational::Rational(std::int64_t numer, std::int64_t denom) {
  auto [n, d] = reduce(numer, denom);
  num_ = n;
  den_ = d;
}

Rational Rational::parse(std::string_view text) {
  if (text.empty())
    fail(Errc::InvalidValue, "empty rational literal");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = parse_int(text.substr(0, slash), "numerator");
    auto d = parse_int(text.substr(slash + 1), "denominator");
    if (d == 0)
      fail(Errc::InvalidValue, "rational with zero denominator: '" + std::string(text) + "'");
    return Rational(n, d);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto whole = text.substr(0, dot);
    auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 18)
      fail(Errc::InvalidValue, "malformed decimal: '" + std::string(text) + "'");
    bool negative = !whole.empty() && whole.front() == '-';
    std::int64_t whole_part = whole.empty() || whole == "-" ? 0 : parse_int(whole, "decimal");
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(frac[i])))
        fail(Errc::InvalidValue, "malformed decimal: '" + std::string(text) + "'");
      scale *= 10;
    }
    std::int64_t frac_part = parse_int(frac, "decimal");
    Rational whole_r(whole_part);
    Rational frac_r(negative ? -frac_part : frac_part, scale);
    return whole_r + frac_r;
  }
  return Rational(parse_int(text, "rational"));
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational &Rational::operator+=(const Rational &rhs) {
  auto [n, d] = reduce(Wide(num_) * rhs.den_ + Wide(rhs.num_) * den_, Wide(den_) * rhs.den_);
  num_ = n;
  den_ = d;
  return *this;
}

Rational &Rational::operator-=(const Rational &rhs) { return *this += -rhs; }

Rational &Rational::operator*=(const Rational &rhs) {
  auto [n, d] = reduce(Wide(num_) * rhs.num_, Wide(den_) * rhs.den_);
  num_ = n;
  den_ = d;
  return *this;
}

Rational &Rational::operator/=(const Rational &rhs) {
  if (rhs.num_ == 0)
    fail(Errc::InvalidValue, "rational division by zero");
  auto [n, d] = reduce(Wide(num_) * rhs.den_, Wide(den_) * rhs.num_);
  num_ = n;
  den_ = d;
  return *this;
}

std::strong_ordering Rational::operator<=>(const Rational &rhs) const {
  Wide lhs_cross = Wide(num_) * rhs.den_;
  Wide rhs_cross = Wide(rhs.num_) * den_;
  if (lhs_cross < rhs_cross)
    return std::strong_ordering::less;
  if (lhs_cross > rhs_cross)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Rational::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Rational::to_fraction_string() const {
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal_string(int places) const {
  Wide scale = 1;
  for (int i = 0; i < places; ++i)
    scale *= 10;
  Wide scaled = Wide(num_) * scale;
  Wide whole = scaled / den_;
  Wide rem = scaled % den_;
  if (rem < 0)
    rem = -rem;
  // Round half away from zero.
  if (2 * rem >= Wide(den_))
    whole += (num_ < 0 ? -1 : 1);
  bool negative = whole < 0;
  if (negative)
    whole = -whole;
  std::string digits;
  if (whole == 0)
    digits = "0";
  while (whole > 0) {
    digits.insert(digits.begin(), static_cast<char>('0' + int(whole % 10)));
    whole /= 10;
  }
  while (static_cast<int>(digits.size()) <= places)
    digits.insert(digits.begin(), '0');
  std::string out = digits.substr(0, digits.size() - places);
  if (places > 0)
    out += "." + digits.substr(digits.size() - places);
  if (negative && out.find_first_not_of("0.") != std::string::npos)
    out.insert(out.begin(), '-');
  return out;
}

Rational abs(const Rational &value) {
  return value.numer() < 0 ? -value : value;
}

} // namespace heurbench
