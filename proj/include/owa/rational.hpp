#ifndef OWA_RATIONAL_HPP_
#define OWA_RATIONAL_HPP_

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace owa {

/// Exact fraction over 64-bit integers.
///
/// Approximation certificates (prefix-sum ratios of weight vectors) are
/// exact rationals whenever the weights themselves are rational, and some
/// guarantees are stated as exact equalities. This type carries them
/// without rounding. Intermediates are widened to 128 bits; anything that
/// cannot be reduced back into 64 bits throws instead of overflowing.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::int64_t num, std::int64_t den = 1) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    assign(num, den);
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  std::string str() const {
    return den_ == 1 ? std::to_string(num_)
                     : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return reduce(wide(a.num_) * b.den_ + wide(b.num_) * a.den_,
                  wide(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return reduce(wide(a.num_) * b.den_ - wide(b.num_) * a.den_,
                  wide(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return reduce(wide(a.num_) * b.num_, wide(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::invalid_argument("Rational: division by zero");
    return reduce(wide(a.num_) * b.den_, wide(a.den_) * b.num_);
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return wide(a.num_) * b.den_ < wide(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  using Wide = __int128;

  static Wide wide(std::int64_t v) { return static_cast<Wide>(v); }

  static Rational reduce(Wide num, Wide den) {
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
    constexpr Wide lo = static_cast<Wide>(INT64_MIN);
    constexpr Wide hi = static_cast<Wide>(INT64_MAX);
    if (num < lo || num > hi || den > hi)
      throw std::overflow_error("Rational: value does not fit in 64 bits");
    Rational r;
    r.num_ = static_cast<std::int64_t>(num);
    r.den_ = static_cast<std::int64_t>(den);
    return r;
  }

  void assign(std::int64_t num, std::int64_t den) {
    *this = reduce(wide(num), wide(den));
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace owa

#endif  // OWA_RATIONAL_HPP_
