#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ncr/error.hpp"

namespace ncr {

// Exact dyadic rational m * 2^{-k}, m an arbitrary-precision integer,
// k >= 0. Canonical form: m odd, or m == 0 with k == 0.
class Dyadic {
 public:
  Dyadic() : num_(0), exp_(0) {}
  Dyadic(long v) : num_(v), exp_(0) {}          // NOLINT(google-explicit-constructor)
  Dyadic(const mpz_class& numerator, unsigned long exponent)
      : num_(numerator), exp_(exponent) {
    normalize();
  }

  // 2^e for any integer e.
  static Dyadic pow2(long e);

  // Parses "m/2^k" or a plain decimal integer "m".
  static Dyadic parse(const std::string& text);

  const mpz_class& numerator() const { return num_; }
  unsigned long exponent() const { return exp_; }

  bool is_zero() const { return num_ == 0; }
  int sign() const { return sgn(num_); }

  Dyadic operator-() const;
  Dyadic operator+(const Dyadic& o) const;
  Dyadic operator-(const Dyadic& o) const;
  Dyadic operator*(const Dyadic& o) const;
  Dyadic& operator+=(const Dyadic& o) { return *this = *this + o; }
  Dyadic& operator-=(const Dyadic& o) { return *this = *this - o; }
  Dyadic& operator*=(const Dyadic& o) { return *this = *this * o; }

  // Three-way comparison, exact.
  int cmp(const Dyadic& o) const;
  bool operator==(const Dyadic& o) const { return cmp(o) == 0; }
  bool operator!=(const Dyadic& o) const { return cmp(o) != 0; }
  bool operator<(const Dyadic& o) const { return cmp(o) < 0; }
  bool operator<=(const Dyadic& o) const { return cmp(o) <= 0; }
  bool operator>(const Dyadic& o) const { return cmp(o) > 0; }
  bool operator>=(const Dyadic& o) const { return cmp(o) >= 0; }

  // Exact three-way comparison with 2^{-n}; n may be negative.
  int cmp_pow2(long n) const;

  // Text form "m/2^k", m decimal, used verbatim in CLI output and JSON.
  std::string str() const;

  double to_double() const;

 private:
  void normalize();

  mpz_class num_;
  unsigned long exp_;
};

// Closed interval [lo, hi] with dyadic endpoints.
struct DyadicInterval {
  Dyadic lo;
  Dyadic hi;

  DyadicInterval() = default;
  DyadicInterval(Dyadic l, Dyadic h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw ValidationError("DyadicInterval: lo > hi");
  }
  static DyadicInterval point(const Dyadic& v) { return {v, v}; }

  Dyadic width() const { return hi - lo; }
  bool is_point() const { return lo == hi; }
  bool contains(const Dyadic& v) const { return lo <= v && v <= hi; }
  bool contains(const DyadicInterval& o) const {
    return lo <= o.lo && o.hi <= hi;
  }

  DyadicInterval operator+(const DyadicInterval& o) const {
    return {lo + o.lo, hi + o.hi};
  }
};

}  // namespace ncr
