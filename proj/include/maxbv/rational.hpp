#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace maxbv {

/// Exact rational scalar. Always canonical: denominator > 0, lowest terms.
/// Every arithmetic operation is exact; conversion to binary64 rounds once.
class Rat {
public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}
  Rat(long n) : q_(static_cast<signed long>(n)) {}
  Rat(long num, long den);
  explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Accepts "p/q", an integer literal, or a decimal/scientific literal.
  /// Decimals are read through binary64 and kept as the exact dyadic value.
  static Rat parse(const std::string& s);

  /// Exact value of a finite binary64 (dyadic rational).
  static Rat from_double(double x);

  /// 2^e for e possibly negative.
  static Rat pow2(long e);

  double to_double() const { return q_.get_d(); }
  std::string to_string() const { return q_.get_str(); }
  const mpq_class& raw() const { return q_; }

  std::string num_string() const { return q_.get_num().get_str(); }
  std::string den_string() const { return q_.get_den().get_str(); }

  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  bool is_integer() const { return q_.get_den() == 1; }

  Rat abs() const;
  /// |this|^k for k >= 0, exact.
  Rat pow_uint(unsigned k) const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ + b.q_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ - b.q_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.q_ * b.q_)); }
  friend Rat operator/(const Rat& a, const Rat& b);
  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return mpq_cmp(a.q_.get_mpq_t(), b.q_.get_mpq_t()) < 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  mpq_class q_;
};

inline Rat abs(const Rat& r) { return r.abs(); }
inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

/// Fixed-point accumulator: sums floor(x * 2^bits) exactly, so the result is a
/// certified lower bound of the true sum with error < n * 2^-bits. Keeps long
/// sums of heterogeneous-denominator rationals cheap.
class FixedPointSum {
public:
  explicit FixedPointSum(unsigned bits = 120) : bits_(bits), acc_(0) {}
  void add_floor(const Rat& x);
  Rat value() const;
  double to_double() const { return value().to_double(); }

private:
  unsigned bits_;
  mpz_class acc_;
};

}  // namespace maxbv
