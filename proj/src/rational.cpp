#include "maxbv/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <ostream>

#include "maxbv/errors.hpp"

namespace maxbv {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::NonMonotoneBreakpoints: return "NonMonotoneBreakpoints";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::BreakpointOutsideDomain: return "BreakpointOutsideDomain";
    case ErrorCode::WindowOutsideDomain: return "WindowOutsideDomain";
    case ErrorCode::OutsideDomain: return "OutsideDomain";
    case ErrorCode::NonPositiveR: return "NonPositiveR";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::MarginTooSmall: return "MarginTooSmall";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::NonPositiveT: return "NonPositiveT";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Error";
}

Rat::Rat(long num, long den) {
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator");
  q_ = mpq_class(num, den);
  q_.canonicalize();
}

Rat Rat::parse(const std::string& s) {
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    try {
      mpq_class q(s);
      if (q.get_den() == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + s + "'");
      q.canonicalize();
      return Rat(q);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "bad rational literal '" + s + "'");
    }
  }
  bool integral = true;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '+' || c == '-') {
      if (i != 0) integral = false;
    } else if (!std::isdigit(static_cast<unsigned char>(c))) {
      integral = false;
    }
  }
  if (integral) {
    try {
      mpq_class q(s);
      q.canonicalize();
      return Rat(q);
    } catch (const std::invalid_argument&) {
      throw Error(ErrorCode::ParseError, "bad integer literal '" + s + "'");
    }
  }
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0' || !std::isfinite(v))
    throw Error(ErrorCode::ParseError, "bad numeric literal '" + s + "'");
  return from_double(v);
}

Rat Rat::from_double(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::NonFiniteValue, "double is not finite");
  mpq_class q;
  mpq_set_d(q.get_mpq_t(), x);  // exact
  return Rat(q);
}

Rat Rat::pow2(long e) {
  mpq_class q(1);
  if (e >= 0)
    mpq_mul_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(e));
  else
    mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), static_cast<unsigned long>(-e));
  return Rat(q);
}

Rat operator/(const Rat& a, const Rat& b) {
  if (b.is_zero()) throw Error(ErrorCode::ParseError, "division by zero");
  return Rat(mpq_class(a.q_ / b.q_));
}

Rat Rat::abs() const {
  mpq_class r;
  mpq_abs(r.get_mpq_t(), q_.get_mpq_t());
  return Rat(r);
}

Rat Rat::pow_uint(unsigned k) const {
  Rat base = abs();
  Rat out(1);
  while (k > 0) {
    if (k & 1u) out *= base;
    base *= base;
    k >>= 1u;
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

void FixedPointSum::add_floor(const Rat& x) {
  mpz_class scaled_num = x.raw().get_num();
  mpz_class t;
  mpz_mul_2exp(t.get_mpz_t(), scaled_num.get_mpz_t(), bits_);
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), t.get_mpz_t(), x.raw().get_den().get_mpz_t());
  acc_ += q;
}

Rat FixedPointSum::value() const {
  mpq_class q(acc_);
  mpq_div_2exp(q.get_mpq_t(), q.get_mpq_t(), bits_);
  q.canonicalize();
  return Rat(q);
}

}  // namespace maxbv
