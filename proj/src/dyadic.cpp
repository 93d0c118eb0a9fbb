#include "ncr/dyadic.hpp"

#include <cctype>

namespace ncr {

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  unsigned long tz = mpz_scan1(num_.get_mpz_t(), 0);
  if (tz > exp_) tz = exp_;
  if (tz > 0) {
    num_ >>= tz;
    exp_ -= tz;
  }
}

Dyadic Dyadic::pow2(long e) {
  if (e >= 0) {
    mpz_class m = 1;
    m <<= static_cast<unsigned long>(e);
    return Dyadic(m, 0);
  }
  return Dyadic(1, static_cast<unsigned long>(-e));
}

Dyadic Dyadic::operator-() const {
  Dyadic r;
  r.num_ = -num_;
  r.exp_ = exp_;
  return r;
}

Dyadic Dyadic::operator+(const Dyadic& o) const {
  unsigned long k = std::max(exp_, o.exp_);
  mpz_class a = num_ << (k - exp_);
  mpz_class b = o.num_ << (k - o.exp_);
  return Dyadic(a + b, k);
}

Dyadic Dyadic::operator-(const Dyadic& o) const { return *this + (-o); }

Dyadic Dyadic::operator*(const Dyadic& o) const {
  return Dyadic(num_ * o.num_, exp_ + o.exp_);
}

int Dyadic::cmp(const Dyadic& o) const {
  unsigned long k = std::max(exp_, o.exp_);
  mpz_class a = num_ << (k - exp_);
  mpz_class b = o.num_ << (k - o.exp_);
  return ::cmp(a, b) < 0 ? -1 : (a == b ? 0 : 1);
}

int Dyadic::cmp_pow2(long n) const {
  // m * 2^{-k}  vs  2^{-n}  <=>  m  vs  2^{k-n}
  if (sign() <= 0) return sign() == 0 ? -1 : -1;
  long shift = static_cast<long>(exp_) - n;
  mpz_class rhs = 1;
  mpz_class lhs = num_;
  if (shift >= 0) {
    rhs <<= static_cast<unsigned long>(shift);
  } else {
    lhs <<= static_cast<unsigned long>(-shift);
  }
  int c = ::cmp(lhs, rhs);
  return c < 0 ? -1 : (c == 0 ? 0 : 1);
}

std::string Dyadic::str() const {
  return num_.get_str() + "/2^" + std::to_string(exp_);
}

double Dyadic::to_double() const {
  mpq_class q(num_, mpz_class(1) << exp_);
  q.canonicalize();
  return q.get_d();
}

Dyadic Dyadic::parse(const std::string& text) {
  auto bad = [&] { throw ParseError("bad dyadic literal: '" + text + "'"); };
  std::size_t slash = text.find('/');
  std::string mpart = slash == std::string::npos ? text : text.substr(0, slash);
  if (mpart.empty()) bad();
  {
    std::size_t i = (mpart[0] == '-' || mpart[0] == '+') ? 1 : 0;
    if (i == mpart.size()) bad();
    for (; i < mpart.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(mpart[i]))) bad();
  }
  mpz_class m(mpart, 10);
  if (slash == std::string::npos) return Dyadic(m, 0);
  std::string rest = text.substr(slash + 1);
  if (rest.size() < 3 || rest[0] != '2' || rest[1] != '^') bad();
  std::string kpart = rest.substr(2);
  for (char c : kpart)
    if (!std::isdigit(static_cast<unsigned char>(c))) bad();
  if (kpart.empty() || kpart.size() > 9) bad();
  return Dyadic(m, std::stoul(kpart));
}

}  // namespace ncr
