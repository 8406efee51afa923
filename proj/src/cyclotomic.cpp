#include "amalgam/cyclotomic.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "amalgam/error.hpp"

namespace amalgam {

namespace {

std::vector<long> poly_div_exact(std::vector<long> num, const std::vector<long>& den) {
  // den monic
  const std::size_t dn = den.size() - 1;
  std::vector<long> q(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const long c = num[k];
    q[k - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[k - dn + j] -= c * den[j];
  }
  for (std::size_t j = 0; j < dn; ++j)
    if (num[j] != 0) throw DefectError("cyclotomic polynomial division left a remainder");
  return q;
}

/// x^k mod Phi_m for k = 0..m-1.
struct PowerBasis {
  int m = 1;
  int phi = 1;
  std::vector<std::vector<long>> power;
};

std::shared_ptr<const PowerBasis> basis(int m) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const PowerBasis>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(m); it != cache.end()) return it->second;

  auto b = std::make_shared<PowerBasis>();
  b->m = m;
  const std::vector<long> phi_m = cyclotomic_polynomial(m);
  b->phi = static_cast<int>(phi_m.size()) - 1;
  b->power.assign(m, std::vector<long>(b->phi, 0));
  std::vector<long> cur(b->phi, 0);
  cur[0] = 1;
  for (int k = 0; k < m; ++k) {
    b->power[k] = cur;
    // multiply by x and reduce
    const long top = cur[b->phi - 1];
    for (int j = b->phi - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (top != 0)
      for (int j = 0; j < b->phi; ++j) cur[j] -= top * phi_m[j];
  }
  cache.emplace(m, b);
  return b;
}

}  // namespace

std::vector<long> cyclotomic_polynomial(int m) {
  if (m < 1) throw SpecError("cyclotomic conductor must be positive");
  std::vector<long> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) num = poly_div_exact(num, cyclotomic_polynomial(d));
  return num;
}

Cyclotomic::Cyclotomic(long value) : conductor_(1), coeffs_{mpq_class(value)} {}
Cyclotomic::Cyclotomic(const mpq_class& value) : conductor_(1), coeffs_{value} {}

Cyclotomic Cyclotomic::zero(int conductor) {
  return Cyclotomic(conductor, std::vector<mpq_class>(basis(conductor)->phi));
}

Cyclotomic Cyclotomic::root_of_unity(int m, long k) {
  const auto b = basis(m);
  const long r = ((k % m) + m) % m;
  std::vector<mpq_class> c(b->phi);
  for (int j = 0; j < b->phi; ++j) c[j] = b->power[r][j];
  return Cyclotomic(m, std::move(c));
}

Cyclotomic Cyclotomic::promote(int multiple) const {
  if (multiple % conductor_ != 0) throw DefectError("promotion to a non-multiple conductor");
  if (multiple == conductor_) return *this;
  const auto b = basis(multiple);
  const int step = multiple / conductor_;
  std::vector<mpq_class> c(b->phi);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& p = b->power[(static_cast<long>(j) * step) % multiple];
    for (int t = 0; t < b->phi; ++t)
      if (p[t] != 0) c[t] += coeffs_[j] * p[t];
  }
  return Cyclotomic(multiple, std::move(c));
}

void Cyclotomic::unify(Cyclotomic& other) {
  if (conductor_ == other.conductor_) return;
  const int l = std::lcm(conductor_, other.conductor_);
  *this = promote(l);
  other = other.promote(l);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& other) {
  Cyclotomic o = other;
  unify(o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& other) {
  Cyclotomic o = other;
  unify(o);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& other) {
  Cyclotomic o = other;
  unify(o);
  const auto b = basis(conductor_);
  std::vector<mpq_class> c(b->phi);
  for (int i = 0; i < b->phi; ++i) {
    if (coeffs_[i] == 0) continue;
    for (int j = 0; j < b->phi; ++j) {
      if (o.coeffs_[j] == 0) continue;
      const mpq_class prod = coeffs_[i] * o.coeffs_[j];
      const auto& p = b->power[(i + j) % conductor_];
      for (int t = 0; t < b->phi; ++t)
        if (p[t] != 0) c[t] += prod * p[t];
    }
  }
  coeffs_ = std::move(c);
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const mpq_class& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

Cyclotomic& Cyclotomic::operator/=(const mpq_class& scalar) {
  if (scalar == 0) throw DefectError("division of a cyclotomic by zero");
  for (auto& c : coeffs_) c /= scalar;
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Cyclotomic Cyclotomic::conj() const {
  const auto b = basis(conductor_);
  std::vector<mpq_class> c(b->phi);
  for (int j = 0; j < b->phi; ++j) {
    if (coeffs_[j] == 0) continue;
    const auto& p = b->power[(conductor_ - j) % conductor_];
    for (int t = 0; t < b->phi; ++t)
      if (p[t] != 0) c[t] += coeffs_[j] * p[t];
  }
  return Cyclotomic(conductor_, std::move(c));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

mpq_class Cyclotomic::rational() const {
  if (!is_rational()) throw DefectError("cyclotomic value " + to_string() + " is not rational");
  return coeffs_[0];
}

std::complex<double> Cyclotomic::to_complex() const {
  std::complex<double> z = 0;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    if (coeffs_[j] == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / conductor_;
    z += coeffs_[j].get_d() * std::polar(1.0, angle);
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t j = 0; j < coeffs_.size(); ++j) {
    const mpq_class& c = coeffs_[j];
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpq_class mag = negative ? mpq_class(-c) : c;
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (j == 0) {
      out += mag.get_str();
    } else {
      if (mag != 1) out += mag.get_str() + "*";
      out += "zeta(" + std::to_string(conductor_) + "," + std::to_string(j) + ")";
    }
  }
  return out.empty() ? "0" : out;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.conductor_ == b.conductor_) return a.coeffs_ == b.coeffs_;
  const int l = std::lcm(a.conductor_, b.conductor_);
  return a.promote(l).coeffs_ == b.promote(l).coeffs_;
}

int Cyclotomic::compare(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic x = a, y = b;
  x.unify(y);
  for (std::size_t j = 0; j < x.coeffs_.size(); ++j) {
    const int c = cmp(x.coeffs_[j], y.coeffs_[j]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

Cyclotomic Cyclotomic::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw SpecError("cyclotomic value '" + std::string(text) + "': " + what);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto read_int = [&]() -> long {
    skip();
    const std::size_t start = pos;
    long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      v = v * 10 + (text[pos++] - '0');
    if (start == pos) fail("expected an integer");
    return v;
  };
  auto peek_is = [&](std::string_view word) {
    skip();
    return text.substr(pos, word.size()) == word;
  };

  Cyclotomic total(0L);
  skip();
  bool first = true;
  while (pos < text.size()) {
    int sign = 1;
    skip();
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!first) {
      fail("expected '+' or '-'");
    }
    first = false;
    mpq_class coeff = 1;
    bool have_coeff = false;
    skip();
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      const long num = read_int();
      long den = 1;
      skip();
      if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = read_int();
        if (den == 0) fail("zero denominator");
      }
      coeff = mpq_class(num, den);
      coeff.canonicalize();
      have_coeff = true;
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        have_coeff = false;  // a zeta factor must follow
      } else {
        total += Cyclotomic(mpq_class(sign * coeff));
        continue;
      }
    }
    if (!peek_is("zeta")) {
      fail(have_coeff ? "unexpected input" : "expected zeta(m,k)");
    }
    pos += 4;
    skip();
    if (pos >= text.size() || text[pos] != '(') fail("expected '('");
    ++pos;
    const long m = read_int();
    skip();
    if (pos >= text.size() || text[pos] != ',') fail("expected ','");
    ++pos;
    skip();
    long k_sign = 1;
    if (pos < text.size() && text[pos] == '-') {
      k_sign = -1;
      ++pos;
    }
    const long k = k_sign * read_int();
    skip();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    ++pos;
    if (m < 1 || m > 100000) fail("conductor out of range");
    total += root_of_unity(static_cast<int>(m), k) * mpq_class(sign * coeff);
  }
  if (first) fail("empty value");
  return total;
}

}  // namespace amalgam
