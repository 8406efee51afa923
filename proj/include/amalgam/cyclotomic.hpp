#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <string_view>
#include <vector>

namespace amalgam {

/// Exact element of the cyclotomic field Q(zeta_m), stored as rational
/// coefficients over zeta_m^0 .. zeta_m^(phi(m)-1), i.e. reduced modulo the
/// m-th cyclotomic polynomial. Values of different conductors are promoted to
/// the least common multiple when combined.
class Cyclotomic {
 public:
  Cyclotomic() : Cyclotomic(1) {}
  Cyclotomic(long value);  // NOLINT(google-explicit-constructor)
  explicit Cyclotomic(const mpq_class& value);

  static Cyclotomic zero(int conductor);
  /// zeta_m^k
  static Cyclotomic root_of_unity(int m, long k);
  /// Parses sums such as "1 - 2*zeta(3,1) + zeta(3,2)" or "1/2".
  static Cyclotomic parse(std::string_view text);

  int conductor() const { return conductor_; }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }

  /// Same value expressed over a multiple of the current conductor.
  Cyclotomic promote(int multiple) const;

  Cyclotomic conj() const;
  bool is_zero() const;
  bool is_rational() const;
  /// Requires is_rational().
  mpq_class rational() const;

  std::complex<double> to_complex() const;
  std::string to_string() const;

  Cyclotomic& operator+=(const Cyclotomic& other);
  Cyclotomic& operator-=(const Cyclotomic& other);
  Cyclotomic& operator*=(const Cyclotomic& other);
  Cyclotomic& operator*=(const mpq_class& scalar);
  Cyclotomic& operator/=(const mpq_class& scalar);

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
  friend Cyclotomic operator*(Cyclotomic a, const mpq_class& s) { return a *= s; }
  friend Cyclotomic operator/(Cyclotomic a, const mpq_class& s) { return a /= s; }
  Cyclotomic operator-() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

  /// Total order on values of equal conductor: lexicographic on the reduced
  /// coefficient vectors. Used only to make tables deterministic.
  static int compare(const Cyclotomic& a, const Cyclotomic& b);

 private:
  explicit Cyclotomic(int conductor, std::vector<mpq_class> coeffs)
      : conductor_(conductor), coeffs_(std::move(coeffs)) {}
  void unify(Cyclotomic& other);

  int conductor_ = 1;
  std::vector<mpq_class> coeffs_;
};

/// Coefficients of the m-th cyclotomic polynomial, constant term first.
std::vector<long> cyclotomic_polynomial(int m);

}  // namespace amalgam
