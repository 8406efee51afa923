#include "amalgam/smith.hpp"

#include <utility>

#include "amalgam/error.hpp"

namespace amalgam {

IntMatrix identity_matrix(std::size_t n) {
  IntMatrix m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), std::vector<mpz_class>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t inner = b.size();
  const std::size_t m = inner == 0 ? 0 : b[0].size();
  IntMatrix c(n, std::vector<mpz_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != inner) throw DefectError("matrix dimensions do not match");
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  }
  return c;
}

IntMatrix to_int_matrix(const std::vector<std::vector<long>>& m) {
  IntMatrix out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (long v : m[i]) out[i].emplace_back(v);
  return out;
}

mpz_class determinant(IntMatrix m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  mpz_class sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t swap = k + 1;
      while (swap < n && m[swap][k] == 0) ++swap;
      if (swap == n) return 0;
      std::swap(m[k], m[swap]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

std::vector<mpz_class> SmithDecomposition::invariant_factors() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < D.size() && i < (D.empty() ? 0 : D[0].size()); ++i) out.push_back(D[i][i]);
  return out;
}

namespace {

class Reducer {
 public:
  explicit Reducer(const IntMatrix& m)
      : a_(m), rows_(m.size()), cols_(m.empty() ? 0 : m[0].size()) {
    u_ = identity_matrix(rows_);
    u_inv_ = identity_matrix(rows_);
    v_ = identity_matrix(cols_);
    v_inv_ = identity_matrix(cols_);
  }

  SmithDecomposition run() {
    const std::size_t steps = std::min(rows_, cols_);
    for (std::size_t t = 0; t < steps; ++t) {
      if (!diagonalise(t)) break;
      if (a_[t][t] < 0) negate_row(t);
    }
    return SmithDecomposition{a_, u_, v_, u_inv_, v_inv_};
  }

 private:
  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const mpz_class& c) {
    for (std::size_t k = 0; k < cols_; ++k) a_[i][k] += c * a_[j][k];
    for (std::size_t k = 0; k < rows_; ++k) u_[i][k] += c * u_[j][k];
    for (std::size_t k = 0; k < rows_; ++k) u_inv_[k][j] -= c * u_inv_[k][i];
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const mpz_class& c) {
    for (std::size_t k = 0; k < rows_; ++k) a_[k][i] += c * a_[k][j];
    for (std::size_t k = 0; k < cols_; ++k) v_[k][i] += c * v_[k][j];
    for (std::size_t k = 0; k < cols_; ++k) v_inv_[j][k] -= c * v_inv_[i][k];
  }
  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a_[i], a_[j]);
    std::swap(u_[i], u_[j]);
    for (auto& row : u_inv_) std::swap(row[i], row[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a_) std::swap(row[i], row[j]);
    for (auto& row : v_) std::swap(row[i], row[j]);
    std::swap(v_inv_[i], v_inv_[j]);
  }
  void negate_row(std::size_t i) {
    for (auto& x : a_[i]) x = -x;
    for (auto& x : u_[i]) x = -x;
    for (auto& row : u_inv_) row[i] = -row[i];
  }

  // Brings a_[t][t] to the gcd of the remaining block and clears its row and
  // column. Returns false when the remaining block is zero.
  bool diagonalise(std::size_t t) {
    while (true) {
      std::size_t pi = rows_, pj = cols_;
      for (std::size_t i = t; i < rows_; ++i)
        for (std::size_t j = t; j < cols_; ++j)
          if (a_[i][j] != 0 && (pi == rows_ || abs(a_[i][j]) < abs(a_[pi][pj]))) {
            pi = i;
            pj = j;
          }
      if (pi == rows_) return false;
      swap_rows(t, pi);
      swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows_; ++i) {
        if (a_[i][t] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a_[i][t].get_mpz_t(), a_[t][t].get_mpz_t());
        add_row(i, t, -q);
        if (a_[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols_; ++j) {
        if (a_[t][j] == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), a_[t][j].get_mpz_t(), a_[t][t].get_mpz_t());
        add_col(j, t, -q);
        if (a_[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < rows_ && divides; ++i)
        for (std::size_t j = t + 1; j < cols_; ++j)
          if (!mpz_divisible_p(a_[i][j].get_mpz_t(), a_[t][t].get_mpz_t())) {
            add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides) return true;
    }
  }

  IntMatrix a_;
  std::size_t rows_, cols_;
  IntMatrix u_, u_inv_, v_, v_inv_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  for (const auto& row : m)
    if (row.size() != m[0].size()) throw DefectError("ragged integer matrix");
  return Reducer(m).run();
}

}  // namespace amalgam
