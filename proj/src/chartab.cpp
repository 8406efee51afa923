#include "amalgam/chartab.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

#include "amalgam/error.hpp"

namespace amalgam {

namespace {

using u64 = std::uint64_t;
using Row = std::vector<u64>;
using Matrix = std::vector<Row>;

struct Field {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % p); }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const {
    if (a % p == 0) throw DefectError("inverting zero modulo p");
    return pow(a, p - 2);
  }
  u64 from(long v) const {
    const long m = v % static_cast<long>(p);
    return static_cast<u64>(m < 0 ? m + static_cast<long>(p) : m);
  }
};

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Element of exact multiplicative order e in F_p (e divides p-1).
u64 root_of_order(const Field& f, u64 e) {
  const auto qs = prime_factors(e);
  for (u64 a = 2; a < f.p; ++a) {
    const u64 z = f.pow(a, (f.p - 1) / e);
    bool primitive = true;
    for (u64 q : qs) primitive = primitive && f.pow(z, e / q) != 1;
    if (primitive) return z;
  }
  if (e == 1) return 1;
  throw DefectError("no root of unity of the requested order");
}

/// Rows spanning the null space of m (n x n) over F_p.
Matrix null_space(const Field& f, Matrix m) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  std::vector<int> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    const u64 iv = f.inv(m[r][c]);
    for (auto& v : m[r]) v = f.mul(v, iv);
    for (std::size_t o = 0; o < rows; ++o) {
      if (o == r || m[o][c] == 0) continue;
      const u64 factor = m[o][c];
      for (std::size_t t = 0; t < cols; ++t) m[o][t] = f.sub(m[o][t], f.mul(factor, m[r][t]));
    }
    pivot_col.push_back(static_cast<int>(c));
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Row v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = f.sub(0, m[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

/// Reduced row echelon form; returns pivot columns.
std::vector<int> echelon(const Field& f, Matrix& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = r;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[sel], m[r]);
    const u64 iv = f.inv(m[r][c]);
    for (auto& v : m[r]) v = f.mul(v, iv);
    for (std::size_t o = 0; o < m.size(); ++o) {
      if (o == r || m[o][c] == 0) continue;
      const u64 factor = m[o][c];
      for (std::size_t t = 0; t < cols; ++t) m[o][t] = f.sub(m[o][t], f.mul(factor, m[r][t]));
    }
    pivots.push_back(static_cast<int>(c));
    ++r;
  }
  m.resize(r);
  return pivots;
}

/// Characteristic polynomial by Faddeev-LeVerrier, constant term first.
std::vector<u64> char_poly(const Field& f, const Matrix& a) {
  const std::size_t n = a.size();
  std::vector<u64> c(n + 1, 0);
  c[n] = 1;
  Matrix m(n, Row(n, 0));
  for (std::size_t k = 1; k <= n; ++k) {
    // m <- a*m + c[n-k+1] I
    Matrix next(n, Row(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) {
        if (a[i][t] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) next[i][j] = f.add(next[i][j], f.mul(a[i][t], m[t][j]));
      }
    for (std::size_t i = 0; i < n; ++i) next[i][i] = f.add(next[i][i], c[n - k + 1]);
    m = std::move(next);
    u64 trace = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t t = 0; t < n; ++t) trace = f.add(trace, f.mul(a[i][t], m[t][i]));
    c[n - k] = f.sub(0, f.mul(trace, f.inv(k)));
  }
  return c;
}

std::vector<u64> roots(const Field& f, const std::vector<u64>& poly) {
  std::vector<u64> out;
  for (u64 x = 0; x < f.p; ++x) {
    u64 v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = f.add(f.mul(v, x), poly[i]);
    if (v == 0) out.push_back(x);
  }
  return out;
}

// Class-algebra structure constants c[j][k][l] = #{(x, y) : x in C_j, y in C_k, xy = z_l}.
std::vector<std::vector<std::vector<long>>> structure_constants(const FiniteGroup& g,
                                                                const ConjugacyClasses& cc) {
  const int r = cc.size();
  std::vector<std::vector<std::vector<long>>> c(r, std::vector<std::vector<long>>(r, std::vector<long>(r, 0)));
  for (int l = 0; l < r; ++l) {
    const Element z = cc.classes[l].front();
    for (Element x = 0; x < g.order(); ++x) {
      const Element y = g.mul(g.inv(x), z);
      ++c[cc.class_of[x]][cc.class_of[y]][l];
    }
  }
  return c;
}

bool row_less(const CharacterTable& t, int a, int b) {
  if (t.degrees[a] != t.degrees[b]) return t.degrees[a] < t.degrees[b];
  auto trivial = [&](int k) {
    for (const auto& v : t.values[k])
      if (!(v == Cyclotomic(1L))) return false;
    return true;
  };
  const bool ta = trivial(a), tb = trivial(b);
  if (ta != tb) return ta;
  for (std::size_t c = 0; c < t.values[a].size(); ++c) {
    const int cmp = Cyclotomic::compare(t.values[a][c], t.values[b][c]);
    if (cmp != 0) return cmp > 0;
  }
  return false;
}

void sort_rows(CharacterTable& t) {
  std::vector<int> order(t.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return row_less(t, a, b); });
  CharacterTable sorted = t;
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.values[i] = t.values[order[i]];
    sorted.degrees[i] = t.degrees[order[i]];
  }
  t = std::move(sorted);
}

}  // namespace

CharacterTable character_table(const FiniteGroup& group) {
  CharacterTable table;
  table.classes = conjugacy_classes(group);
  const ConjugacyClasses& cc = table.classes;
  const int r = cc.size();
  const int n = group.order();
  const int e = group.exponent();
  table.conductor = e;

  u64 p = static_cast<u64>(e) * ((2 * static_cast<u64>(n)) / e + 1) + 1;
  while (!is_prime(p)) p += e;
  const Field f{p};

  const auto c = structure_constants(group, cc);
  std::vector<long> class_size(r);
  std::vector<int> inverse_class(r);
  for (int j = 0; j < r; ++j) {
    class_size[j] = static_cast<long>(cc.classes[j].size());
    inverse_class[j] = cc.class_of[group.inv(cc.classes[j].front())];
  }

  // Split F_p^r into common eigenspaces of the class matrices M_j, where
  // (M_j)[k][l] = c[j][k][l].
  std::vector<Matrix> spaces;
  {
    Matrix all(r, Row(r, 0));
    for (int i = 0; i < r; ++i) all[i][i] = 1;
    spaces.push_back(std::move(all));
  }
  for (int j = 1; j < r; ++j) {
    std::vector<Matrix> next;
    for (auto& space : spaces) {
      if (space.size() == 1) {
        next.push_back(std::move(space));
        continue;
      }
      Matrix basis = space;
      const std::vector<int> pivots = echelon(f, basis);
      const std::size_t d = basis.size();
      // restricted[s][t]: coordinate s of M_j b_t
      Matrix restricted(d, Row(d, 0));
      for (std::size_t t = 0; t < d; ++t) {
        for (std::size_t s = 0; s < d; ++s) {
          const int k = pivots[s];
          u64 v = 0;
          for (int l = 0; l < r; ++l)
            if (c[j][k][l] != 0 && basis[t][l] != 0) v = f.add(v, f.mul(f.from(c[j][k][l]), basis[t][l]));
          restricted[s][t] = v;
        }
      }
      const auto eigen = roots(f, char_poly(f, restricted));
      if (eigen.size() == 1) {
        next.push_back(std::move(basis));
        continue;
      }
      std::size_t covered = 0;
      for (u64 lambda : eigen) {
        Matrix shifted = restricted;
        for (std::size_t s = 0; s < d; ++s) shifted[s][s] = f.sub(shifted[s][s], lambda);
        Matrix coords = null_space(f, shifted);
        Matrix sub;
        for (const auto& v : coords) {
          Row w(r, 0);
          for (std::size_t t = 0; t < d; ++t)
            if (v[t] != 0)
              for (int l = 0; l < r; ++l) w[l] = f.add(w[l], f.mul(v[t], basis[t][l]));
          sub.push_back(std::move(w));
        }
        covered += sub.size();
        next.push_back(std::move(sub));
      }
      if (covered != d) throw DefectError("class algebra did not split modulo p");
    }
    spaces = std::move(next);
  }
  if (static_cast<int>(spaces.size()) != r)
    throw DefectError("class algebra split into the wrong number of eigenspaces");

  const u64 z = root_of_order(f, static_cast<u64>(e));
  const u64 e_inv = f.inv(static_cast<u64>(e));
  // power_class[c][l]: class of g^l for g in class c
  std::vector<std::vector<int>> power_class(r, std::vector<int>(e));
  for (int cl = 0; cl < r; ++cl) {
    Element x = 0;
    for (int l = 0; l < e; ++l) {
      power_class[cl][l] = cc.class_of[x];
      x = group.mul(x, cc.classes[cl].front());
    }
  }

  for (const auto& space : spaces) {
    Row w = space.front();
    const u64 s0 = f.inv(w[0]);
    for (auto& v : w) v = f.mul(v, s0);
    u64 sum = 0;
    for (int j = 0; j < r; ++j)
      sum = f.add(sum, f.mul(f.mul(w[j], w[inverse_class[j]]), f.inv(f.from(class_size[j]))));
    const u64 d2 = f.mul(f.from(n), f.inv(sum));
    int degree = 0;
    for (int d = 1; d * d <= n; ++d)
      if (f.from(static_cast<long>(d) * d) == d2) degree = d;
    if (degree == 0) throw DefectError("character degree not recovered modulo p");

    Row chi(r);
    for (int j = 0; j < r; ++j)
      chi[j] = f.mul(f.mul(f.from(degree), w[j]), f.inv(f.from(class_size[j])));

    std::vector<Cyclotomic> row;
    row.reserve(r);
    for (int cl = 0; cl < r; ++cl) {
      Cyclotomic value = Cyclotomic::zero(e);
      for (int k = 0; k < e; ++k) {
        u64 m = 0;
        for (int l = 0; l < e; ++l) {
          const u64 zeta_pow = f.pow(z, static_cast<u64>((e - (static_cast<long>(k) * l) % e) % e));
          m = f.add(m, f.mul(chi[power_class[cl][l]], zeta_pow));
        }
        m = f.mul(m, e_inv);
        if (m > static_cast<u64>(degree)) throw DefectError("eigenvalue multiplicity out of range");
        if (m != 0) value += Cyclotomic::root_of_unity(e, k) * mpq_class(static_cast<long>(m));
      }
      row.push_back(value.promote(e));
    }
    table.values.push_back(std::move(row));
    table.degrees.push_back(degree);
  }

  sort_rows(table);
  const auto check = check_orthogonality(group, table);
  if (!check.ok()) throw DefectError("computed character table failed: " + check.detail);
  return table;
}

CharacterTable character_table_from_values(const FiniteGroup& group,
                                           const std::vector<std::string>& class_labels,
                                           const std::vector<std::vector<Cyclotomic>>& rows) {
  CharacterTable table;
  table.classes = conjugacy_classes(group);
  const int r = table.classes.size();
  if (static_cast<int>(class_labels.size()) != r)
    throw SpecError("character table lists " + std::to_string(class_labels.size()) +
                    " classes, the group has " + std::to_string(r));
  if (static_cast<int>(rows.size()) != r)
    throw SpecError("character table needs " + std::to_string(r) + " rows, got " +
                    std::to_string(rows.size()));
  std::vector<int> column_of(r, -1);
  for (int i = 0; i < r; ++i) {
    const int cl = table.classes.class_of[group.element(class_labels[i])];
    if (column_of[cl] >= 0)
      throw SpecError("character table lists class of '" + class_labels[i] + "' twice");
    column_of[cl] = i;
  }
  int conductor = 1;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != r)
      throw SpecError("character table row has " + std::to_string(row.size()) + " values, expected " +
                      std::to_string(r));
    for (const auto& v : row) conductor = std::lcm(conductor, v.conductor());
  }
  table.conductor = conductor;
  for (const auto& row : rows) {
    std::vector<Cyclotomic> values(r);
    for (int cl = 0; cl < r; ++cl) values[cl] = row[column_of[cl]].promote(conductor);
    const Cyclotomic& at_e = values[0];
    if (!at_e.is_rational() || at_e.rational() <= 0 || at_e.rational().get_den() != 1)
      throw SpecError("character degree " + at_e.to_string() + " is not a positive integer");
    table.degrees.push_back(static_cast<int>(at_e.rational().get_num().get_si()));
    table.values.push_back(std::move(values));
  }
  const auto check = check_orthogonality(group, table);
  if (!check.ok()) throw SpecError("supplied character table rejected: " + check.detail);
  return table;
}

OrthogonalityCheck check_orthogonality(const FiniteGroup& group, const CharacterTable& table) {
  OrthogonalityCheck out;
  const auto& cc = table.classes;
  const int r = cc.size();
  const int n = group.order();

  out.rows = true;
  for (int a = 0; a < table.size() && out.rows; ++a)
    for (int b = 0; b < table.size() && out.rows; ++b) {
      Cyclotomic s(0L);
      for (int c = 0; c < r; ++c)
        s += table.at(a, c) * table.at(b, c).conj() * mpq_class(static_cast<long>(cc.classes[c].size()));
      s /= mpq_class(n);
      if (!(s == Cyclotomic(a == b ? 1L : 0L))) {
        out.rows = false;
        out.detail = "row orthogonality fails for rows " + std::to_string(a) + ", " + std::to_string(b);
      }
    }

  out.columns = table.size() == r;
  if (!out.columns && out.detail.empty()) out.detail = "number of rows differs from number of classes";
  for (int c = 0; c < r && out.columns; ++c)
    for (int d = 0; d < r && out.columns; ++d) {
      Cyclotomic s(0L);
      for (int k = 0; k < table.size(); ++k) s += table.at(k, c) * table.at(k, d).conj();
      const long expect = c == d ? n / static_cast<long>(cc.classes[c].size()) : 0;
      if (!(s == Cyclotomic(expect))) {
        out.columns = false;
        out.detail = "column orthogonality fails for classes " + std::to_string(c) + ", " + std::to_string(d);
      }
    }

  long square_sum = 0;
  out.degrees = true;
  for (int k = 0; k < table.size(); ++k) {
    square_sum += static_cast<long>(table.degrees[k]) * table.degrees[k];
    if (!(table.at(k, 0) == Cyclotomic(static_cast<long>(table.degrees[k])))) out.degrees = false;
  }
  if (square_sum != n) out.degrees = false;
  if (!out.degrees && out.detail.empty()) out.detail = "degrees inconsistent with the group order";
  return out;
}

std::vector<Cyclotomic> twisted_character(const CharacterTable& table, int l,
                                          const SubgroupEmbedding& embedding, Element x,
                                          const std::vector<Element>& stabilizer) {
  const FiniteGroup& g = embedding.ambient();
  std::vector<Cyclotomic> out;
  out.reserve(stabilizer.size());
  for (Element h : stabilizer) {
    const auto conj = embedding.preimage(g.mul(g.mul(g.inv(x), embedding.image(h)), x));
    if (!conj) throw DefectError("twisted argument left the subgroup; stabilizer is wrong");
    out.push_back(table.on(l, *conj));
  }
  return out;
}

long twisted_inner_product(const CharacterTable& table, int k, int l,
                           const SubgroupEmbedding& embedding, Element x) {
  const auto stab = coset_stabilizer(embedding, x);
  const auto twisted = twisted_character(table, l, embedding, x, stab);
  Cyclotomic s(0L);
  for (std::size_t i = 0; i < stab.size(); ++i) s += table.on(k, stab[i]).conj() * twisted[i];
  s /= mpq_class(static_cast<long>(stab.size()));
  if (!s.is_rational()) throw DefectError("twisted inner product " + s.to_string() + " is not rational");
  const mpq_class q = s.rational();
  if (q.get_den() != 1 || q < 0)
    throw DefectError("twisted inner product " + q.get_str() + " is not a nonnegative integer");
  return q.get_num().get_si();
}

}  // namespace amalgam
