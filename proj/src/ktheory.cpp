#include "amalgam/ktheory.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "amalgam/error.hpp"

namespace amalgam {

std::string AGammaMatrix::vertex_label(int index) const {
  return "(" + std::to_string(factor_of(index) + 1) + "," + std::to_string(character_of(index) + 1) + ")";
}

bool AGammaMatrix::transpose_sensitive() const {
  for (int r = 0; r < size(); ++r)
    for (int c = 0; c < size(); ++c)
      if ((entries[r][c] != 0) != (entries[c][r] != 0)) return true;
  return false;
}

AGammaMatrix build_a_gamma(const AmalgamSpec& spec, const CharacterTable& table) {
  spec.require_finite("the K-theory matrix");
  if (table.classes.class_of.size() != static_cast<std::size_t>(spec.subgroup().order()))
    throw SpecError("character table does not belong to the common subgroup");
  AGammaMatrix a;
  a.factors = spec.size();
  a.characters = table.size();
  a.entries.assign(a.size(), std::vector<long>(a.size(), 0));
  for (int i = 0; i < a.factors; ++i) {
    const Factor& f = spec.factor(i);
    std::vector<std::vector<long>> block(a.characters, std::vector<long>(a.characters, 0));
    for (int d = 0; d < f.doubles.size(); ++d) {
      const Element x = f.doubles.representatives[d];
      if (f.embedding->contains(x)) continue;
      for (int k = 0; k < a.characters; ++k)
        for (int l = 0; l < a.characters; ++l)
          block[k][l] += twisted_inner_product(table, k, l, *f.embedding, x);
    }
    for (int j = 0; j < a.factors; ++j) {
      if (j == i) continue;
      for (int k = 0; k < a.characters; ++k)
        for (int l = 0; l < a.characters; ++l) a.entries[a.index(i, k)][a.index(j, l)] = block[k][l];
    }
  }
  return a;
}

IntMatrix one_minus(const AGammaMatrix& a) {
  IntMatrix m(a.size(), std::vector<mpz_class>(a.size()));
  for (int r = 0; r < a.size(); ++r)
    for (int c = 0; c < a.size(); ++c) m[r][c] = (r == c ? 1 : 0) - a.entries[r][c];
  return m;
}

std::string abelian_group_string(int free_rank, const std::vector<mpz_class>& torsion) {
  std::vector<std::string> parts;
  if (free_rank == 1) parts.push_back("Z");
  if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
  for (const auto& d : torsion) parts.push_back("Z/" + d.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t p = 1; p < parts.size(); ++p) out += " ⊕ " + parts[p];
  return out;
}

std::string KGroups::k0_string() const { return abelian_group_string(k0_free_rank, k0_torsion); }
std::string KGroups::k1_string() const { return abelian_group_string(k1_free_rank, {}); }

KGroups k_groups_from_smith(const SmithDecomposition& snf) {
  KGroups k;
  const std::size_t rows = snf.D.size();
  const std::size_t cols = rows == 0 ? 0 : snf.D[0].size();
  const auto diag = snf.invariant_factors();
  int zeros = 0;
  for (const auto& d : diag) {
    if (d == 0)
      ++zeros;
    else if (d != 1)
      k.k0_torsion.push_back(d);
  }
  k.k0_free_rank = zeros + static_cast<int>(rows - diag.size());
  k.k1_free_rank = zeros + static_cast<int>(cols - diag.size());
  return k;
}

KGroups k_groups(const AGammaMatrix& a) { return k_groups_from_smith(smith_normal_form(one_minus(a))); }

namespace {

std::vector<std::vector<bool>> reachability(const AGammaMatrix& a) {
  const int n = a.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) reach[x][y] = a.entries[x][y] != 0;
  for (int m = 0; m < n; ++m)
    for (int x = 0; x < n; ++x)
      if (reach[x][m])
        for (int y = 0; y < n; ++y)
          if (reach[m][y]) reach[x][y] = true;
  return reach;
}

}  // namespace

bool irreducible(const AGammaMatrix& a) {
  if (a.size() == 0) return false;
  const auto reach = reachability(a);
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < a.size(); ++y)
      if (!reach[x][y]) return false;
  return true;
}

std::vector<int> IdealPoset::saturation(const std::vector<int>& hereditary_subset) const {
  std::vector<int> members;
  for (int c : hereditary_subset) members.insert(members.end(), classes[c].begin(), classes[c].end());
  std::vector<int> out;
  for (int x = 0; x < vertex_count; ++x) {
    bool above = false, under = false;
    for (int m : members) {
      above = above || m == x || reach[m][x];
      under = under || m == x || reach[x][m];
    }
    if (above && under) out.push_back(x);
  }
  return out;
}

IdealPoset ideal_lattice(const AGammaMatrix& a, std::size_t max_subsets) {
  IdealPoset p;
  p.vertex_count = a.size();
  p.reach = reachability(a);
  const int n = p.vertex_count;

  std::vector<int> class_of(n, -1);
  for (int x = 0; x < n; ++x) {
    if (!p.reach[x][x] || class_of[x] >= 0) continue;
    std::vector<int> cls;
    for (int y = x; y < n; ++y)
      if (y == x || (p.reach[x][y] && p.reach[y][x])) {
        class_of[y] = static_cast<int>(p.classes.size());
        cls.push_back(y);
      }
    p.classes.push_back(std::move(cls));
  }

  const int c = static_cast<int>(p.classes.size());
  p.below.assign(c, std::vector<bool>(c, false));
  for (int s = 0; s < c; ++s)
    for (int t = 0; t < c; ++t)
      if (s != t && p.reach[p.classes[s][0]][p.classes[t][0]]) p.below[s][t] = true;

  // Linear extension: a class comes after everything below it.
  std::vector<int> order(c);
  std::iota(order.begin(), order.end(), 0);
  auto down_count = [&](int s) { return std::count(p.below[s].begin(), p.below[s].end(), true); };
  std::stable_sort(order.begin(), order.end(), [&](int s, int t) { return down_count(s) < down_count(t); });

  std::vector<bool> chosen(c, false);
  auto visit = [&](auto&& self, int pos) -> void {
    if (pos == c) {
      if (p.hereditary.size() >= max_subsets)
        throw BudgetExceeded("more than " + std::to_string(max_subsets) + " hereditary subsets");
      std::vector<int> k;
      for (int s = 0; s < c; ++s)
        if (chosen[s]) k.push_back(s);
      p.hereditary.push_back(std::move(k));
      return;
    }
    const int s = order[pos];
    self(self, pos + 1);
    bool closed = true;
    for (int t = 0; t < c && closed; ++t)
      if (p.below[s][t] && !chosen[t]) closed = false;
    if (closed) {
      chosen[s] = true;
      self(self, pos + 1);
      chosen[s] = false;
    }
  };
  visit(visit, 0);
  std::sort(p.hereditary.begin(), p.hereditary.end(), [](const auto& x, const auto& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });

  std::map<std::vector<int>, int> position;
  for (std::size_t k = 0; k < p.hereditary.size(); ++k) position[p.hereditary[k]] = static_cast<int>(k);
  for (std::size_t k = 0; k < p.hereditary.size(); ++k) {
    const auto& small = p.hereditary[k];
    for (int s = 0; s < c; ++s) {
      if (std::binary_search(small.begin(), small.end(), s)) continue;
      auto big = small;
      big.insert(std::upper_bound(big.begin(), big.end(), s), s);
      if (auto it = position.find(big); it != position.end()) p.hasse.emplace_back(static_cast<int>(k), it->second);
    }
  }
  std::sort(p.hasse.begin(), p.hasse.end());
  return p;
}

SimplicityResult simplicity_check(const AmalgamSpec& spec) {
  spec.require_finite("the simplicity check");
  SimplicityResult r;
  for (const auto& f : spec.factors()) r.cores.push_back(normal_core(*f.embedding));
  for (int j = 0; j < spec.size() && !r.simple; ++j) {
    std::vector<Element> meet;
    bool first = true;
    for (int i = 0; i < spec.size(); ++i) {
      if (i == j) continue;
      if (first) {
        meet = r.cores[i];
        first = false;
        continue;
      }
      std::vector<Element> next;
      std::set_intersection(meet.begin(), meet.end(), r.cores[i].begin(), r.cores[i].end(),
                            std::back_inserter(next));
      meet = std::move(next);
    }
    if (meet.size() == 1) {
      r.simple = true;
      r.witness = j;
    }
  }
  return r;
}

}  // namespace amalgam
