#pragma once

// The integer matrix A_Γ indexed by (factor, irreducible character of H),
// its K-groups, reachability poset and the core-based simplicity test.

#include <string>
#include <vector>

#include "amalgam/chartab.hpp"
#include "amalgam/product.hpp"
#include "amalgam/smith.hpp"

namespace amalgam {

struct AGammaMatrix {
  int factors = 0;
  int characters = 0;
  /// entries[row][col], rows and columns ordered factor-major.
  std::vector<std::vector<long>> entries;

  int size() const { return factors * characters; }
  int index(int factor, int character) const { return factor * characters + character; }
  int factor_of(int index) const { return index / characters; }
  int character_of(int index) const { return index % characters; }
  long operator()(int row, int col) const { return entries[row][col]; }
  /// "(i,k)" with 1-based indices.
  std::string vertex_label(int index) const;
  /// True when the zero pattern is not symmetric, so reading the matrix
  /// transposed would reverse edges of the reachability digraph.
  bool transpose_sensitive() const;
};

/// Entry (row (i,k), column (j,l)), j != i, is the sum over nontrivial
/// double-coset representatives x of G_i of <chi_k, chi_l^x>_{H(x)}.
AGammaMatrix build_a_gamma(const AmalgamSpec& spec, const CharacterTable& table);

/// 1 - A as an arbitrary precision matrix.
IntMatrix one_minus(const AGammaMatrix& a);

struct KGroups {
  int k0_free_rank = 0;
  std::vector<mpz_class> k0_torsion;
  int k1_free_rank = 0;

  std::string k0_string() const;
  std::string k1_string() const;
};

/// Reads coker(1-A) and ker(1-A) off the Smith form of 1-A.
KGroups k_groups(const AGammaMatrix& a);
KGroups k_groups_from_smith(const SmithDecomposition& snf);
/// "0", "Z", "Z^2 ⊕ Z/4", ...
std::string abelian_group_string(int free_rank, const std::vector<mpz_class>& torsion);

/// Strongly connected digraph on nonzero entries.
bool irreducible(const AGammaMatrix& a);

struct IdealPoset {
  int vertex_count = 0;
  /// reach[x][y]: a path of length >= 1 from x to y.
  std::vector<std::vector<bool>> reach;
  /// Equivalence classes of vertices with x >= x, each sorted, ordered by
  /// least vertex.
  std::vector<std::vector<int>> classes;
  /// below[a][b]: class a >= class b, a != b.
  std::vector<std::vector<bool>> below;
  /// Hereditary subsets as sorted lists of class indices, by size then
  /// lexicographically. The empty set comes first.
  std::vector<std::vector<int>> hereditary;
  /// Cover relations between hereditary subsets (index pairs, smaller first).
  std::vector<std::pair<int, int>> hasse;

  std::size_t ideal_count() const { return hereditary.size(); }
  /// Σ(K): vertices x with x1 >= x >= x2 for some x1, x2 in the union of K.
  std::vector<int> saturation(const std::vector<int>& hereditary_subset) const;
  bool comparable(int class_a, int class_b) const { return below[class_a][class_b] || below[class_b][class_a]; }
};

/// Throws BudgetExceeded when more than max_subsets hereditary subsets exist.
IdealPoset ideal_lattice(const AGammaMatrix& a, std::size_t max_subsets = 4096);

struct SimplicityResult {
  bool simple = false;
  /// 0-based factor index j with the intersection over i != j of the cores trivial.
  int witness = -1;
  /// normal_core(G_i, H) per factor, as sorted H-indices.
  std::vector<std::vector<Element>> cores;
};

SimplicityResult simplicity_check(const AmalgamSpec& spec);

}  // namespace amalgam
