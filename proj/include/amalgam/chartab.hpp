#pragma once

#include <string>
#include <vector>

#include "amalgam/cyclotomic.hpp"
#include "amalgam/group.hpp"

namespace amalgam {

struct CharacterTable {
  ConjugacyClasses classes;
  /// Conductor shared by every value (the group exponent for computed tables).
  int conductor = 1;
  /// values[k][c]: character k on class c.
  std::vector<std::vector<Cyclotomic>> values;
  std::vector<int> degrees;

  int size() const { return static_cast<int>(values.size()); }
  const Cyclotomic& at(int k, int class_index) const { return values[k][class_index]; }
  const Cyclotomic& on(int k, Element g) const { return values[k][classes.class_of[g]]; }
};

/// Irreducible characters by Dixon's modular method. Rows are sorted by
/// degree; the trivial character comes first.
CharacterTable character_table(const FiniteGroup& group);

/// Builds a table from user data: one representative label per class (any
/// order) and one row of values per character. Throws SpecError unless both
/// orthogonality relations hold exactly.
CharacterTable character_table_from_values(const FiniteGroup& group,
                                           const std::vector<std::string>& class_labels,
                                           const std::vector<std::vector<Cyclotomic>>& rows);

struct OrthogonalityCheck {
  bool rows = false;
  bool columns = false;
  bool degrees = false;
  std::string detail;
  bool ok() const { return rows && columns && degrees; }
};

OrthogonalityCheck check_orthogonality(const FiniteGroup& group, const CharacterTable& table);

/// chi_l^x(h) = chi_l(x^-1 h x) for h in H(x) (sorted H-indices from
/// coset_stabilizer). The table belongs to the embedded subgroup.
std::vector<Cyclotomic> twisted_character(const CharacterTable& table, int l,
                                          const SubgroupEmbedding& embedding, Element x,
                                          const std::vector<Element>& stabilizer);

/// <chi_k, chi_l^x>_{H(x)}; throws DefectError unless the exact value is a
/// nonnegative integer.
long twisted_inner_product(const CharacterTable& table, int k, int l,
                           const SubgroupEmbedding& embedding, Element x);

}  // namespace amalgam
