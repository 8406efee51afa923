#pragma once

// Amalgamated free products of finite groups over a common subgroup H, with
// optional symbolic factors Z x H. Elements are kept in the normal form
// g_1 ... g_n h (coset representatives from alternating factors, then a tail
// in H).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "amalgam/group.hpp"

namespace amalgam {

/// One normal-form syllable. For a finite factor, value is the index of a
/// nontrivial left coset (1 .. [G:H]-1). For a symbolic factor Z x H it is
/// the nonzero power of the generator.
struct Syllable {
  int factor = 0;
  int value = 0;
  auto operator<=>(const Syllable&) const = default;
};

struct Word {
  std::vector<Syllable> syllables;
  Element tail = 0;  // element of H
  std::uint64_t spec_id = 0;

  bool operator==(const Word& o) const { return syllables == o.syllables && tail == o.tail; }
};

/// A generator-level input to reduce(). factor = -1 denotes an element of H
/// (element is then an H-index). For finite factors element is an index in
/// G_factor; for symbolic factors the letter is a^power followed by the
/// H-element `element`.
struct Letter {
  int factor = -1;
  Element element = 0;
  int power = 0;
};

struct Factor {
  std::string label;
  bool symbolic = false;
  std::string generator;  // symbolic factors only
  std::optional<SubgroupEmbedding> embedding;
  CosetSpace omega;
  DoubleCosetDecomposition doubles;

  const FiniteGroup& group() const { return embedding->ambient(); }
  /// [G:H] - 1, the number of nontrivial cosets.
  int nontrivial_cosets() const { return omega.size() - 1; }
  Element representative(int coset) const { return omega.representatives[coset]; }
};

Factor finite_factor(std::string label, SubgroupEmbedding embedding,
                     std::span<const Element> preferred = {});
Factor symbolic_factor(std::string label, std::string generator);

class AmalgamSpec {
 public:
  /// Checks that every finite factor embeds the same H, that there are at
  /// least two factors and that the factors offer at least three nontrivial
  /// cosets in total.
  AmalgamSpec(GroupPtr subgroup, std::vector<Factor> factors, Limits limits = {});

  const FiniteGroup& subgroup() const { return *subgroup_; }
  const GroupPtr& subgroup_ptr() const { return subgroup_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const Factor& factor(int i) const { return factors_[i]; }
  int size() const { return static_cast<int>(factors_.size()); }
  bool all_finite() const;
  /// Throws SpecError naming `what` when a symbolic factor is present.
  void require_finite(const std::string& what) const;
  const Limits& limits() const { return limits_; }
  std::uint64_t id() const { return id_; }

  Word identity() const { return Word{{}, 0, id_}; }
  Word from_subgroup(Element h) const { return Word{{}, h, id_}; }
  /// The element g of factor i as a word.
  Word from_factor(int i, Element g) const;

  void right_multiply(Word& w, const Letter& letter) const;
  Word reduce(std::span<const Letter> letters) const;
  std::vector<Letter> letters(const Word& w) const;
  Word multiply(const Word& u, const Word& v) const;
  Word inverse(const Word& u) const;
  int length(const Word& w) const;
  int syllable_length(const Syllable& s) const;
  /// Ball order: length, then syllables lexicographically, then tail.
  bool word_less(const Word& a, const Word& b) const;

  /// Words of length <= radius in word_less order. Throws BudgetExceeded
  /// when the count exceeds limits().ball_budget.
  std::vector<Word> ball(int radius) const;
  /// Number of words of length <= radius (saturating).
  std::size_t ball_size(int radius) const;
  /// Admissible syllable sequences of each exact length 0..radius.
  std::vector<std::size_t> sphere_sequence_counts(int radius) const;

  std::string syllable_label(const Syllable& s) const;
  std::string to_string(const Word& w) const;

 private:
  void check_same(const Word& w) const;

  GroupPtr subgroup_;
  std::vector<Factor> factors_;
  Limits limits_;
  std::uint64_t id_;
};

using SpecPtr = std::shared_ptr<const AmalgamSpec>;

/// <x|y>_e = (|x| + |y| - |x^-1 y|) / 2, computed from the group law.
mpq_class gromov_product(const AmalgamSpec& spec, const Word& x, const Word& y);

/// Twice the Gromov product from the syllable structure: the common prefix
/// contributes its length, and a first disagreement inside one factor adds
/// the overlap of the two differing syllables.
int gromov_product_twice(const AmalgamSpec& spec, const Word& x, const Word& y);

/// max over x, y, z in ball(radius) of min(<x|z>, <y|z>) - <x|y>.
mpq_class hyperbolicity_delta(const AmalgamSpec& spec, int radius);

struct SerreTree {
  /// Coset labels such as "(1 2)_1 G2" (prefix, then the stabilising factor).
  std::vector<std::string> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::string> edge_labels;
  bool connected = false;
  bool acyclic = false;
};

/// Truncation of the Bass-Serre tree to cosets of ball(radius). With two
/// factors V = Γ/G_1 ⊔ Γ/G_2 and E = Γ/H; otherwise an extra vertex γH
/// (G_0 = H) is joined to each γG_i.
SerreTree serre_tree(const AmalgamSpec& spec, int radius);

struct CayleyGraph {
  std::vector<Word> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> degree;
  bool connected = false;
  bool acyclic = false;
};

/// Undirected Cayley graph on ball(radius) for the given generators; edges
/// leaving the ball are dropped.
CayleyGraph cayley_graph(const AmalgamSpec& spec, int radius, const std::vector<Letter>& generators);

bool is_forest_connected(int vertex_count, const std::vector<std::pair<int, int>>& edges,
                         bool& acyclic);

}  // namespace amalgam
