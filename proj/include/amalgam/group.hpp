#pragma once

// Finite groups as dense Cayley tables, subgroup embeddings, and the coset
// machinery built on them.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "amalgam/error.hpp"

namespace amalgam {

/// Dense element index. The identity of every FiniteGroup is element 0.
using Element = int;

/// A permutation of {0, ..., degree-1}; printed with 1-based points.
using Permutation = std::vector<int>;

/// Parses cycle notation such as "(1 2)(3 4)", "(1,2,3)" or "()" into a
/// permutation of the given degree.
Permutation parse_cycles(std::string_view text, int degree);
std::string cycle_notation(const Permutation& p);

class FiniteGroup {
 public:
  /// Builds a group from a full multiplication table over indices
  /// 0..n-1. Rows and columns must be permutations, an identity must exist,
  /// and associativity is verified with Light's test over a generating set.
  /// The identity is moved to index 0.
  static FiniteGroup from_table(const std::vector<std::vector<int>>& table,
                                std::vector<std::string> labels = {},
                                const Limits& limits = {});

  /// Closes a set of permutations under composition (breadth first from the
  /// identity) and flattens the result to a table.
  static FiniteGroup from_permutations(const std::vector<Permutation>& generators,
                                       int degree, const Limits& limits = {});

  int order() const { return order_; }
  Element identity() const { return 0; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(table_[static_cast<std::size_t>(a) * order_ + b]);
  }
  Element inv(Element a) const { return inverse_[a]; }
  /// g * x * g^-1
  Element conjugate(Element g, Element x) const { return mul(mul(g, x), inv(g)); }

  const std::string& label(Element a) const { return labels_[a]; }
  std::optional<Element> find(std::string_view label) const;
  /// Like find() but throws SpecError naming the label.
  Element element(std::string_view label) const;

  int element_order(Element a) const;
  int exponent() const;

  /// Permutation data, present for groups built from permutations.
  int degree() const { return degree_; }
  const std::vector<Permutation>& permutations() const { return perms_; }

  /// True when both groups have identical tables (same element indexing).
  bool same_table(const FiniteGroup& other) const { return table_ == other.table_; }

 private:
  FiniteGroup() = default;
  void finish(const Limits& limits);

  int order_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<Element> inverse_;
  std::vector<std::string> labels_;
  int degree_ = 0;
  std::vector<Permutation> perms_;
};

FiniteGroup cyclic(int n, const Limits& limits = {});
FiniteGroup symmetric(int n, const Limits& limits = {});
/// Dihedral group of order 2n, elements r^a and r^a s.
FiniteGroup dihedral(int n, const Limits& limits = {});
FiniteGroup quaternion8();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                           const Limits& limits = {});

/// Parses a descriptor such as "symmetric(4)", "product(cyclic(2),cyclic(3))",
/// "cayley_table([[0,1],[1,0]])" or "permutations([(1 2),(1 2 3)])".
FiniteGroup group_from_descriptor(std::string_view descriptor, const Limits& limits = {});

using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// An injective homomorphism H -> G.
class SubgroupEmbedding {
 public:
  /// Extends generator images to all of H by breadth-first multiplication and
  /// checks that the result is a well defined injective homomorphism.
  static SubgroupEmbedding from_generator_images(
      GroupPtr subgroup, GroupPtr ambient,
      const std::vector<std::pair<Element, Element>>& generator_images);

  /// Accepts a full image map, validated the same way.
  static SubgroupEmbedding from_images(GroupPtr subgroup, GroupPtr ambient,
                                       std::vector<Element> image);

  const FiniteGroup& subgroup() const { return *subgroup_; }
  const FiniteGroup& ambient() const { return *ambient_; }
  const GroupPtr& subgroup_ptr() const { return subgroup_; }
  const GroupPtr& ambient_ptr() const { return ambient_; }

  Element image(Element h) const { return image_[h]; }
  const std::vector<Element>& images() const { return image_; }
  /// H-index of g, or nullopt when g lies outside the embedded copy of H.
  std::optional<Element> preimage(Element g) const {
    const int h = preimage_[g];
    return h < 0 ? std::nullopt : std::optional<Element>(h);
  }
  bool contains(Element g) const { return preimage_[g] >= 0; }

 private:
  SubgroupEmbedding() = default;
  void validate() const;

  GroupPtr subgroup_;
  GroupPtr ambient_;
  std::vector<Element> image_;
  std::vector<int> preimage_;
};

/// Left cosets gH. Representatives are the least element index of each
/// coset (identity first) unless a preferred element from that coset is
/// supplied.
struct CosetSpace {
  std::vector<Element> representatives;
  /// element -> position in representatives
  std::vector<int> coset_of;
  /// element g -> H-index t with g = representatives[coset_of[g]] * image(t)
  std::vector<Element> tail;

  int size() const { return static_cast<int>(representatives.size()); }
};

struct DoubleCosetDecomposition {
  /// Double-coset representatives, each also a left-coset representative.
  std::vector<Element> representatives;
  /// element -> position in representatives
  std::vector<int> class_of;

  int size() const { return static_cast<int>(representatives.size()); }
};

CosetSpace left_cosets(const SubgroupEmbedding& embedding,
                       std::span<const Element> preferred = {});

/// Orbits of the left H-action on left cosets. Preferred elements must be
/// coset representatives of omega.
DoubleCosetDecomposition double_cosets(const SubgroupEmbedding& embedding,
                                       const CosetSpace& omega,
                                       std::span<const Element> preferred = {});

/// H(g) = {h in H : h g H = g H} = H ∩ gHg^-1, as sorted H-indices.
std::vector<Element> coset_stabilizer(const SubgroupEmbedding& embedding, Element g);

/// Largest subgroup of H normal in G, as sorted H-indices.
std::vector<Element> normal_core(const SubgroupEmbedding& embedding);

struct ConjugacyClasses {
  /// Classes ordered by least element; the identity class comes first.
  std::vector<std::vector<Element>> classes;
  std::vector<int> class_of;

  int size() const { return static_cast<int>(classes.size()); }
};

ConjugacyClasses conjugacy_classes(const FiniteGroup& group);

}  // namespace amalgam
