#pragma once

// Cylinder sets of the boundary Omega (finite factors only) and the action of
// the amalgam on them.

#include <compare>
#include <string>
#include <vector>

#include "amalgam/product.hpp"

namespace amalgam {

/// Omega(x_1 ... x_m): boundary points whose admissible sequence starts with
/// the prefix. Depth 0 is all of Omega.
struct Cylinder {
  std::vector<Syllable> prefix;

  int depth() const { return static_cast<int>(prefix.size()); }
  auto operator<=>(const Cylinder&) const = default;
};

bool admissible(const AmalgamSpec& spec, const Cylinder& c);
/// Throws SpecError unless the cylinder is admissible.
void require_admissible(const AmalgamSpec& spec, const Cylinder& c);

/// Number of admissible one-step extensions of c.
int child_count(const AmalgamSpec& spec, const Cylinder& c);
std::vector<Cylinder> children(const AmalgamSpec& spec, const Cylinder& c);

/// All admissible depth-d extensions of c, sorted.
std::vector<Cylinder> refine(const AmalgamSpec& spec, const Cylinder& c, int depth);

/// inner ⊆ outer.
bool contains(const Cylinder& outer, const Cylinder& inner);
bool disjoint(const Cylinder& a, const Cylinder& b);

/// Merges complete families of siblings into their parent until none is
/// left. Parts must be pairwise disjoint. Output is sorted.
std::vector<Cylinder> coarsen(const AmalgamSpec& spec, std::vector<Cylinder> parts);

/// Partition of Omega \ c into cylinders of depth <= depth(c).
std::vector<Cylinder> complement(const AmalgamSpec& spec, const Cylinder& c);

/// gamma · c as a sorted, coarsened partition. Refines c past the part of
/// the prefix that gamma can cancel, maps every piece to the cylinder of its
/// reduced image prefix and drops the H-tail.
std::vector<Cylinder> act(const AmalgamSpec& spec, const Word& gamma, const Cylinder& c);
std::vector<Cylinder> act(const AmalgamSpec& spec, const Word& gamma, const std::vector<Cylinder>& parts);

/// Some gamma with gamma · (Omega \ u) ⊆ v. For u = Omega(γ_1...γ_m) and
/// v = Omega(g_1...g_k) this is g_1...g_k t γ_m^-1 ... γ_1^-1, where t is a
/// nontrivial letter outside the factor of γ_m when g_k shares that factor
/// and t = e otherwise.
Word strong_boundary_witness(const AmalgamSpec& spec, const Cylinder& u, const Cylinder& v);

/// Refines Omega \ u to `depth` and checks that gamma maps every piece into v.
bool check_witness(const AmalgamSpec& spec, const Word& gamma, const Cylinder& u, const Cylinder& v,
                   int depth);

Cylinder cylinder_of(const Word& w);
Word word_of(const AmalgamSpec& spec, const Cylinder& c);
std::string to_string(const AmalgamSpec& spec, const Cylinder& c);

}  // namespace amalgam
