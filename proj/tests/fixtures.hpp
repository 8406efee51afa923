#pragma once

// Amalgams used across the unit tests, built directly from the group API.

#include <memory>

#include "amalgam/product.hpp"

namespace fixtures {

using namespace amalgam;

inline GroupPtr share(FiniteGroup g) { return std::make_shared<const FiniteGroup>(std::move(g)); }

/// S3 as the stabiliser of the point 4 in S4.
inline SubgroupEmbedding s3_in_s4(const GroupPtr& s3, const GroupPtr& s4) {
  std::vector<Element> image(s3->order());
  for (Element a = 0; a < s3->order(); ++a) {
    Permutation p = s3->permutations()[a];
    p.push_back(3);
    image[a] = s4->element(cycle_notation(p));
  }
  return SubgroupEmbedding::from_images(s3, s4, image);
}

/// Z4 *_{Z2} Z6, the amalgam presentation of SL(2, Z).
inline SpecPtr sl2z(Limits limits = {}) {
  auto h = share(cyclic(2));
  auto g1 = share(cyclic(4));
  auto g2 = share(cyclic(6));
  std::vector<Factor> f;
  f.push_back(finite_factor("Z4", SubgroupEmbedding::from_generator_images(h, g1, {{1, 2}})));
  f.push_back(finite_factor("Z6", SubgroupEmbedding::from_generator_images(h, g2, {{1, 3}})));
  return std::make_shared<const AmalgamSpec>(h, std::move(f), limits);
}

/// S4 *_{S3} S4 with (1 2)(3 4) as the nontrivial double-coset representative.
inline SpecPtr s4s4(Limits limits = {}) {
  auto h = share(symmetric(3));
  auto g = share(symmetric(4));
  const std::vector<Element> pref = {g->element("(1 2)(3 4)")};
  std::vector<Factor> f;
  f.push_back(finite_factor("S4", s3_in_s4(h, g), pref));
  f.push_back(finite_factor("S4", s3_in_s4(h, g), pref));
  return std::make_shared<const AmalgamSpec>(h, std::move(f), limits);
}

/// Z2 * Z2 * Z2 over the trivial group.
inline SpecPtr z2_cubed() {
  auto h = share(cyclic(1));
  auto g = share(cyclic(2));
  std::vector<Factor> f;
  for (int i = 0; i < 3; ++i)
    f.push_back(finite_factor("Z2", SubgroupEmbedding::from_images(h, g, {0})));
  return std::make_shared<const AmalgamSpec>(h, std::move(f));
}

/// Z * Z over the trivial group.
inline SpecPtr free_group() {
  auto h = share(cyclic(1));
  std::vector<Factor> f;
  f.push_back(symbolic_factor("Z", "a"));
  f.push_back(symbolic_factor("Z", "b"));
  return std::make_shared<const AmalgamSpec>(h, std::move(f));
}

/// Z4 *_{Z2} (Z x Z2): one finite and one symbolic factor.
inline SpecPtr mixed() {
  auto h = share(cyclic(2));
  auto g1 = share(cyclic(4));
  std::vector<Factor> f;
  f.push_back(finite_factor("Z4", SubgroupEmbedding::from_generator_images(h, g1, {{1, 2}})));
  f.push_back(symbolic_factor("Z x Z2", "a"));
  return std::make_shared<const AmalgamSpec>(h, std::move(f));
}

}  // namespace fixtures
