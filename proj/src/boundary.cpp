#include "amalgam/boundary.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "amalgam/error.hpp"

namespace amalgam {

bool admissible(const AmalgamSpec& spec, const Cylinder& c) {
  for (std::size_t k = 0; k < c.prefix.size(); ++k) {
    const Syllable& s = c.prefix[k];
    if (s.factor < 0 || s.factor >= spec.size()) return false;
    const Factor& f = spec.factor(s.factor);
    if (f.symbolic) return false;
    if (s.value < 1 || s.value > f.nontrivial_cosets()) return false;
    if (k > 0 && c.prefix[k - 1].factor == s.factor) return false;
  }
  return true;
}

void require_admissible(const AmalgamSpec& spec, const Cylinder& c) {
  if (!admissible(spec, c)) throw SpecError("cylinder " + to_string(spec, c) + " is not admissible");
}

int child_count(const AmalgamSpec& spec, const Cylinder& c) {
  const int last = c.prefix.empty() ? -1 : c.prefix.back().factor;
  int n = 0;
  for (int i = 0; i < spec.size(); ++i)
    if (i != last) n += spec.factor(i).nontrivial_cosets();
  return n;
}

std::vector<Cylinder> children(const AmalgamSpec& spec, const Cylinder& c) {
  const int last = c.prefix.empty() ? -1 : c.prefix.back().factor;
  std::vector<Cylinder> out;
  for (int i = 0; i < spec.size(); ++i) {
    if (i == last) continue;
    for (int v = 1; v <= spec.factor(i).nontrivial_cosets(); ++v) {
      Cylinder child = c;
      child.prefix.push_back({i, v});
      out.push_back(std::move(child));
    }
  }
  return out;
}

std::vector<Cylinder> refine(const AmalgamSpec& spec, const Cylinder& c, int depth) {
  if (depth < c.depth()) throw SpecError("cannot refine a cylinder to a smaller depth");
  std::vector<Cylinder> level{c};
  for (int d = c.depth(); d < depth; ++d) {
    std::vector<Cylinder> next;
    for (const auto& p : level)
      for (auto& ch : children(spec, p)) next.push_back(std::move(ch));
    level = std::move(next);
  }
  std::sort(level.begin(), level.end());
  return level;
}

bool contains(const Cylinder& outer, const Cylinder& inner) {
  if (outer.prefix.size() > inner.prefix.size()) return false;
  return std::equal(outer.prefix.begin(), outer.prefix.end(), inner.prefix.begin());
}

bool disjoint(const Cylinder& a, const Cylinder& b) { return !contains(a, b) && !contains(b, a); }

std::vector<Cylinder> coarsen(const AmalgamSpec& spec, std::vector<Cylinder> parts) {
  std::set<Cylinder> current(parts.begin(), parts.end());
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<Cylinder, int> siblings;
    for (const auto& c : current) {
      if (c.prefix.empty()) continue;
      Cylinder parent = c;
      parent.prefix.pop_back();
      ++siblings[parent];
    }
    for (const auto& [parent, count] : siblings) {
      if (count != child_count(spec, parent)) continue;
      for (const auto& ch : children(spec, parent)) current.erase(ch);
      current.insert(parent);
      changed = true;
    }
  }
  return {current.begin(), current.end()};
}

std::vector<Cylinder> complement(const AmalgamSpec& spec, const Cylinder& c) {
  std::vector<Cylinder> out;
  Cylinder path;
  for (const auto& s : c.prefix) {
    for (auto& sibling : children(spec, path))
      if (sibling.prefix.back() != s) out.push_back(std::move(sibling));
    path.prefix.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Cylinder> act(const AmalgamSpec& spec, const Word& gamma, const Cylinder& c) {
  spec.require_finite("the boundary action");
  require_admissible(spec, c);
  const int depth = std::max(c.depth(), spec.length(gamma) + 1);
  std::vector<Cylinder> images;
  for (const auto& piece : refine(spec, c, depth)) {
    Word w = gamma;
    for (const auto& s : piece.prefix)
      spec.right_multiply(w, Letter{s.factor, spec.factor(s.factor).representative(s.value), 0});
    if (w.syllables.empty() || w.syllables.back().factor != piece.prefix.back().factor)
      throw DefectError("boundary action cancelled past the refined prefix");
    images.push_back(Cylinder{w.syllables});
  }
  return coarsen(spec, std::move(images));
}

std::vector<Cylinder> act(const AmalgamSpec& spec, const Word& gamma, const std::vector<Cylinder>& parts) {
  std::vector<Cylinder> all;
  for (const auto& p : parts)
    for (auto& c : act(spec, gamma, p)) all.push_back(std::move(c));
  return coarsen(spec, std::move(all));
}

Cylinder cylinder_of(const Word& w) { return Cylinder{w.syllables}; }

Word word_of(const AmalgamSpec& spec, const Cylinder& c) {
  Word w = spec.identity();
  for (const auto& s : c.prefix)
    spec.right_multiply(w, Letter{s.factor, spec.factor(s.factor).representative(s.value), 0});
  return w;
}

Word strong_boundary_witness(const AmalgamSpec& spec, const Cylinder& u, const Cylinder& v) {
  spec.require_finite("the strong boundary witness");
  require_admissible(spec, u);
  require_admissible(spec, v);
  if (u.prefix.empty() || v.prefix.empty()) return spec.identity();
  Word gamma = word_of(spec, v);
  const int last_u = u.prefix.back().factor;
  if (v.prefix.back().factor == last_u) {
    int j = 0;
    while (j == last_u || spec.factor(j).nontrivial_cosets() == 0) ++j;
    spec.right_multiply(gamma, Letter{j, spec.factor(j).representative(1), 0});
  }
  return spec.multiply(gamma, spec.inverse(word_of(spec, u)));
}

bool check_witness(const AmalgamSpec& spec, const Word& gamma, const Cylinder& u, const Cylinder& v,
                   int depth) {
  for (const auto& part : complement(spec, u))
    for (const auto& piece : refine(spec, part, std::max(depth, part.depth())))
      for (const auto& image : act(spec, gamma, piece))
        if (!contains(v, image)) return false;
  return true;
}

std::string to_string(const AmalgamSpec& spec, const Cylinder& c) {
  std::string out = "Omega(";
  for (std::size_t k = 0; k < c.prefix.size(); ++k) {
    if (k) out += " ";
    const Syllable& s = c.prefix[k];
    if (s.factor >= 0 && s.factor < spec.size() && !spec.factor(s.factor).symbolic && s.value >= 0 &&
        s.value <= spec.factor(s.factor).nontrivial_cosets())
      out += spec.syllable_label(s);
    else
      out += "?" + std::to_string(s.factor + 1) + ":" + std::to_string(s.value);
  }
  return out + ")";
}

}  // namespace amalgam
