#include "amalgam/product.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cstdlib>
#include <map>
#include <numeric>

#include "amalgam/error.hpp"

namespace amalgam {

namespace {

std::atomic<std::uint64_t> next_spec_id{1};

std::size_t saturating_add(std::size_t a, std::size_t b) {
  return a > SIZE_MAX - b ? SIZE_MAX : a + b;
}

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  if (a == 0 || b == 0) return 0;
  return a > SIZE_MAX / b ? SIZE_MAX : a * b;
}

}  // namespace

Factor finite_factor(std::string label, SubgroupEmbedding embedding, std::span<const Element> preferred) {
  Factor f;
  f.label = std::move(label);
  f.omega = left_cosets(embedding, preferred);
  f.doubles = double_cosets(embedding, f.omega, preferred);
  f.embedding.emplace(std::move(embedding));
  return f;
}

Factor symbolic_factor(std::string label, std::string generator) {
  Factor f;
  f.label = std::move(label);
  f.symbolic = true;
  f.generator = generator.empty() ? "a" : std::move(generator);
  return f;
}

AmalgamSpec::AmalgamSpec(GroupPtr subgroup, std::vector<Factor> factors, Limits limits)
    : subgroup_(std::move(subgroup)), factors_(std::move(factors)), limits_(limits),
      id_(next_spec_id++) {
  if (!subgroup_) throw SpecError("amalgam needs a subgroup H");
  if (factors_.size() < 2)
    throw SpecError("amalgam needs at least two factors, got " + std::to_string(factors_.size()));
  std::size_t points = 0;
  bool infinite = false;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const Factor& f = factors_[i];
    if (f.symbolic) {
      infinite = true;
      continue;
    }
    if (!f.embedding) throw SpecError("factor " + std::to_string(i + 1) + " has no embedding");
    const FiniteGroup& h = f.embedding->subgroup();
    if (&h != subgroup_.get() && !h.same_table(*subgroup_))
      throw SpecError("factor " + std::to_string(i + 1) + " embeds a different subgroup");
    points += static_cast<std::size_t>(f.nontrivial_cosets());
  }
  if (!infinite && points < 3)
    throw SpecError("excluded amalgam: the factors have only " + std::to_string(points) +
                    " nontrivial cosets in total (at least 3 are required)");
}

bool AmalgamSpec::all_finite() const {
  return std::none_of(factors_.begin(), factors_.end(), [](const Factor& f) { return f.symbolic; });
}

void AmalgamSpec::require_finite(const std::string& what) const {
  for (std::size_t i = 0; i < factors_.size(); ++i)
    if (factors_[i].symbolic)
      throw SpecError(what + " needs finite factors; factor " + std::to_string(i + 1) + " (" +
                      factors_[i].label + ") is Z x H");
}

void AmalgamSpec::check_same(const Word& w) const {
  if (w.spec_id != id_) throw SpecError("word belongs to a different amalgam");
}

Word AmalgamSpec::from_factor(int i, Element g) const {
  Word w = identity();
  right_multiply(w, Letter{i, g, 0});
  return w;
}

void AmalgamSpec::right_multiply(Word& w, const Letter& letter) const {
  if (letter.factor < 0) {
    w.tail = subgroup_->mul(w.tail, letter.element);
    return;
  }
  const Factor& f = factors_.at(letter.factor);
  if (f.symbolic) {
    int p = letter.power;
    if (!w.syllables.empty() && w.syllables.back().factor == letter.factor) {
      p += w.syllables.back().value;
      w.syllables.pop_back();
    }
    if (p != 0) w.syllables.push_back({letter.factor, p});
    w.tail = subgroup_->mul(w.tail, letter.element);
    return;
  }
  const FiniteGroup& g = f.group();
  Element x = g.mul(f.embedding->image(w.tail), letter.element);
  if (!w.syllables.empty() && w.syllables.back().factor == letter.factor) {
    x = g.mul(f.representative(w.syllables.back().value), x);
    w.syllables.pop_back();
  }
  const int c = f.omega.coset_of[x];
  if (c != 0) w.syllables.push_back({letter.factor, c});
  w.tail = f.omega.tail[x];
}

Word AmalgamSpec::reduce(std::span<const Letter> letters) const {
  Word w = identity();
  for (const auto& l : letters) right_multiply(w, l);
  return w;
}

std::vector<Letter> AmalgamSpec::letters(const Word& w) const {
  std::vector<Letter> out;
  out.reserve(w.syllables.size() + 1);
  for (const auto& s : w.syllables) {
    if (factors_[s.factor].symbolic)
      out.push_back({s.factor, 0, s.value});
    else
      out.push_back({s.factor, factors_[s.factor].representative(s.value), 0});
  }
  out.push_back({-1, w.tail, 0});
  return out;
}

Word AmalgamSpec::multiply(const Word& u, const Word& v) const {
  check_same(u);
  check_same(v);
  Word w = u;
  for (const auto& l : letters(v)) right_multiply(w, l);
  return w;
}

Word AmalgamSpec::inverse(const Word& u) const {
  check_same(u);
  Word w = from_subgroup(subgroup_->inv(u.tail));
  for (auto it = u.syllables.rbegin(); it != u.syllables.rend(); ++it) {
    const Factor& f = factors_[it->factor];
    if (f.symbolic)
      right_multiply(w, {it->factor, 0, -it->value});
    else
      right_multiply(w, {it->factor, f.group().inv(f.representative(it->value)), 0});
  }
  return w;
}

int AmalgamSpec::syllable_length(const Syllable& s) const {
  return factors_[s.factor].symbolic ? std::abs(s.value) : 1;
}

bool AmalgamSpec::word_less(const Word& a, const Word& b) const {
  const int la = length(a), lb = length(b);
  if (la != lb) return la < lb;
  if (a.syllables != b.syllables) return a.syllables < b.syllables;
  return a.tail < b.tail;
}

int AmalgamSpec::length(const Word& w) const {
  int n = 0;
  for (const auto& s : w.syllables) n += syllable_length(s);
  return n;
}

std::vector<std::size_t> AmalgamSpec::sphere_sequence_counts(int radius) const {
  // ending[n][i]: admissible syllable sequences of length n whose last
  // syllable lies in factor i
  const int k = size();
  std::vector<std::vector<std::size_t>> ending(radius + 1, std::vector<std::size_t>(k, 0));
  std::vector<std::size_t> total(radius + 1, 0);
  if (radius >= 0) total[0] = 1;
  for (int n = 1; n <= radius; ++n) {
    for (int i = 0; i < k; ++i) {
      const Factor& f = factors_[i];
      std::size_t sum = 0;
      for (int w = 1; w <= n; ++w) {
        std::size_t choices = 0;
        if (f.symbolic)
          choices = 2;
        else if (w == 1)
          choices = static_cast<std::size_t>(f.nontrivial_cosets());
        if (choices == 0) continue;
        std::size_t before = n == w ? 1 : 0;
        for (int j = 0; j < k; ++j)
          if (j != i) before = saturating_add(before, ending[n - w][j]);
        sum = saturating_add(sum, saturating_mul(choices, before));
      }
      ending[n][i] = sum;
      total[n] = saturating_add(total[n], sum);
    }
  }
  return total;
}

std::size_t AmalgamSpec::ball_size(int radius) const {
  std::size_t sequences = 0;
  for (std::size_t c : sphere_sequence_counts(radius)) sequences = saturating_add(sequences, c);
  return saturating_mul(sequences, static_cast<std::size_t>(subgroup_->order()));
}

std::vector<Word> AmalgamSpec::ball(int radius) const {
  if (radius < 0) throw SpecError("ball radius must be nonnegative");
  const std::size_t count = ball_size(radius);
  if (count > limits_.ball_budget)
    throw BudgetExceeded("ball of radius " + std::to_string(radius) + " has " +
                         (count == SIZE_MAX ? std::string("too many") : std::to_string(count)) +
                         " words, budget is " + std::to_string(limits_.ball_budget));

  // sequences grouped by length, each group generated in lexicographic order
  std::vector<std::vector<std::vector<Syllable>>> by_length(radius + 1);
  by_length[0].push_back({});
  std::vector<Syllable> current;
  auto extend = [&](auto&& self, int used) -> void {
    const int last = current.empty() ? -1 : current.back().factor;
    for (int i = 0; i < size(); ++i) {
      if (i == last) continue;
      const Factor& f = factors_[i];
      if (f.symbolic) {
        for (int p = -(radius - used); p <= radius - used; ++p) {
          if (p == 0) continue;
          current.push_back({i, p});
          by_length[used + std::abs(p)].push_back(current);
          self(self, used + std::abs(p));
          current.pop_back();
        }
      } else if (used + 1 <= radius) {
        for (int c = 1; c <= f.nontrivial_cosets(); ++c) {
          current.push_back({i, c});
          by_length[used + 1].push_back(current);
          self(self, used + 1);
          current.pop_back();
        }
      }
    }
  };
  extend(extend, 0);

  std::vector<Word> out;
  out.reserve(count);
  for (auto& group : by_length) {
    std::sort(group.begin(), group.end());
    for (const auto& seq : group)
      for (Element t = 0; t < subgroup_->order(); ++t) out.push_back(Word{seq, t, id_});
  }
  if (out.size() != count) throw DefectError("ball enumeration disagrees with the sequence count");
  return out;
}

std::string AmalgamSpec::syllable_label(const Syllable& s) const {
  const Factor& f = factors_[s.factor];
  if (f.symbolic) return f.generator + "^" + std::to_string(s.value);
  return f.group().label(f.representative(s.value)) + "_" + std::to_string(s.factor + 1);
}

std::string AmalgamSpec::to_string(const Word& w) const {
  std::string out;
  for (const auto& s : w.syllables) {
    if (!out.empty()) out += " ";
    out += syllable_label(s);
  }
  if (w.tail != 0 || out.empty()) {
    if (!out.empty()) out += " ";
    out += subgroup_->label(w.tail);
  }
  return out;
}

mpq_class gromov_product(const AmalgamSpec& spec, const Word& x, const Word& y) {
  const int d = spec.length(spec.multiply(spec.inverse(x), y));
  mpq_class g(spec.length(x) + spec.length(y) - d, 2);
  g.canonicalize();
  return g;
}

int gromov_product_twice(const AmalgamSpec& spec, const Word& x, const Word& y) {
  const auto& a = x.syllables;
  const auto& b = y.syllables;
  int twice = 0;
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a[k] == b[k]) {
    twice += 2 * spec.syllable_length(a[k]);
    ++k;
  }
  if (k < a.size() && k < b.size() && a[k].factor == b[k].factor) {
    if (spec.factor(a[k].factor).symbolic) {
      const int p = a[k].value, q = b[k].value;
      if ((p > 0) == (q > 0)) twice += 2 * std::min(std::abs(p), std::abs(q));
    } else {
      twice += 1;
    }
  }
  return twice;
}

bool is_forest_connected(int vertex_count, const std::vector<std::pair<int, int>>& edges, bool& acyclic) {
  std::vector<int> parent(vertex_count);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  acyclic = true;
  int components = vertex_count;
  for (const auto& [u, v] : edges) {
    const int ru = find(u), rv = find(v);
    if (ru == rv) {
      acyclic = false;
    } else {
      parent[ru] = rv;
      --components;
    }
  }
  return components <= 1;
}

SerreTree serre_tree(const AmalgamSpec& spec, int radius) {
  const std::vector<Word> words = spec.ball(radius);
  SerreTree tree;
  std::map<std::pair<int, std::vector<Syllable>>, int> vertex_of;
  auto prefix_label = [&](const std::vector<Syllable>& seq) {
    std::string s;
    for (const auto& syl : seq) s += (s.empty() ? "" : " ") + spec.syllable_label(syl);
    return s.empty() ? std::string("e") : s;
  };
  // kind 0 is G_0 = H, kind i+1 is G_i
  auto vertex = [&](int kind, std::vector<Syllable> seq) {
    if (kind > 0 && !seq.empty() && seq.back().factor == kind - 1) seq.pop_back();
    auto key = std::make_pair(kind, seq);
    auto it = vertex_of.find(key);
    if (it != vertex_of.end()) return it->second;
    const int id = static_cast<int>(tree.vertices.size());
    const std::string group = kind == 0 ? "H" : "G" + std::to_string(kind);
    tree.vertices.push_back(prefix_label(seq) + " " + group);
    vertex_of.emplace(std::move(key), id);
    return id;
  };

  std::vector<std::vector<Syllable>> cosets;
  for (const auto& w : words)
    if (w.tail == 0) cosets.push_back(w.syllables);

  if (spec.size() == 2) {
    for (const auto& seq : cosets) {
      const int a = vertex(1, seq);
      const int b = vertex(2, seq);
      tree.edges.emplace_back(a, b);
      tree.edge_labels.push_back(prefix_label(seq) + " H");
    }
  } else {
    for (const auto& seq : cosets) {
      const int centre = vertex(0, seq);
      for (int i = 0; i < spec.size(); ++i) {
        tree.edges.emplace_back(centre, vertex(i + 1, seq));
        tree.edge_labels.push_back(prefix_label(seq) + " H -> G" + std::to_string(i + 1));
      }
    }
  }
  tree.connected = is_forest_connected(static_cast<int>(tree.vertices.size()), tree.edges, tree.acyclic);
  return tree;
}

CayleyGraph cayley_graph(const AmalgamSpec& spec, int radius, const std::vector<Letter>& generators) {
  CayleyGraph g;
  g.vertices = spec.ball(radius);
  std::map<std::pair<std::vector<Syllable>, Element>, int> index;
  for (std::size_t i = 0; i < g.vertices.size(); ++i)
    index.emplace(std::make_pair(g.vertices[i].syllables, g.vertices[i].tail), static_cast<int>(i));
  std::map<std::pair<int, int>, bool> seen;
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (const auto& s : generators) {
      Word w = g.vertices[i];
      spec.right_multiply(w, s);
      auto it = index.find({w.syllables, w.tail});
      if (it == index.end()) continue;
      const int a = static_cast<int>(i), b = it->second;
      if (a == b) continue;
      const auto key = std::minmax(a, b);
      if (seen.emplace(key, true).second) g.edges.emplace_back(key.first, key.second);
    }
  }
  g.degree.assign(g.vertices.size(), 0);
  for (const auto& [a, b] : g.edges) {
    ++g.degree[a];
    ++g.degree[b];
  }
  g.connected = is_forest_connected(static_cast<int>(g.vertices.size()), g.edges, g.acyclic);
  return g;
}

}  // namespace amalgam
