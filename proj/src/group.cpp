#include "amalgam/group.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

namespace amalgam {

namespace {

Permutation compose(const Permutation& p, const Permutation& q) {
  // (p*q)(x) = p(q(x))
  Permutation r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[q[x]];
  return r;
}

Permutation identity_permutation(int degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

void check_order(std::size_t order, const Limits& limits) {
  if (order > limits.max_group_order) {
    throw BudgetExceeded("group order " + std::to_string(order) +
                         " exceeds the configured maximum " +
                         std::to_string(limits.max_group_order));
  }
  if (order > 65535) throw BudgetExceeded("group order exceeds table storage (65535)");
}

}  // namespace

Permutation parse_cycles(std::string_view text, int degree) {
  Permutation p = identity_permutation(degree);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(') throw SpecError("bad cycle notation: '" + std::string(text) + "'");
    ++pos;
    std::vector<int> cycle;
    while (true) {
      while (pos < text.size() &&
             (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
        ++pos;
      if (pos >= text.size()) throw SpecError("unterminated cycle in '" + std::string(text) + "'");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw SpecError("bad cycle notation: '" + std::string(text) + "'");
      int v = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
        v = v * 10 + (text[pos++] - '0');
      if (v < 1 || v > degree)
        throw SpecError("point " + std::to_string(v) + " out of range in '" +
                        std::string(text) + "'");
      cycle.push_back(v - 1);
    }
    std::vector<int> sorted = cycle;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw SpecError("repeated point in cycle '" + std::string(text) + "'");
    // cycles compose right to left, like permutation products
    Permutation c = identity_permutation(degree);
    for (std::size_t k = 0; k < cycle.size(); ++k) c[cycle[k]] = cycle[(k + 1) % cycle.size()];
    p = compose(p, c);
    skip_ws();
  }
  return p;
}

std::string cycle_notation(const Permutation& p) {
  std::vector<bool> seen(p.size(), false);
  std::string out;
  for (std::size_t s = 0; s < p.size(); ++s) {
    if (seen[s] || p[s] == static_cast<int>(s)) continue;
    out += '(';
    std::size_t x = s;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      if (!first) out += ' ';
      out += std::to_string(x + 1);
      first = false;
      x = static_cast<std::size_t>(p[x]);
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// ---------------------------------------------------------------------------
// FiniteGroup

void FiniteGroup::finish(const Limits& limits) {
  check_order(static_cast<std::size_t>(order_), limits);
  inverse_.assign(order_, -1);
  for (Element a = 0; a < order_; ++a) {
    for (Element b = 0; b < order_; ++b) {
      if (mul(a, b) == 0) {
        inverse_[a] = b;
        break;
      }
    }
    if (inverse_[a] < 0) throw SpecError("element without inverse");
  }
  if (labels_.empty()) {
    labels_.resize(order_);
    for (int i = 0; i < order_; ++i) labels_[i] = std::to_string(i);
  }
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& table,
                                    std::vector<std::string> labels, const Limits& limits) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw SpecError("empty Cayley table");
  check_order(static_cast<std::size_t>(n), limits);
  for (const auto& row : table) {
    if (static_cast<int>(row.size()) != n) throw SpecError("Cayley table is not square");
    for (int v : row)
      if (v < 0 || v >= n) throw SpecError("Cayley table entry out of range");
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n)
    throw SpecError("label count does not match table size");

  // latin square
  for (int a = 0; a < n; ++a) {
    std::vector<bool> row(n, false), col(n, false);
    for (int b = 0; b < n; ++b) {
      if (row[table[a][b]] || col[table[b][a]])
        throw SpecError("Cayley table rows and columns must be permutations");
      row[table[a][b]] = col[table[b][a]] = true;
    }
  }
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool unit = true;
    for (int b = 0; b < n && unit; ++b) unit = table[a][b] == b && table[b][a] == b;
    if (unit) e = a;
  }
  if (e < 0) throw SpecError("Cayley table has no identity");

  // swap e and 0 so that the identity is element 0
  std::vector<int> to_new(n), to_old(n);
  std::iota(to_new.begin(), to_new.end(), 0);
  std::swap(to_new[0], to_new[e]);
  for (int i = 0; i < n; ++i) to_old[to_new[i]] = i;

  FiniteGroup g;
  g.order_ = n;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.table_[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint16_t>(to_new[table[to_old[a]][to_old[b]]]);
  if (labels.empty()) {
    labels.resize(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
  }
  g.labels_.resize(n);
  for (int i = 0; i < n; ++i) g.labels_[i] = labels[to_old[i]];
  g.finish(limits);

  // Light's associativity test: (x s) y == x (s y) for s in a generating set.
  std::vector<Element> gens;
  std::vector<bool> reached(n, false);
  reached[0] = true;
  std::vector<Element> span{0};
  for (Element s = 1; s < n; ++s) {
    if (reached[s]) continue;
    gens.push_back(s);
    // re-close
    std::deque<Element> queue(span.begin(), span.end());
    while (!queue.empty()) {
      const Element x = queue.front();
      queue.pop_front();
      for (Element t : gens) {
        const Element y = g.mul(x, t);
        if (!reached[y]) {
          reached[y] = true;
          span.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  for (Element s : gens)
    for (Element x = 0; x < n; ++x)
      for (Element y = 0; y < n; ++y)
        if (g.mul(g.mul(x, s), y) != g.mul(x, g.mul(s, y)))
          throw SpecError("Cayley table is not associative");
  return g;
}

FiniteGroup FiniteGroup::from_permutations(const std::vector<Permutation>& generators,
                                           int degree, const Limits& limits) {
  if (degree < 1) throw SpecError("permutation degree must be positive");
  for (const auto& p : generators) {
    if (static_cast<int>(p.size()) != degree) throw SpecError("generator has wrong degree");
    std::vector<bool> hit(degree, false);
    for (int v : p) {
      if (v < 0 || v >= degree || hit[v]) throw SpecError("generator is not a permutation");
      hit[v] = true;
    }
  }
  std::vector<Permutation> elems{identity_permutation(degree)};
  std::map<Permutation, int> index{{elems[0], 0}};
  for (std::size_t head = 0; head < elems.size(); ++head) {
    for (const auto& s : generators) {
      Permutation q = compose(elems[head], s);
      if (index.emplace(q, static_cast<int>(elems.size())).second) {
        elems.push_back(std::move(q));
        check_order(elems.size(), limits);
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  FiniteGroup g;
  g.order_ = n;
  g.degree_ = degree;
  g.table_.resize(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      g.table_[static_cast<std::size_t>(a) * n + b] =
          static_cast<std::uint16_t>(index.at(compose(elems[a], elems[b])));
  g.labels_.resize(n);
  for (int a = 0; a < n; ++a) g.labels_[a] = cycle_notation(elems[a]);
  g.perms_ = std::move(elems);
  g.finish(limits);
  return g;
}

std::optional<Element> FiniteGroup::find(std::string_view label) const {
  for (Element a = 0; a < order_; ++a)
    if (labels_[a] == label) return a;
  if (degree_ > 0 && !label.empty() && label.front() == '(') {
    try {
      const Permutation p = parse_cycles(label, degree_);
      for (Element a = 0; a < order_; ++a)
        if (perms_[a] == p) return a;
    } catch (const SpecError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Element FiniteGroup::element(std::string_view label) const {
  if (auto a = find(label)) return *a;
  throw SpecError("no element labelled '" + std::string(label) + "'");
}

int FiniteGroup::element_order(Element a) const {
  int k = 1;
  for (Element x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

int FiniteGroup::exponent() const {
  int e = 1;
  for (Element a = 0; a < order_; ++a) e = std::lcm(e, element_order(a));
  return e;
}

// ---------------------------------------------------------------------------
// Families

FiniteGroup cyclic(int n, const Limits& limits) {
  if (n < 1) throw SpecError("cyclic(n) needs n >= 1");
  check_order(static_cast<std::size_t>(n), limits);
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup::from_table(t, {}, limits);
}

FiniteGroup symmetric(int n, const Limits& limits) {
  if (n < 1) throw SpecError("symmetric(n) needs n >= 1");
  std::vector<Permutation> gens;
  if (n >= 2) {
    gens.push_back(parse_cycles("(1 2)", n));
    Permutation cycle(n);
    for (int i = 0; i < n; ++i) cycle[i] = (i + 1) % n;
    gens.push_back(cycle);
  }
  return FiniteGroup::from_permutations(gens, n, limits);
}

FiniteGroup dihedral(int n, const Limits& limits) {
  if (n < 1) throw SpecError("dihedral(n) needs n >= 1");
  const int order = 2 * n;
  check_order(static_cast<std::size_t>(order), limits);
  // element r^a s^b stored at index b*n + a; s r = r^-1 s
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> labels(order);
  for (int x = 0; x < order; ++x) {
    const int a = x % n, b = x / n;
    std::string r = a == 0 ? "" : (a == 1 ? "r" : "r^" + std::to_string(a));
    labels[x] = b == 0 ? (a == 0 ? "1" : r) : (a == 0 ? "s" : r + " s");
    for (int y = 0; y < order; ++y) {
      const int c = y % n, d = y / n;
      const int ra = ((a + (b == 0 ? c : -c)) % n + n) % n;
      t[x][y] = ((b + d) % 2) * n + ra;
    }
  }
  return FiniteGroup::from_table(t, labels, limits);
}

FiniteGroup quaternion8() {
  // units 1,i,j,k as 0..3, sign bit separate; element index = 2*unit + sign
  static const int unit_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int unit_sign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  std::vector<std::vector<int>> t(8, std::vector<int>(8));
  for (int x = 0; x < 8; ++x)
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int sign = (x % 2) ^ (y % 2) ^ unit_sign[u][v];
      t[x][y] = 2 * unit_mul[u][v] + sign;
    }
  return FiniteGroup::from_table(t, {"1", "-1", "i", "-i", "j", "-j", "k", "-k"});
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b, const Limits& limits) {
  const int na = a.order(), nb = b.order();
  check_order(static_cast<std::size_t>(na) * nb, limits);
  const int n = na * nb;
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  std::vector<std::string> labels(n);
  for (int x = 0; x < n; ++x) {
    labels[x] = "(" + a.label(x / nb) + "," + b.label(x % nb) + ")";
    for (int y = 0; y < n; ++y)
      t[x][y] = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
  }
  return FiniteGroup::from_table(t, labels, limits);
}

// ---------------------------------------------------------------------------
// Descriptor parsing

namespace {

class DescriptorParser {
 public:
  DescriptorParser(std::string_view text, const Limits& limits) : text_(text), limits_(limits) {}

  FiniteGroup parse() {
    FiniteGroup g = group();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing characters");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw SpecError("group descriptor '" + std::string(text_) + "': " + what + " at offset " +
                    std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_) fail("expected a family name");
    return std::string(text_.substr(start, pos_ - start));
  }
  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + (text_[pos_++] - '0');
      if (v > 1'000'000) fail("integer too large");
    }
    if (start == pos_) fail("expected an integer");
    return static_cast<int>(v);
  }

  FiniteGroup group() {
    const std::string name = identifier();
    if (name == "quaternion8") {
      if (accept('(')) expect(')');
      return quaternion8();
    }
    expect('(');
    FiniteGroup g = [&]() -> FiniteGroup {
      if (name == "cyclic") return cyclic(integer(), limits_);
      if (name == "symmetric") return symmetric(integer(), limits_);
      if (name == "dihedral") return dihedral(integer(), limits_);
      if (name == "product") {
        FiniteGroup a = group();
        expect(',');
        FiniteGroup b = group();
        return direct_product(a, b, limits_);
      }
      if (name == "cayley_table") return cayley_table();
      if (name == "permutations") return permutations();
      fail("unknown group family '" + name + "'");
    }();
    expect(')');
    return g;
  }

  FiniteGroup cayley_table() {
    std::vector<std::vector<int>> rows;
    expect('[');
    do {
      expect('[');
      std::vector<int> row;
      do row.push_back(integer());
      while (accept(','));
      expect(']');
      rows.push_back(std::move(row));
    } while (accept(','));
    expect(']');
    return FiniteGroup::from_table(rows, {}, limits_);
  }

  FiniteGroup permutations() {
    std::vector<std::string> cycles;
    expect('[');
    skip_ws();
    if (!accept(']')) {
      do {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && text_[pos_] == '(') {
          const std::size_t close = text_.find(')', pos_);
          if (close == std::string_view::npos) fail("unterminated cycle");
          pos_ = close + 1;
          skip_ws();
        }
        if (start == pos_) fail("expected a permutation in cycle notation");
        cycles.emplace_back(text_.substr(start, pos_ - start));
      } while (accept(','));
      expect(']');
    }
    int degree = 1;
    for (const auto& c : cycles) {
      int v = 0;
      for (char ch : c) {
        if (std::isdigit(static_cast<unsigned char>(ch))) {
          v = v * 10 + (ch - '0');
        } else {
          degree = std::max(degree, v);
          v = 0;
        }
      }
      degree = std::max(degree, v);
    }
    std::vector<Permutation> gens;
    for (const auto& c : cycles) gens.push_back(parse_cycles(c, degree));
    return FiniteGroup::from_permutations(gens, degree, limits_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  const Limits& limits_;
};

}  // namespace

FiniteGroup group_from_descriptor(std::string_view descriptor, const Limits& limits) {
  return DescriptorParser(descriptor, limits).parse();
}

// ---------------------------------------------------------------------------
// SubgroupEmbedding

void SubgroupEmbedding::validate() const {
  const FiniteGroup& h = *subgroup_;
  const FiniteGroup& g = *ambient_;
  if (static_cast<int>(image_.size()) != h.order()) throw SpecError("embedding has wrong size");
  if (image_[0] != g.identity()) throw SpecError("embedding does not fix the identity");
  for (Element a = 0; a < h.order(); ++a)
    for (Element b = 0; b < h.order(); ++b)
      if (image_[h.mul(a, b)] != g.mul(image_[a], image_[b]))
        throw SpecError("embedding is not a homomorphism at (" + h.label(a) + ", " +
                        h.label(b) + ")");
}

SubgroupEmbedding SubgroupEmbedding::from_images(GroupPtr subgroup, GroupPtr ambient,
                                                 std::vector<Element> image) {
  SubgroupEmbedding e;
  e.subgroup_ = std::move(subgroup);
  e.ambient_ = std::move(ambient);
  e.image_ = std::move(image);
  e.preimage_.assign(e.ambient_->order(), -1);
  for (Element h = 0; h < static_cast<int>(e.image_.size()); ++h) {
    const Element g = e.image_[h];
    if (g < 0 || g >= e.ambient_->order()) throw SpecError("embedding image out of range");
    if (e.preimage_[g] >= 0) throw SpecError("embedding is not injective");
    e.preimage_[g] = h;
  }
  e.validate();
  return e;
}

SubgroupEmbedding SubgroupEmbedding::from_generator_images(
    GroupPtr subgroup, GroupPtr ambient,
    const std::vector<std::pair<Element, Element>>& generator_images) {
  const FiniteGroup& h = *subgroup;
  const FiniteGroup& g = *ambient;
  std::vector<Element> image(h.order(), -1);
  image[0] = 0;
  std::deque<Element> queue{0};
  while (!queue.empty()) {
    const Element x = queue.front();
    queue.pop_front();
    for (const auto& [s, t] : generator_images) {
      const Element y = h.mul(x, s);
      const Element gy = g.mul(image[x], t);
      if (image[y] < 0) {
        image[y] = gy;
        queue.push_back(y);
      } else if (image[y] != gy) {
        throw SpecError("generator images do not define a homomorphism (conflict at " +
                        h.label(y) + ")");
      }
    }
  }
  if (std::find(image.begin(), image.end(), -1) != image.end())
    throw SpecError("embedding generators do not generate the subgroup");
  return from_images(std::move(subgroup), std::move(ambient), std::move(image));
}

// ---------------------------------------------------------------------------
// Cosets

CosetSpace left_cosets(const SubgroupEmbedding& embedding, std::span<const Element> preferred) {
  const FiniteGroup& g = embedding.ambient();
  const FiniteGroup& h = embedding.subgroup();
  CosetSpace space;
  space.coset_of.assign(g.order(), -1);
  space.tail.assign(g.order(), -1);
  for (Element x = 0; x < g.order(); ++x) {
    if (space.coset_of[x] >= 0) continue;
    const int c = space.size();
    space.representatives.push_back(x);
    for (Element t = 0; t < h.order(); ++t) space.coset_of[g.mul(x, embedding.image(t))] = c;
  }
  std::vector<bool> used(space.representatives.size(), false);
  for (Element p : preferred) {
    if (p < 0 || p >= g.order()) throw SpecError("preferred representative out of range");
    const int c = space.coset_of[p];
    if (c == 0 && p != 0)
      throw SpecError("the identity coset is always represented by the identity");
    if (used[c] && space.representatives[c] != p)
      throw SpecError("two preferred representatives share the coset of " + g.label(p));
    used[c] = true;
    space.representatives[c] = p;
  }
  for (Element x = 0; x < g.order(); ++x) {
    const Element rep = space.representatives[space.coset_of[x]];
    const auto t = embedding.preimage(g.mul(g.inv(rep), x));
    if (!t) throw DefectError("coset decomposition failed");
    space.tail[x] = *t;
  }
  return space;
}

DoubleCosetDecomposition double_cosets(const SubgroupEmbedding& embedding,
                                       const CosetSpace& omega,
                                       std::span<const Element> preferred) {
  const FiniteGroup& g = embedding.ambient();
  const FiniteGroup& h = embedding.subgroup();
  DoubleCosetDecomposition d;
  d.class_of.assign(g.order(), -1);
  for (Element x = 0; x < g.order(); ++x) {
    if (d.class_of[x] >= 0) continue;
    const int c = d.size();
    // least element of HxH is the least element of its left coset
    d.representatives.push_back(omega.representatives[omega.coset_of[x]]);
    for (Element a = 0; a < h.order(); ++a)
      for (Element b = 0; b < h.order(); ++b)
        d.class_of[g.mul(g.mul(embedding.image(a), x), embedding.image(b))] = c;
  }
  // the coset representative of the least element may differ from x when
  // omega carries preferred representatives; pick the least representative
  // of omega inside each double coset
  for (int c = 0; c < d.size(); ++c) {
    Element best = -1;
    for (Element r : omega.representatives)
      if (d.class_of[r] == c && (best < 0 || r < best)) best = r;
    d.representatives[c] = best;
  }
  std::vector<bool> used(d.representatives.size(), false);
  for (Element p : preferred) {
    if (p < 0 || p >= g.order()) throw SpecError("preferred representative out of range");
    if (omega.representatives[omega.coset_of[p]] != p)
      throw SpecError("preferred double-coset representative " + g.label(p) +
                      " is not a left-coset representative");
    const int c = d.class_of[p];
    if (c == 0 && p != 0) continue;  // the H double coset keeps the identity
    if (used[c] && d.representatives[c] != p)
      throw SpecError("two preferred representatives share the double coset of " + g.label(p));
    used[c] = true;
    d.representatives[c] = p;
  }
  return d;
}

std::vector<Element> coset_stabilizer(const SubgroupEmbedding& embedding, Element x) {
  const FiniteGroup& g = embedding.ambient();
  const FiniteGroup& h = embedding.subgroup();
  std::vector<Element> out;
  const Element x_inv = g.inv(x);
  for (Element a = 0; a < h.order(); ++a) {
    // h x H = x H  <=>  x^-1 h x in H
    if (embedding.contains(g.mul(g.mul(x_inv, embedding.image(a)), x))) out.push_back(a);
  }
  return out;
}

std::vector<Element> normal_core(const SubgroupEmbedding& embedding) {
  const FiniteGroup& g = embedding.ambient();
  const FiniteGroup& h = embedding.subgroup();
  std::vector<Element> out;
  for (Element a = 0; a < h.order(); ++a) {
    bool inside = true;
    for (Element x = 0; x < g.order() && inside; ++x)
      inside = embedding.contains(g.conjugate(x, embedding.image(a)));
    if (inside) out.push_back(a);
  }
  return out;
}

ConjugacyClasses conjugacy_classes(const FiniteGroup& group) {
  ConjugacyClasses cc;
  cc.class_of.assign(group.order(), -1);
  for (Element a = 0; a < group.order(); ++a) {
    if (cc.class_of[a] >= 0) continue;
    const int c = cc.size();
    std::vector<Element> members;
    for (Element x = 0; x < group.order(); ++x) {
      const Element b = group.conjugate(x, a);
      if (cc.class_of[b] < 0) {
        cc.class_of[b] = c;
        members.push_back(b);
      }
    }
    std::sort(members.begin(), members.end());
    cc.classes.push_back(std::move(members));
  }
  return cc;
}

}  // namespace amalgam
