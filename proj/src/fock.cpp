#include "amalgam/fock.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "amalgam/chartab.hpp"
#include "amalgam/error.hpp"

namespace amalgam {

SparseOperator SparseOperator::identity(std::size_t dimension) {
  SparseOperator id(dimension);
  for (std::size_t k = 0; k < dimension; ++k) id.columns_[k][static_cast<int>(k)] = 1;
  return id;
}

void SparseOperator::set(int row, int col, long value) {
  if (value == 0)
    columns_[col].erase(row);
  else
    columns_[col][row] = value;
}

long SparseOperator::get(int row, int col) const {
  const auto it = columns_[col].find(row);
  return it == columns_[col].end() ? 0 : it->second;
}

std::size_t SparseOperator::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : columns_) n += c.size();
  return n;
}

void SparseOperator::check(const SparseOperator& o) const {
  if (o.dimension() != dimension()) throw DefectError("operator dimensions differ");
}

SparseOperator SparseOperator::adjoint() const {
  SparseOperator a(dimension());
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& [r, v] : columns_[c]) a.columns_[r][static_cast<int>(c)] = v;
  return a;
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
  check(o);
  SparseOperator p(dimension());
  for (std::size_t c = 0; c < o.columns_.size(); ++c) {
    auto& out = p.columns_[c];
    for (const auto& [k, w] : o.columns_[c])
      for (const auto& [r, v] : columns_[k]) out[r] += v * w;
    std::erase_if(out, [](const auto& e) { return e.second == 0; });
  }
  return p;
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
  check(o);
  SparseOperator s = *this;
  for (std::size_t c = 0; c < o.columns_.size(); ++c)
    for (const auto& [r, v] : o.columns_[c]) s.set(r, static_cast<int>(c), s.get(r, static_cast<int>(c)) + v);
  return s;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
  check(o);
  SparseOperator s = *this;
  for (std::size_t c = 0; c < o.columns_.size(); ++c)
    for (const auto& [r, v] : o.columns_[c]) s.set(r, static_cast<int>(c), s.get(r, static_cast<int>(c)) - v);
  return s;
}

bool SparseOperator::is_diagonal() const {
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& e : columns_[c])
      if (e.first != static_cast<int>(c)) return false;
  return true;
}

long SparseOperator::max_abs(int limit) const {
  long m = 0;
  const int n = limit < 0 ? static_cast<int>(columns_.size()) : std::min(limit, static_cast<int>(columns_.size()));
  for (int c = 0; c < n; ++c)
    for (const auto& [r, v] : columns_[c])
      if (r < n) m = std::max(m, std::labs(v));
  return m;
}

int SparseOperator::rank() const {
  if (is_diagonal()) return static_cast<int>(nonzeros());
  std::vector<std::map<int, mpq_class>> rows;
  for (const auto& col : adjoint().columns_) {
    std::map<int, mpq_class> row;
    for (const auto& [c, v] : col) row[c] = v;
    if (!row.empty()) rows.push_back(std::move(row));
  }
  // pivots[c]: a reduced row whose leading column is c
  std::map<int, std::map<int, mpq_class>> pivots;
  for (auto row : rows) {
    while (!row.empty()) {
      const auto lead = row.begin()->first;
      const auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(row));
        break;
      }
      const mpq_class factor = row.begin()->second / it->second.begin()->second;
      for (const auto& [c, v] : it->second) {
        mpq_class& x = row[c];
        x -= factor * v;
        if (x == 0) row.erase(c);
      }
    }
  }
  return static_cast<int>(pivots.size());
}

std::string SparseOperator::coordinates() const {
  std::ostringstream out;
  for (std::size_t c = 0; c < columns_.size(); ++c)
    for (const auto& [r, v] : columns_[c]) out << r << ' ' << c << ' ' << v << '\n';
  return out.str();
}

namespace {

std::vector<int> word_key(const Word& w) {
  std::vector<int> key{w.tail};
  for (const auto& s : w.syllables) {
    key.push_back(s.factor);
    key.push_back(s.value);
  }
  return key;
}

std::vector<int> letter_key(const Letter& l) { return {l.factor, l.element, l.power}; }

}  // namespace

TruncatedFock::TruncatedFock(SpecPtr spec, int truncation) : spec_(std::move(spec)), truncation_(truncation) {
  if (truncation_ < 0) throw SpecError("truncation length must be nonnegative");
  basis_ = spec_->ball(truncation_);
  shell_end_.assign(truncation_ + 1, 0);
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    index_.emplace(word_key(basis_[k]), static_cast<int>(k));
    ++shell_end_[spec_->length(basis_[k])];
  }
  for (int n = 1; n <= truncation_; ++n) shell_end_[n] += shell_end_[n - 1];

  const FiniteGroup& h = spec_->subgroup();
  for (int i = 0; i < spec_->size(); ++i) {
    const Factor& f = spec_->factor(i);
    if (f.symbolic) {
      for (int power : {1, -1})
        for (Element t = 0; t < h.order(); ++t) {
          const Letter l{i, t, power};
          const Word w = spec_->reduce(std::span<const Letter>(&l, 1));
          generators_.push_back({l, w, i, spec_->to_string(w)});
        }
    } else {
      for (Element g = 0; g < f.group().order(); ++g) {
        if (f.embedding->contains(g)) continue;
        const Letter l{i, g, 0};
        const Word w = spec_->reduce(std::span<const Letter>(&l, 1));
        generators_.push_back({l, w, i, f.group().label(g) + "_" + std::to_string(i + 1)});
      }
    }
  }

  for (const auto& g : generators_) {
    SparseOperator t(dimension());
    for (std::size_t k = 0; k < basis_.size() && k < interior(); ++k) {
      const Word image = spec_->multiply(g.word, basis_[k]);
      if (spec_->length(image) == spec_->length(basis_[k]) + 1) t.set(index(image), static_cast<int>(k), 1);
    }
    t_.push_back(std::move(t));
  }
  for (Element x = 0; x < h.order(); ++x) {
    SparseOperator v(dimension());
    const Word hw = spec_->from_subgroup(x);
    for (std::size_t k = 0; k < basis_.size(); ++k) v.set(index(spec_->multiply(hw, basis_[k])), static_cast<int>(k), 1);
    v_.push_back(std::move(v));
  }
}

int TruncatedFock::index(const Word& w) const {
  const auto it = index_.find(word_key(w));
  if (it == index_.end()) throw DefectError("word " + spec_->to_string(w) + " is outside the truncation");
  return it->second;
}

std::size_t TruncatedFock::generator_index(const Letter& letter) const {
  for (std::size_t k = 0; k < generators_.size(); ++k)
    if (letter_key(generators_[k].letter) == letter_key(letter)) return k;
  throw DefectError("no creation operator for the requested letter");
}

SparseOperator TruncatedFock::vacuum() const {
  return projection([&](const Word& w) { return w.syllables.empty(); });
}

namespace {

// g h and h g as generator letters.
Letter right_by(const AmalgamSpec& spec, const Letter& g, Element h) {
  const Factor& f = spec.factor(g.factor);
  if (f.symbolic) return {g.factor, spec.subgroup().mul(g.element, h), g.power};
  return {g.factor, f.group().mul(g.element, f.embedding->image(h)), 0};
}

Letter left_by(const AmalgamSpec& spec, const Letter& g, Element h) {
  const Factor& f = spec.factor(g.factor);
  if (f.symbolic) return {g.factor, spec.subgroup().mul(h, g.element), g.power};
  return {g.factor, f.group().mul(f.embedding->image(h), g.element), 0};
}

bool same_coset(const AmalgamSpec& spec, const Letter& a, const Letter& b) {
  if (a.factor != b.factor) return false;
  const Factor& f = spec.factor(a.factor);
  if (f.symbolic) return a.power == b.power;
  return f.omega.coset_of[a.element] == f.omega.coset_of[b.element];
}

// Range projections named on the right of the initial-projection and unit
// relations: every nontrivial coset representative of the finite factors
// other than `skip`, and a^{±1} for the symbolic ones.
SparseOperator range_sum(const TruncatedFock& fock, const std::vector<SparseOperator>& p, int skip) {
  const AmalgamSpec& spec = fock.spec();
  SparseOperator s(fock.dimension());
  for (int j = 0; j < spec.size(); ++j) {
    if (j == skip) continue;
    const Factor& f = spec.factor(j);
    if (f.symbolic) {
      s = s + p[fock.generator_index({j, 0, 1})] + p[fock.generator_index({j, 0, -1})];
    } else {
      for (int c = 1; c < f.omega.size(); ++c) s = s + p[fock.generator_index({j, f.representative(c), 0})];
    }
  }
  return s;
}

}  // namespace

bool FockReport::ok() const {
  if (!grading || !initial_projections) return false;
  return std::all_of(relations.begin(), relations.end(), [](const RelationCheck& r) { return r.ok(); });
}

FockReport verify_relations(const TruncatedFock& fock) {
  const AmalgamSpec& spec = fock.spec();
  const auto& gens = fock.generators();
  const int interior = static_cast<int>(fock.interior());
  const FiniteGroup& h = spec.subgroup();

  FockReport report;
  report.truncation = fock.truncation();
  report.dimension = fock.dimension();
  report.interior = fock.interior();

  std::vector<SparseOperator> range, initial;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    range.push_back(fock.T(k) * fock.T(k).adjoint());
    initial.push_back(fock.T(k).adjoint() * fock.T(k));
  }

  report.grading = true;
  report.initial_projections = true;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (int c = 0; c < static_cast<int>(fock.dimension()); ++c)
      for (const auto& [r, v] : fock.T(k).column(c))
        if (v != 1 || spec.length(fock.basis()[r]) != spec.length(fock.basis()[c]) + 1) report.grading = false;
    if (!initial[k].is_diagonal() || initial[k].max_abs() > 1) report.initial_projections = false;
  }

  {
    RelationCheck r{"T_gh = T_g V_h and T_hg = V_h T_g"};
    r.full_required = true;
    for (std::size_t k = 0; k < gens.size(); ++k)
      for (Element x = 0; x < h.order(); ++x) {
        const auto& tgh = fock.T(fock.generator_index(right_by(spec, gens[k].letter, x)));
        const auto& thg = fock.T(fock.generator_index(left_by(spec, gens[k].letter, x)));
        const auto d1 = tgh - fock.T(k) * fock.V(x);
        const auto d2 = thg - fock.V(x) * fock.T(k);
        r.full_residual = std::max({r.full_residual, d1.max_abs(), d2.max_abs()});
        r.interior_residual = std::max({r.interior_residual, d1.max_abs(interior), d2.max_abs(interior)});
        r.instances += 2;
      }
    report.relations.push_back(r);
  }

  {
    RelationCheck r{"P_g P_g' = P_g when gH = g'H, else 0"};
    r.full_required = true;
    const long n = static_cast<long>(gens.size());
    long full = 0, inner = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : full, inner)
    for (long a = 0; a < n; ++a)
      for (long b = 0; b < n; ++b) {
        const bool same = same_coset(spec, gens[a].letter, gens[b].letter);
        const SparseOperator expected = same ? range[a] : SparseOperator(fock.dimension());
        const auto d = range[a] * range[b] - expected;
        full = std::max(full, d.max_abs());
        inner = std::max(inner, d.max_abs(interior));
        if (same) {
          const auto e = range[a] - range[b];
          full = std::max(full, e.max_abs());
          inner = std::max(inner, e.max_abs(interior));
        }
      }
    r.full_residual = full;
    r.interior_residual = inner;
    r.instances = static_cast<std::size_t>(n * n);
    report.relations.push_back(r);
  }

  const SparseOperator p0 = fock.vacuum();
  {
    RelationCheck r{"T_g* T_g = sum of ranges leaving the factor"};
    r.defect_rank = 0;
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const int i = gens[k].factor;
      SparseOperator rhs = range_sum(fock, range, i);
      if (spec.factor(i).symbolic) rhs = rhs + range[fock.generator_index({i, 0, gens[k].letter.power})];
      const auto d = initial[k] - rhs;
      r.full_residual = std::max(r.full_residual, d.max_abs());
      r.interior_residual = std::max(r.interior_residual, (d - p0).max_abs(interior));
      r.defect_rank = std::max(r.defect_rank, d.rank());
      ++r.instances;
    }
    report.relations.push_back(r);
  }

  {
    RelationCheck r{"sum of range projections = 1"};
    const auto d = SparseOperator::identity(fock.dimension()) - range_sum(fock, range, -1);
    r.full_residual = d.max_abs();
    r.interior_residual = (d - p0).max_abs(interior);
    r.defect_rank = d.rank();
    r.instances = 1;
    report.relations.push_back(r);
  }

  // C*(H) inside P_i V_h P_i: multiplicities of the irreducibles of H.
  const CharacterTable table = character_table(h);
  report.all_irreducibles_present = true;
  for (int i = 0; i < spec.size(); ++i) {
    std::vector<long> trace(h.order(), 0);
    for (Element x = 0; x < h.order(); ++x)
      for (std::size_t k = 0; k < fock.dimension(); ++k) {
        const Word& w = fock.basis()[k];
        if (!w.syllables.empty() && w.syllables.front().factor == i && fock.V(x).get(static_cast<int>(k), static_cast<int>(k)))
          ++trace[x];
      }
    std::vector<long> mult;
    for (int c = 0; c < table.size(); ++c) {
      Cyclotomic s(0L);
      for (Element x = 0; x < h.order(); ++x) s += table.on(c, x).conj() * Cyclotomic(trace[x]);
      s /= mpq_class(h.order());
      const mpq_class q = s.rational();
      if (q.get_den() != 1) throw DefectError("non-integral multiplicity in the compressed representation");
      mult.push_back(q.get_num().get_si());
      if (mult.back() < 1) report.all_irreducibles_present = false;
    }
    report.subgroup_multiplicities.push_back(std::move(mult));
  }
  return report;
}

FockReport verify_relations(SpecPtr spec, int truncation) {
  return verify_relations(TruncatedFock(std::move(spec), truncation));
}

SpecPtr free_group_spec(const Limits& limits) {
  auto h = std::make_shared<const FiniteGroup>(cyclic(1));
  std::vector<Factor> f;
  f.push_back(symbolic_factor("Z", "a"));
  f.push_back(symbolic_factor("Z", "b"));
  return std::make_shared<const AmalgamSpec>(h, std::move(f), limits);
}

F2Example f2_example(int truncation) {
  const TruncatedFock fock(free_group_spec(), truncation);
  const AmalgamSpec& spec = fock.spec();
  F2Example ex;
  // letters of S in the order a, a^-1, b, b^-1
  const std::vector<Letter> s = {{0, 0, 1}, {0, 0, -1}, {1, 0, 1}, {1, 0, -1}};
  ex.labels = {"a", "a^-1", "b", "b^-1"};
  std::vector<std::size_t> gen;
  for (const auto& l : s) gen.push_back(fock.generator_index(l));
  auto inverse_of = [](int x) { return x ^ 1; };
  ex.matrix.assign(4, std::vector<int>(4, 0));
  for (int x = 0; x < 4; ++x)
    for (int y = 0; y < 4; ++y) {
      const Letter pair[] = {s[x], s[y]};
      ex.matrix[x][y] = spec.length(spec.reduce(pair)) == 2 ? 1 : 0;
    }

  // Admissible sequences of the Fock space, read off the basis words.
  auto sequence = [&](const Word& w) {
    std::vector<int> seq;
    for (const auto& syl : w.syllables)
      for (int k = 0; k < std::abs(syl.value); ++k) seq.push_back(2 * syl.factor + (syl.value > 0 ? 0 : 1));
    return seq;
  };
  auto word_of_sequence = [&](const std::vector<int>& seq) {
    Word w = spec.identity();
    for (int x : seq) {
      const int factor = x / 2, step = x % 2 == 0 ? 1 : -1;
      if (!w.syllables.empty() && w.syllables.back().factor == factor)
        w.syllables.back().value += step;
      else
        w.syllables.push_back({factor, step});
    }
    return w;
  };

  ex.creation_matches = true;
  ex.kills_inverse = true;
  for (std::size_t k = 0; k < fock.dimension(); ++k) {
    const auto seq = sequence(fock.basis()[k]);
    for (int x = 0; x < 4; ++x) {
      const auto& col = fock.T(gen[x]).column(static_cast<int>(k));
      const bool room = static_cast<int>(seq.size()) < truncation;
      const bool admissible = seq.empty() || ex.matrix[x][seq.front()] == 1;
      if (room && admissible) {
        std::vector<int> longer{x};
        longer.insert(longer.end(), seq.begin(), seq.end());
        const int target = fock.index(word_of_sequence(longer));
        if (col.size() != 1 || col.begin()->first != target || col.begin()->second != 1) ex.creation_matches = false;
      } else if (!col.empty()) {
        ex.creation_matches = false;
      }
      if (!seq.empty() && seq.front() == inverse_of(x) && !col.empty()) ex.kills_inverse = false;
    }
  }

  const SparseOperator p0 = fock.vacuum();
  SparseOperator sum = p0;
  std::vector<SparseOperator> range;
  for (int x = 0; x < 4; ++x) {
    range.push_back(fock.T(gen[x]) * fock.T(gen[x]).adjoint());
    sum = sum + range.back();
  }
  ex.vacuum_sum = sum == SparseOperator::identity(fock.dimension());
  ex.initial_sums = true;
  const int interior = static_cast<int>(fock.interior());
  for (int x = 0; x < 4; ++x) {
    SparseOperator rhs = p0;
    for (int y = 0; y < 4; ++y)
      if (y != inverse_of(x)) rhs = rhs + range[y];
    const auto lhs = fock.T(gen[x]).adjoint() * fock.T(gen[x]);
    if ((lhs - rhs).max_abs(interior) != 0) ex.initial_sums = false;
  }
  ex.report = verify_relations(fock);
  return ex;
}

}  // namespace amalgam
