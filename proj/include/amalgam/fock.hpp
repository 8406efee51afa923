#pragma once

// The truncated Fock model: creation operators T_g and unitaries V_h on the
// span of reduced words of length <= L, and the relations they satisfy.

#include <map>
#include <string>
#include <vector>

#include "amalgam/product.hpp"

namespace amalgam {

/// Integer matrix stored by columns.
class SparseOperator {
 public:
  explicit SparseOperator(std::size_t dimension = 0) : columns_(dimension) {}
  static SparseOperator identity(std::size_t dimension);

  std::size_t dimension() const { return columns_.size(); }
  void set(int row, int col, long value);
  long get(int row, int col) const;
  const std::map<int, long>& column(int col) const { return columns_[col]; }
  std::size_t nonzeros() const;

  SparseOperator adjoint() const;
  SparseOperator operator*(const SparseOperator& o) const;
  SparseOperator operator+(const SparseOperator& o) const;
  SparseOperator operator-(const SparseOperator& o) const;
  bool operator==(const SparseOperator& o) const { return columns_ == o.columns_; }

  bool is_diagonal() const;
  /// Largest |entry| over rows and columns below `limit` (all when limit < 0).
  long max_abs(int limit = -1) const;
  /// Exact rank over Q.
  int rank() const;
  /// "row col value" lines.
  std::string coordinates() const;

 private:
  void check(const SparseOperator& o) const;
  std::vector<std::map<int, long>> columns_;
};

/// One creation operator T_g: g ranges over G_i \ H for finite factors and
/// over a^{±1} h for symbolic ones.
struct FockGenerator {
  Letter letter;
  Word word;
  int factor = 0;
  std::string label;
};

class TruncatedFock {
 public:
  TruncatedFock(SpecPtr spec, int truncation);

  const AmalgamSpec& spec() const { return *spec_; }
  int truncation() const { return truncation_; }
  std::size_t dimension() const { return basis_.size(); }
  const std::vector<Word>& basis() const { return basis_; }
  /// Words of length < n occupy indices [0, shell_end(n-1)).
  std::size_t shell_end(int n) const { return shell_end_[n]; }
  /// Number of basis words of length <= truncation - 1.
  std::size_t interior() const { return truncation_ == 0 ? 0 : shell_end_[truncation_ - 1]; }
  int index(const Word& w) const;

  const std::vector<FockGenerator>& generators() const { return generators_; }
  const SparseOperator& T(std::size_t generator) const { return t_[generator]; }
  const SparseOperator& V(Element h) const { return v_[h]; }
  /// Position of the generator for g (finite) or a^power h (symbolic).
  std::size_t generator_index(const Letter& letter) const;
  /// p_0: the projection onto words of length 0.
  SparseOperator vacuum() const;
  /// Diagonal projection onto the basis words accepted by `keep`.
  template <class F>
  SparseOperator projection(F&& keep) const {
    SparseOperator p(dimension());
    for (std::size_t k = 0; k < basis_.size(); ++k)
      if (keep(basis_[k])) p.set(static_cast<int>(k), static_cast<int>(k), 1);
    return p;
  }

 private:
  SpecPtr spec_;
  int truncation_;
  std::vector<Word> basis_;
  std::vector<std::size_t> shell_end_;
  std::map<std::vector<int>, int> index_;
  std::vector<FockGenerator> generators_;
  std::vector<SparseOperator> t_;
  std::vector<SparseOperator> v_;
};

struct RelationCheck {
  std::string name;
  std::size_t instances = 0;
  /// Max |entry| of LHS - RHS on the full truncation.
  long full_residual = 0;
  /// Max |entry| of LHS - RHS - (untruncated finite-rank term) on words of
  /// length <= L - 1.
  long interior_residual = 0;
  /// Largest rank of LHS - RHS over the instances; -1 when not tracked.
  int defect_rank = -1;
  /// Whether the relation is required to hold on the full truncation.
  bool full_required = false;
  bool ok() const { return interior_residual == 0 && (!full_required || full_residual == 0); }
};

struct FockReport {
  int truncation = 0;
  std::size_t dimension = 0;
  std::size_t interior = 0;
  std::vector<RelationCheck> relations;
  /// T_g raises the length by exactly one and T_g* T_g is a 0/1 diagonal.
  bool grading = false;
  bool initial_projections = false;
  /// Multiplicity of each irreducible of H in P_i V_h P_i, per factor. A
  /// diagnostic only.
  std::vector<std::vector<long>> subgroup_multiplicities;
  bool all_irreducibles_present = false;

  bool ok() const;
};

FockReport verify_relations(const TruncatedFock& fock);
FockReport verify_relations(SpecPtr spec, int truncation);

/// Z * Z over the trivial group, generators a and b.
SpecPtr free_group_spec(const Limits& limits = {});

struct F2Example {
  /// Order a, a^-1, b, b^-1.
  std::vector<std::string> labels;
  std::vector<std::vector<int>> matrix;
  /// The lambda-based T_x agree with creation operators on admissible sequences.
  bool creation_matches = false;
  /// sum_x T_x T_x* + p_0 = 1 on the full truncation.
  bool vacuum_sum = false;
  /// T_x* T_x = sum_{y != x^-1} T_y T_y* + p_0 on the interior.
  bool initial_sums = false;
  /// T_x vanishes on words starting with x^-1.
  bool kills_inverse = false;
  FockReport report;
  bool ok() const { return creation_matches && vacuum_sum && initial_sums && kills_inverse && report.ok(); }
};

F2Example f2_example(int truncation);

}  // namespace amalgam
