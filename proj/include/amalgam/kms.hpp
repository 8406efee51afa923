#pragma once

// KMS data for generalized gauge actions: inverse temperature, the step
// measure mu of the random walk, the stationary cylinder measure nu, and
// numerical checks tying them together.

#include <cstdint>
#include <string>
#include <vector>

#include "amalgam/boundary.hpp"
#include "amalgam/ktheory.hpp"
#include "amalgam/product.hpp"

namespace amalgam {

/// One positive weight per factor.
using GaugeWeights = std::vector<double>;

/// Throws SpecError for symbolic factors, a wrong count or a weight <= 0.
void require_weights(const AmalgamSpec& spec, const GaugeWeights& omega);

/// Root of |I| - 1 = sum_i 1 / (1 + lambda_i(beta)) with
/// lambda_i(beta) = e^{-beta omega_i} ([G_i:H] - 1). Returns 0 exactly when
/// sum_i 1/[G_i:H] = |I| - 1.
double solve_beta(const AmalgamSpec& spec, const GaugeWeights& omega, double* residual = nullptr);

/// Per-factor step weights: every g in G_i \ H gets mu[i].
std::vector<double> mu_weights(const AmalgamSpec& spec, const GaugeWeights& omega, double beta);

/// Largest |1 - (|H| e^{beta w_i} mu_i + (g_i - |H|) mu_i + sum_{j != i} g_j e^{-beta w_j} mu_j)|.
double mu_system_residual(const AmalgamSpec& spec, const GaugeWeights& omega, double beta,
                          const std::vector<double>& mu);

struct KmsSolution {
  GaugeWeights omega;
  double beta = 0;
  double beta_residual = 0;
  bool boundary_case = false;
  /// e^{-beta omega_i}
  std::vector<double> decay;
  /// e^{-beta omega_i} ([G_i:H] - 1)
  std::vector<double> lambda;
  std::vector<double> C;
  std::vector<double> mu;
  double mu_residual = 0;
};

KmsSolution solve_kms(const AmalgamSpec& spec, const GaugeWeights& omega);

double nu_cylinder(const AmalgamSpec& spec, const KmsSolution& sol, const Cylinder& c);
double nu_cylinders(const AmalgamSpec& spec, const KmsSolution& sol, const std::vector<Cylinder>& parts);

/// The support of mu as (factor, element) pairs, factor-major.
std::vector<std::pair<int, Element>> mu_support(const AmalgamSpec& spec);

struct StationarityReport {
  int max_depth = 0;
  std::size_t cylinders = 0;
  double max_residual = 0;
  Cylinder worst;
  double tolerance = 1e-10;
  bool ok() const { return max_residual <= tolerance; }
};

/// Checks sum_g mu(g) nu(g^-1 C) = nu(C) on every cylinder of depth <= max_depth.
StationarityReport verify_stationarity(const AmalgamSpec& spec, const KmsSolution& sol, int max_depth,
                                       double tolerance = 1e-10);

struct WalkReport {
  long trials = 0;
  int horizon = 0;
  std::uint64_t seed = 0;
  /// Depth-1 cylinders in refine order. counts[k] is the number of walks
  /// whose first syllable at the horizon lies in cylinders[k].
  std::vector<Cylinder> cylinders;
  std::vector<long> counts;
  /// Walks whose first syllable changed during the final quarter, or that
  /// ended in H.
  long unstable = 0;

  double frequency(std::size_t k) const;
  double std_error(std::size_t k) const;
  /// Summed over the cylinders of one factor.
  double factor_frequency(int factor) const;
  double factor_std_error(int factor) const;
  bool warning() const { return unstable * 100 > trials; }
};

/// Right-increment walks from the identity, trial t seeded with seed + t.
WalkReport random_walk(const AmalgamSpec& spec, const std::vector<double>& mu, long trials, int horizon,
                       std::uint64_t seed);

struct PerronReport {
  bool skipped = false;
  std::string notice;
  double radius = 0;
  /// Normalised so that sum n_k y(i,k) = 1.
  std::vector<double> y;
  bool positive = false;
  double tolerance = 1e-9;
  bool ok() const { return skipped || (positive && radius > 1 - tolerance && radius < 1 + tolerance); }
};

/// Spectral radius and Perron vector of a nonnegative matrix, by power
/// iteration on I + M.
double perron_root(const std::vector<std::vector<double>>& m, std::vector<double>* vector = nullptr);

/// B((i,k),(j,l)) = e^{-beta omega_i} A((j,l),(i,k)). Skipped when A is
/// reducible unless forced.
PerronReport perron_check(const AmalgamSpec& spec, const KmsSolution& sol, const AGammaMatrix& a,
                          const std::vector<int>& degrees, bool force = false);

struct FactorType {
  bool classified = false;
  double lambda = 0;
  std::string to_string() const;
};

/// III_lambda for homogeneous specs under the plain gauge action.
FactorType factor_type(const AmalgamSpec& spec, const GaugeWeights& omega);

struct MartinReport {
  int factor = 0;
  Element generator = 0;
  Cylinder cylinder;
  double exact = 0;
  double estimate = 0;
  double std_error = 0;
  double bias_bound = 0;
  long trials = 0;
  long hits = 0;
  long escapes = 0;
  long undecided = 0;
  bool non_transient() const { return undecided * 20 > trials; }
  bool ok() const;
};

/// Probability that the walk started at g^-1 reaches H, against
/// nu(g^-1 C) / nu(C) for a depth-1 cylinder C outside Y_factor. Walks stop
/// on H, beyond escape_radius, or after horizon steps.
MartinReport martin_kernel_crosscheck(const AmalgamSpec& spec, const KmsSolution& sol, int factor,
                                      Element generator, long trials, std::uint64_t seed,
                                      int horizon = 2000, int escape_radius = 40);

}  // namespace amalgam
