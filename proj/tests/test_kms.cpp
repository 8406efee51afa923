#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <cmath>

#include "amalgam/kms.hpp"
#include "amalgam/reference.hpp"
#include "fixtures.hpp"

using namespace amalgam;

namespace {

const double root2 = std::sqrt(2.0);

// Solves the per-factor stationarity system directly:
// 1 = |H| e^{b w_i} mu_i + (g_i - |H|) mu_i + sum_{j != i} g_j e^{-b w_j} mu_j.
std::vector<double> mu_by_linear_system(const AmalgamSpec& spec, const GaugeWeights& omega, double beta) {
  const int n = spec.size();
  const double h = spec.subgroup().order();
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double g = spec.factor(j).group().order() - h;
      m(i, j) = i == j ? h * std::exp(beta * omega[i]) + g - h : g * std::exp(-beta * omega[j]);
    }
  Eigen::VectorXd x = m.fullPivLu().solve(Eigen::VectorXd::Ones(n));
  return {x.data(), x.data() + n};
}

double spectral_radius(const std::vector<std::vector<double>>& m) {
  const int n = static_cast<int>(m.size());
  Eigen::MatrixXd e(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) e(r, c) = m[r][c];
  return e.eigenvalues().cwiseAbs().maxCoeff();
}

AGammaMatrix a_gamma(const SpecPtr& spec) { return build_a_gamma(*spec, character_table(spec->subgroup())); }

}  // namespace

TEST(SolveBeta, ClosedForms) {
  // 1/(1+t) + 1/(1+2t) = 1  <=>  2t^2 = 1
  EXPECT_NEAR(std::exp(-solve_beta(*fixtures::sl2z(), {1, 1})), 1 / root2, 1e-10);
  EXPECT_NEAR(std::exp(-solve_beta(*fixtures::s4s4(), {1, 1})), 1.0 / 3, 1e-10);
  EXPECT_NEAR(std::exp(-solve_beta(*fixtures::z2_cubed(), {1, 1, 1})), 0.5, 1e-10);
}

TEST(SolveBeta, ResidualAndScaling) {
  auto spec = fixtures::sl2z();
  double res = 1;
  const double b1 = solve_beta(*spec, {1, 1}, &res);
  EXPECT_LE(res, 1e-12);
  // beta * omega is what enters the equation
  EXPECT_NEAR(solve_beta(*spec, {2, 2}), b1 / 2, 1e-12);
  const double b = solve_beta(*spec, {0.5, 3}, &res);
  EXPECT_LE(res, 1e-12);
  EXPECT_NEAR(1 / (1 + std::exp(-b * 0.5)) + 1 / (1 + 2 * std::exp(-b * 3)), 1.0, 1e-12);
}

TEST(SolveBeta, RejectsBadWeights) {
  auto spec = fixtures::sl2z();
  EXPECT_THROW(solve_beta(*spec, {1}), SpecError);
  EXPECT_THROW(solve_beta(*spec, {1, 0}), SpecError);
  EXPECT_THROW(solve_beta(*spec, {1, -2}), SpecError);
  EXPECT_THROW(solve_beta(*fixtures::mixed(), {1, 1}), SpecError);
}

TEST(MuWeights, Sl2zClosedForm) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  EXPECT_NEAR(sol.C[0], root2, 1e-10);
  EXPECT_NEAR(sol.C[1], 2, 1e-10);
  EXPECT_NEAR(sol.mu[0], 2 / (4 + 4 * root2), 1e-12);
  EXPECT_NEAR(sol.mu[1], root2 / (4 + 4 * root2), 1e-12);
  const auto direct = mu_by_linear_system(*spec, {1, 1}, sol.beta);
  EXPECT_NEAR(sol.mu[0], direct[0], 1e-12);
  EXPECT_NEAR(sol.mu[1], direct[1], 1e-12);
}

TEST(MuWeights, AgreesWithLinearSystem) {
  const std::vector<std::pair<SpecPtr, GaugeWeights>> cases = {
      {fixtures::sl2z(), {1, 1}},     {fixtures::sl2z(), {0.3, 2.5}},   {fixtures::s4s4(), {1, 1}},
      {fixtures::s4s4(), {2, 0.7}},   {fixtures::z2_cubed(), {1, 1, 1}}, {fixtures::z2_cubed(), {1, 2, 3}}};
  for (const auto& [spec, omega] : cases) {
    const auto sol = solve_kms(*spec, omega);
    const auto direct = mu_by_linear_system(*spec, omega, sol.beta);
    double total = 0;
    for (int i = 0; i < spec->size(); ++i) {
      EXPECT_GT(sol.mu[i], 0);
      EXPECT_NEAR(sol.mu[i], direct[i], 1e-12);
      total += (spec->factor(i).group().order() - spec->subgroup().order()) * sol.mu[i];
    }
    EXPECT_NEAR(total, 1, 1e-14);
    EXPECT_LE(sol.mu_residual, 1e-12);
  }
}

TEST(MuWeights, ProofVariantOfCoefficientFails) {
  // Using (1 - e^{-b w_i}) |H| in place of (1 - e^{b w_i}) |H| does not solve the system.
  auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 2});
  const double h = 6;
  std::vector<double> c;
  for (int i = 0; i < 2; ++i) c.push_back((1 - sol.decay[i]) * 18 - (1 - sol.decay[i]) * h);
  const double denom = 18 * c[1] + 18 * c[0];
  const std::vector<double> variant = {c[1] / denom, c[0] / denom};
  EXPECT_GT(mu_system_residual(*spec, {1, 2}, sol.beta, variant), 1e-3);
}

TEST(MuWeights, HomogeneousIsUniform) {
  const auto s4 = solve_kms(*fixtures::s4s4(), {1, 1});
  EXPECT_NEAR(s4.mu[0], 1.0 / 36, 1e-14);
  EXPECT_NEAR(s4.mu[1], 1.0 / 36, 1e-14);
  const auto z2 = solve_kms(*fixtures::z2_cubed(), {1, 1, 1});
  for (double m : z2.mu) EXPECT_NEAR(m, 1.0 / 3, 1e-14);
}

TEST(Nu, DepthOneClosedForm) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  double y1 = 0, y2 = 0;
  for (const auto& c : refine(*spec, Cylinder{}, 1)) (c.prefix[0].factor == 0 ? y1 : y2) += nu_cylinder(*spec, sol, c);
  EXPECT_NEAR(y1, 1 / (1 + root2), 1e-12);
  EXPECT_NEAR(y2, 2 / (2 + root2), 1e-12);
  EXPECT_NEAR(y1 + y2, 1, 1e-12);
  EXPECT_EQ(nu_cylinder(*spec, sol, Cylinder{}), 1);
}

TEST(Nu, FinitelyAdditive) {
  for (const auto& [spec, omega] : std::vector<std::pair<SpecPtr, GaugeWeights>>{
           {fixtures::sl2z(), {1, 1}}, {fixtures::s4s4(), {1, 3}}, {fixtures::z2_cubed(), {0.5, 1, 2}}}) {
    const auto sol = solve_kms(*spec, omega);
    for (int d = 0; d <= 2; ++d)
      for (const auto& c : refine(*spec, Cylinder{}, d))
        EXPECT_NEAR(nu_cylinders(*spec, sol, refine(*spec, c, d + 2)), nu_cylinder(*spec, sol, c), 1e-12);
  }
}

TEST(Nu, DependsOnlyOnFactorIndices) {
  auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 2});
  for (const auto& c : refine(*spec, Cylinder{}, 2)) {
    const int i1 = c.prefix[0].factor, i2 = c.prefix[1].factor;
    EXPECT_NEAR(nu_cylinder(*spec, sol, c), sol.decay[i1] / (3 + 1 / sol.decay[i2]), 1e-14);
  }
}

TEST(Stationarity, Sl2zToDepthThree) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto r = verify_stationarity(*spec, sol, 3);
  EXPECT_TRUE(r.ok()) << r.max_residual;
  EXPECT_EQ(r.cylinders, 1u + 3 + 4 + 6);
  const auto ref = reference::verify_stationarity(*spec, sol, 3);
  EXPECT_EQ(ref.max_residual, r.max_residual);
}

TEST(Stationarity, S4ToDepthTwo) {
  auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto r = verify_stationarity(*spec, sol, 2);
  EXPECT_TRUE(r.ok()) << r.max_residual;
  EXPECT_EQ(r.cylinders, 1u + 6 + 18);
}

TEST(Stationarity, UnequalWeights) {
  for (const auto& [spec, omega] : std::vector<std::pair<SpecPtr, GaugeWeights>>{
           {fixtures::sl2z(), {0.4, 1.7}}, {fixtures::z2_cubed(), {1, 2, 3}}}) {
    const auto sol = solve_kms(*spec, omega);
    EXPECT_TRUE(verify_stationarity(*spec, sol, 3).ok());
  }
}

TEST(Stationarity, DetectsWrongMeasure) {
  auto spec = fixtures::sl2z();
  auto sol = solve_kms(*spec, {1, 1});
  std::swap(sol.mu[0], sol.mu[1]);
  const auto r = verify_stationarity(*spec, sol, 2);
  EXPECT_FALSE(r.ok());
  EXPECT_GT(r.max_residual, 1e-3);
}

TEST(RandomWalk, Sl2zFirstSyllable) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto r = random_walk(*spec, sol.mu, 100000, 64, 42);
  // the walk drifts slowly; a quarter of 64 steps is too short to settle
  EXPECT_TRUE(r.warning());
  EXPECT_NEAR(r.factor_frequency(0), 1 / (1 + root2), 3 * r.factor_std_error(0));
  const auto settled = random_walk(*spec, sol.mu, 100000, 256, 42);
  EXPECT_FALSE(settled.warning());
  for (std::size_t k = 0; k < settled.cylinders.size(); ++k)
    EXPECT_NEAR(settled.frequency(k), nu_cylinder(*spec, sol, settled.cylinders[k]), 3 * settled.std_error(k));
}

TEST(RandomWalk, S4FirstSyllable) {
  auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto r = random_walk(*spec, sol.mu, 100000, 64, 42);
  EXPECT_FALSE(r.warning()) << r.unstable;
  for (std::size_t k = 0; k < r.cylinders.size(); ++k)
    EXPECT_NEAR(r.frequency(k), nu_cylinder(*spec, sol, r.cylinders[k]), 3 * r.std_error(k));
}

TEST(RandomWalk, LongHorizonSettles) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto r = random_walk(*spec, sol.mu, 5000, 512, 1);
  EXPECT_FALSE(r.warning()) << r.unstable;
}

TEST(RandomWalk, HomogeneousIsUniform) {
  auto spec = fixtures::z2_cubed();
  const auto sol = solve_kms(*spec, {1, 1, 1});
  const auto r = random_walk(*spec, sol.mu, 30000, 64, 7);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(r.factor_frequency(i), 1.0 / 3, 4 * r.factor_std_error(i));
}

TEST(RandomWalk, DeterministicAndMatchesReference) {
  auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto a = random_walk(*spec, sol.mu, 2000, 40, 11);
  const auto b = random_walk(*spec, sol.mu, 2000, 40, 11);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_EQ(a.unstable, b.unstable);
  const auto ref = reference::random_walk(*spec, sol.mu, 2000, 40, 11);
  EXPECT_EQ(a.counts, ref.counts);
  EXPECT_EQ(a.unstable, ref.unstable);
  EXPECT_NE(random_walk(*spec, sol.mu, 2000, 40, 12).counts, a.counts);
}

TEST(Perron, RootOfAGamma) {
  const auto sl = a_gamma(fixtures::sl2z());
  std::vector<std::vector<double>> m(4, std::vector<double>(4));
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m[r][c] = sl(r, c);
  EXPECT_NEAR(perron_root(m), root2, 1e-9);
  EXPECT_NEAR(spectral_radius(m), root2, 1e-9);
}

TEST(Perron, GaugeMatrixHasRadiusOne) {
  for (const auto& spec : {fixtures::s4s4(), fixtures::sl2z()}) {
    const auto table = character_table(spec->subgroup());
    const auto a = build_a_gamma(*spec, table);
    const auto sol = solve_kms(*spec, {1, 1});
    const auto r = perron_check(*spec, sol, a, table.degrees, true);
    EXPECT_TRUE(r.ok()) << r.radius;
    std::vector<std::vector<double>> b(a.size(), std::vector<double>(a.size()));
    for (int x = 0; x < a.size(); ++x)
      for (int y = 0; y < a.size(); ++y) b[x][y] = sol.decay[a.factor_of(x)] * a(y, x);
    EXPECT_NEAR(spectral_radius(b), 1, 1e-9);
    double norm = 0;
    for (int x = 0; x < a.size(); ++x) norm += table.degrees[a.character_of(x)] * r.y[x];
    EXPECT_NEAR(norm, 1, 1e-12);
  }
}

TEST(Perron, SkipsReducibleUnlessForced) {
  auto spec = fixtures::sl2z();
  const auto table = character_table(spec->subgroup());
  const auto r = perron_check(*spec, solve_kms(*spec, {1, 1}), build_a_gamma(*spec, table), table.degrees);
  EXPECT_TRUE(r.skipped);
  EXPECT_FALSE(r.notice.empty());
}

TEST(Perron, WrongBetaFails) {
  auto spec = fixtures::s4s4();
  const auto table = character_table(spec->subgroup());
  auto sol = solve_kms(*spec, {1, 1});
  for (auto& t : sol.decay) t *= 1.01;
  EXPECT_FALSE(perron_check(*spec, sol, build_a_gamma(*spec, table), table.degrees).ok());
}

TEST(FactorType, Examples) {
  const auto s4 = factor_type(*fixtures::s4s4(), {1, 1});
  ASSERT_TRUE(s4.classified);
  EXPECT_DOUBLE_EQ(s4.lambda, 1.0 / 9);
  const auto z2 = factor_type(*fixtures::z2_cubed(), {1, 1, 1});
  ASSERT_TRUE(z2.classified);
  EXPECT_DOUBLE_EQ(z2.lambda, 0.5);
  EXPECT_FALSE(factor_type(*fixtures::sl2z(), {1, 1}).classified);
  EXPECT_EQ(factor_type(*fixtures::sl2z(), {1, 1}).to_string(), "not classified");
  EXPECT_FALSE(factor_type(*fixtures::s4s4(), {1, 2}).classified);
}

TEST(FactorType, MatchesInverseTemperatureForThreeFactors) {
  auto spec = fixtures::z2_cubed();
  EXPECT_NEAR(std::exp(-solve_beta(*spec, {1, 1, 1})), factor_type(*spec, {1, 1, 1}).lambda, 1e-12);
}

TEST(Martin, Sl2zCrossFactor) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  const auto r = martin_kernel_crosscheck(*spec, sol, 1, 1, 20000, 3);
  EXPECT_NEAR(r.exact, 1 / root2, 1e-12);
  EXPECT_FALSE(r.non_transient());
  EXPECT_TRUE(r.ok()) << r.estimate << " vs " << r.exact << " +- " << r.std_error;
}

TEST(Martin, S4CrossFactor) {
  auto spec = fixtures::s4s4();
  const auto sol = solve_kms(*spec, {1, 1});
  const Element g = spec->factor(0).group().element("(1 4)");
  const auto r = martin_kernel_crosscheck(*spec, sol, 0, g, 20000, 5);
  EXPECT_NEAR(r.exact, 1.0 / 3, 1e-12);
  EXPECT_TRUE(r.ok()) << r.estimate;
}

TEST(Martin, RejectsSubgroupElements) {
  auto spec = fixtures::sl2z();
  const auto sol = solve_kms(*spec, {1, 1});
  EXPECT_THROW(martin_kernel_crosscheck(*spec, sol, 0, 2, 10, 1), SpecError);
  EXPECT_THROW(martin_kernel_crosscheck(*spec, sol, 0, 0, 10, 1), SpecError);
}
