#include "amalgam/kms.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <random>

#include "amalgam/error.hpp"
#include "amalgam/reference.hpp"

namespace amalgam {

namespace {

int index_of(const AmalgamSpec& spec, int i) { return spec.factor(i).omega.size(); }

long elements_outside(const AmalgamSpec& spec, int i) {
  return static_cast<long>(spec.factor(i).group().order() - spec.subgroup().order());
}

double beta_function(const AmalgamSpec& spec, const GaugeWeights& omega, double beta) {
  double s = 0;
  for (int i = 0; i < spec.size(); ++i) s += 1.0 / (1.0 + (index_of(spec, i) - 1) * std::exp(-beta * omega[i]));
  return s;
}

double beta_derivative(const AmalgamSpec& spec, const GaugeWeights& omega, double beta) {
  double s = 0;
  for (int i = 0; i < spec.size(); ++i) {
    const double l = (index_of(spec, i) - 1) * std::exp(-beta * omega[i]);
    s += omega[i] * l / ((1 + l) * (1 + l));
  }
  return s;
}

// Rethrows the first exception raised inside a parallel region.
class Captured {
 public:
  template <class F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
#pragma omp critical(amalgam_captured)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

std::vector<Cylinder> cylinders_to_depth(const AmalgamSpec& spec, int max_depth) {
  std::vector<Cylinder> out;
  for (int d = 0; d <= max_depth; ++d)
    for (auto& c : refine(spec, Cylinder{}, d)) out.push_back(std::move(c));
  return out;
}

std::vector<Word> support_inverses(const AmalgamSpec& spec, const std::vector<std::pair<int, Element>>& support) {
  std::vector<Word> out;
  for (const auto& [i, g] : support) out.push_back(spec.inverse(spec.from_factor(i, g)));
  return out;
}

double stationarity_residual(const AmalgamSpec& spec, const KmsSolution& sol, const Cylinder& c,
                             const std::vector<std::pair<int, Element>>& support, const std::vector<Word>& inverses) {
  double s = 0;
  for (std::size_t k = 0; k < support.size(); ++k)
    s += sol.mu[support[k].first] * nu_cylinders(spec, sol, act(spec, inverses[k], c));
  return std::abs(s - nu_cylinder(spec, sol, c));
}

StationarityReport summarise(std::vector<Cylinder> cylinders, const std::vector<double>& residual, int max_depth,
                             double tolerance) {
  StationarityReport r;
  r.max_depth = max_depth;
  r.cylinders = cylinders.size();
  r.tolerance = tolerance;
  for (std::size_t k = 0; k < cylinders.size(); ++k)
    if (residual[k] > r.max_residual) {
      r.max_residual = residual[k];
      r.worst = cylinders[k];
    }
  return r;
}

// Samples one step of the walk.
class StepSampler {
 public:
  StepSampler(const AmalgamSpec& spec, const std::vector<double>& mu) {
    if (static_cast<int>(mu.size()) != spec.size()) throw SpecError("step weights do not match the factors");
    double total = 0;
    for (int i = 0; i < spec.size(); ++i) {
      if (!(mu[i] > 0)) throw SpecError("step weights must be positive");
      std::vector<Element> outside;
      const Factor& f = spec.factor(i);
      for (Element g = 0; g < f.group().order(); ++g)
        if (!f.embedding->contains(g)) outside.push_back(g);
      total += mu[i] * static_cast<double>(outside.size());
      cumulative_.push_back(total);
      elements_.push_back(std::move(outside));
    }
    if (std::abs(total - 1) > 1e-9) throw SpecError("step weights do not sum to one");
  }

  Letter operator()(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0, cumulative_.back())(rng);
    int i = 0;
    while (i + 1 < static_cast<int>(cumulative_.size()) && u >= cumulative_[i]) ++i;
    const auto& els = elements_[i];
    const auto k = std::uniform_int_distribution<std::size_t>(0, els.size() - 1)(rng);
    return Letter{i, els[k], 0};
  }

 private:
  std::vector<double> cumulative_;
  std::vector<std::vector<Element>> elements_;
};

WalkReport walk_frame(const AmalgamSpec& spec, long trials, int horizon, std::uint64_t seed) {
  spec.require_finite("the random walk");
  if (trials <= 0 || horizon <= 0) throw SpecError("random walk needs positive trials and horizon");
  WalkReport r;
  r.trials = trials;
  r.horizon = horizon;
  r.seed = seed;
  r.cylinders = refine(spec, Cylinder{}, 1);
  r.counts.assign(r.cylinders.size(), 0);
  return r;
}

// Position of the depth-1 cylinder for a first syllable.
std::size_t cylinder_slot(const WalkReport& r, const Syllable& s) {
  const auto it = std::lower_bound(r.cylinders.begin(), r.cylinders.end(), Cylinder{{s}});
  return static_cast<std::size_t>(it - r.cylinders.begin());
}

}  // namespace

void require_weights(const AmalgamSpec& spec, const GaugeWeights& omega) {
  spec.require_finite("KMS states");
  if (static_cast<int>(omega.size()) != spec.size())
    throw SpecError("expected " + std::to_string(spec.size()) + " gauge weights, got " +
                    std::to_string(omega.size()));
  for (double w : omega)
    if (!(w > 0) || !std::isfinite(w)) throw SpecError("gauge weights must be positive");
}

double solve_beta(const AmalgamSpec& spec, const GaugeWeights& omega, double* residual) {
  require_weights(spec, omega);
  const double target = spec.size() - 1;
  mpq_class at_zero = 0;
  for (int i = 0; i < spec.size(); ++i) at_zero += mpq_class(1, index_of(spec, i));
  if (at_zero > spec.size() - 1) throw SpecError("excluded amalgam: the inverse temperature equation has no root");
  if (at_zero == spec.size() - 1) {
    if (residual) *residual = 0;
    return 0;
  }

  double hi = 1;
  while (beta_function(spec, omega, hi) <= target) {
    hi *= 2;
    if (hi > 1e6) throw DefectError("no bracket for the inverse temperature");
  }
  for (int k = 0; k <= 32; ++k) {
    const double a = hi * k / 32, b = hi * (k + 1) / 32;
    if (beta_function(spec, omega, a) > beta_function(spec, omega, b))
      throw DefectError("inverse temperature equation is not increasing");
  }
  double lo = 0;
  for (int it = 0; it < 200 && hi - lo > 0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (beta_function(spec, omega, mid) < target ? lo : hi) = mid;
  }
  double beta = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double f = beta_function(spec, omega, beta) - target;
    const double next = beta - f / beta_derivative(spec, omega, beta);
    if (std::abs(beta_function(spec, omega, next) - target) < std::abs(f)) beta = next;
  }
  const double res = std::abs(beta_function(spec, omega, beta) - target);
  if (res > 1e-12) throw DefectError("inverse temperature residual " + std::to_string(res));
  if (residual) *residual = res;
  return beta;
}

std::vector<double> mu_weights(const AmalgamSpec& spec, const GaugeWeights& omega, double beta) {
  require_weights(spec, omega);
  const double h = spec.subgroup().order();
  const int n = spec.size();
  std::vector<double> c(n);
  for (int i = 0; i < n; ++i) {
    const double g = elements_outside(spec, i);
    c[i] = (1 - std::exp(-beta * omega[i])) * g - (1 - std::exp(beta * omega[i])) * h;
    if (!(c[i] > 0)) throw DefectError("nonpositive coefficient in the step measure");
  }
  auto product_except = [&](int skip) {
    double p = 1;
    for (int l = 0; l < n; ++l)
      if (l != skip) p *= c[l];
    return p;
  };
  double denom = 0;
  for (int k = 0; k < n; ++k) denom += elements_outside(spec, k) * product_except(k);
  std::vector<double> mu(n);
  for (int i = 0; i < n; ++i) mu[i] = product_except(i) / denom;
  return mu;
}

double mu_system_residual(const AmalgamSpec& spec, const GaugeWeights& omega, double beta,
                          const std::vector<double>& mu) {
  const double h = spec.subgroup().order();
  double worst = 0;
  for (int i = 0; i < spec.size(); ++i) {
    double s = h * std::exp(beta * omega[i]) * mu[i] + (elements_outside(spec, i) - h) * mu[i];
    for (int j = 0; j < spec.size(); ++j)
      if (j != i) s += elements_outside(spec, j) * std::exp(-beta * omega[j]) * mu[j];
    worst = std::max(worst, std::abs(1 - s));
  }
  return worst;
}

KmsSolution solve_kms(const AmalgamSpec& spec, const GaugeWeights& omega) {
  KmsSolution s;
  s.omega = omega;
  s.beta = solve_beta(spec, omega, &s.beta_residual);
  s.boundary_case = s.beta == 0;
  const double h = spec.subgroup().order();
  for (int i = 0; i < spec.size(); ++i) {
    const double t = std::exp(-s.beta * omega[i]);
    s.decay.push_back(t);
    s.lambda.push_back(t * (index_of(spec, i) - 1));
    s.C.push_back((1 - t) * elements_outside(spec, i) - (1 - 1 / t) * h);
  }
  if (!s.boundary_case) {
    s.mu = mu_weights(spec, omega, s.beta);
    s.mu_residual = mu_system_residual(spec, omega, s.beta, s.mu);
    if (s.mu_residual > 1e-12) throw DefectError("step measure fails its linear system");
  }
  return s;
}

double nu_cylinder(const AmalgamSpec& spec, const KmsSolution& sol, const Cylinder& c) {
  require_admissible(spec, c);
  if (c.prefix.empty()) return 1;
  double v = 1;
  for (std::size_t k = 0; k + 1 < c.prefix.size(); ++k) v *= sol.decay[c.prefix[k].factor];
  const int last = c.prefix.back().factor;
  return v / (index_of(spec, last) - 1 + 1 / sol.decay[last]);
}

double nu_cylinders(const AmalgamSpec& spec, const KmsSolution& sol, const std::vector<Cylinder>& parts) {
  double s = 0;
  for (const auto& c : parts) s += nu_cylinder(spec, sol, c);
  return s;
}

std::vector<std::pair<int, Element>> mu_support(const AmalgamSpec& spec) {
  spec.require_finite("the step measure");
  std::vector<std::pair<int, Element>> out;
  for (int i = 0; i < spec.size(); ++i) {
    const Factor& f = spec.factor(i);
    for (Element g = 0; g < f.group().order(); ++g)
      if (!f.embedding->contains(g)) out.emplace_back(i, g);
  }
  return out;
}

StationarityReport verify_stationarity(const AmalgamSpec& spec, const KmsSolution& sol, int max_depth,
                                       double tolerance) {
  if (sol.mu.empty()) throw SpecError("no step measure at the boundary inverse temperature");
  const auto cylinders = cylinders_to_depth(spec, max_depth);
  const auto support = mu_support(spec);
  const auto inverses = support_inverses(spec, support);
  std::vector<double> residual(cylinders.size(), 0);
  Captured errors;
#pragma omp parallel for schedule(dynamic, 4)
  for (std::size_t k = 0; k < cylinders.size(); ++k)
    errors.run([&] { residual[k] = stationarity_residual(spec, sol, cylinders[k], support, inverses); });
  errors.rethrow();
  return summarise(cylinders, residual, max_depth, tolerance);
}

double WalkReport::frequency(std::size_t k) const { return static_cast<double>(counts[k]) / trials; }

double WalkReport::std_error(std::size_t k) const {
  const double p = frequency(k);
  return std::sqrt(p * (1 - p) / trials);
}

double WalkReport::factor_frequency(int factor) const {
  long n = 0;
  for (std::size_t k = 0; k < cylinders.size(); ++k)
    if (cylinders[k].prefix[0].factor == factor) n += counts[k];
  return static_cast<double>(n) / trials;
}

double WalkReport::factor_std_error(int factor) const {
  const double p = factor_frequency(factor);
  return std::sqrt(p * (1 - p) / trials);
}

WalkReport random_walk(const AmalgamSpec& spec, const std::vector<double>& mu, long trials, int horizon,
                       std::uint64_t seed) {
  WalkReport r = walk_frame(spec, trials, horizon, seed);
  const StepSampler sample(spec, mu);
  const int settle = horizon - horizon / 4;
  long unstable = 0;
#pragma omp parallel reduction(+ : unstable)
  {
    std::vector<long> local(r.counts.size(), 0);
#pragma omp for schedule(static)
    for (long t = 0; t < trials; ++t) {
      std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
      Word w = spec.identity();
      Syllable first{-1, 0};
      int changed = 0;
      for (int step = 1; step <= horizon; ++step) {
        spec.right_multiply(w, sample(rng));
        const Syllable now = w.syllables.empty() ? Syllable{-1, 0} : w.syllables.front();
        if (now != first) {
          first = now;
          changed = step;
        }
      }
      if (first.factor < 0 || changed > settle) ++unstable;
      if (first.factor >= 0) ++local[cylinder_slot(r, first)];
    }
#pragma omp critical(amalgam_walk)
    for (std::size_t k = 0; k < local.size(); ++k) r.counts[k] += local[k];
  }
  r.unstable = unstable;
  return r;
}

double perron_root(const std::vector<std::vector<double>>& m, std::vector<double>* vector) {
  const std::size_t n = m.size();
  std::vector<double> v(n, 1.0), next(n);
  double lambda = 0;
  for (int it = 0; it < 200000; ++it) {
    for (std::size_t r = 0; r < n; ++r) {
      double s = v[r];
      for (std::size_t c = 0; c < n; ++c) s += m[r][c] * v[c];
      next[r] = s;
    }
    const double norm = *std::max_element(next.begin(), next.end());
    if (!(norm > 0)) break;
    double change = 0;
    for (std::size_t r = 0; r < n; ++r) {
      next[r] /= norm;
      change = std::max(change, std::abs(next[r] - v[r]));
    }
    v.swap(next);
    const double previous = lambda;
    lambda = norm - 1;
    if (change < 1e-15 && std::abs(lambda - previous) < 1e-15) break;
  }
  if (vector) *vector = v;
  return lambda;
}

PerronReport perron_check(const AmalgamSpec& spec, const KmsSolution& sol, const AGammaMatrix& a,
                          const std::vector<int>& degrees, bool force) {
  PerronReport r;
  if (!force && !irreducible(a)) {
    r.skipped = true;
    r.notice = "A_Gamma is reducible; the Perron check needs an irreducible matrix";
    return r;
  }
  if (static_cast<int>(degrees.size()) != a.characters) throw SpecError("degree list does not match A_Gamma");
  if (a.factors != spec.size()) throw SpecError("A_Gamma does not match the amalgam");
  const int n = a.size();
  std::vector<std::vector<double>> b(n, std::vector<double>(n));
  for (int r0 = 0; r0 < n; ++r0)
    for (int c = 0; c < n; ++c) b[r0][c] = sol.decay[a.factor_of(r0)] * static_cast<double>(a(c, r0));
  r.radius = perron_root(b, &r.y);
  double norm = 0;
  for (int x = 0; x < n; ++x) norm += degrees[a.character_of(x)] * r.y[x];
  for (auto& v : r.y) v /= norm;
  r.positive = std::all_of(r.y.begin(), r.y.end(), [](double v) { return v > 1e-12; });
  return r;
}

std::string FactorType::to_string() const {
  if (!classified) return "not classified";
  char buf[64];
  std::snprintf(buf, sizeof buf, "III_%.12g", lambda);
  return buf;
}

FactorType factor_type(const AmalgamSpec& spec, const GaugeWeights& omega) {
  require_weights(spec, omega);
  FactorType t;
  for (double w : omega)
    if (w != 1.0) return t;
  const Factor& first = spec.factor(0);
  for (const auto& f : spec.factors())
    if (!f.group().same_table(first.group()) || f.embedding->images() != first.embedding->images()) return t;
  const double index = first.omega.size();
  const double n = spec.size();
  t.classified = true;
  t.lambda = n == 2 ? 1 / ((index - 1) * (index - 1)) : 1 / ((n - 1) * (index - 1));
  return t;
}

bool MartinReport::ok() const {
  return !non_transient() && std::abs(estimate - exact) <= 3 * std_error + bias_bound;
}

MartinReport martin_kernel_crosscheck(const AmalgamSpec& spec, const KmsSolution& sol, int factor,
                                      Element generator, long trials, std::uint64_t seed, int horizon,
                                      int escape_radius) {
  spec.require_finite("the Martin kernel check");
  if (factor < 0 || factor >= spec.size()) throw SpecError("no factor " + std::to_string(factor + 1));
  const Factor& f = spec.factor(factor);
  if (generator < 0 || generator >= f.group().order()) throw SpecError("generator outside its factor");
  if (f.embedding->contains(generator)) throw SpecError("the Martin kernel check needs a generator outside H");
  if (trials <= 0 || horizon <= 0 || escape_radius <= 0) throw SpecError("Martin check needs positive sizes");
  if (sol.mu.empty()) throw SpecError("no step measure at the boundary inverse temperature");

  MartinReport r;
  r.factor = factor;
  r.generator = generator;
  r.trials = trials;
  const int other = factor == 0 ? 1 : 0;
  r.cylinder = Cylinder{{Syllable{other, 1}}};
  const Word start = spec.inverse(spec.from_factor(factor, generator));
  r.exact = nu_cylinders(spec, sol, act(spec, start, r.cylinder)) / nu_cylinder(spec, sol, r.cylinder);

  const StepSampler sample(spec, sol.mu);
  long hits = 0, escapes = 0, undecided = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits, escapes, undecided)
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    Word w = start;
    int outcome = 0;
    for (int step = 0; step < horizon && outcome == 0; ++step) {
      spec.right_multiply(w, sample(rng));
      if (w.syllables.empty())
        outcome = 1;
      else if (static_cast<int>(w.syllables.size()) > escape_radius)
        outcome = 2;
    }
    hits += outcome == 1;
    escapes += outcome == 2;
    undecided += outcome == 0;
  }
  r.hits = hits;
  r.escapes = escapes;
  r.undecided = undecided;
  r.estimate = static_cast<double>(hits) / trials;
  r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / trials);
  // A word with k syllables returns to H with probability at most max_decay^k.
  const double worst = *std::max_element(sol.decay.begin(), sol.decay.end());
  r.bias_bound = (undecided + escapes * std::pow(worst, escape_radius + 1)) / static_cast<double>(trials);
  return r;
}

namespace reference {

StationarityReport verify_stationarity(const AmalgamSpec& spec, const KmsSolution& sol, int max_depth,
                                       double tolerance) {
  const auto cylinders = cylinders_to_depth(spec, max_depth);
  std::vector<double> residual;
  for (const auto& c : cylinders) {
    double s = 0;
    for (const auto& [i, g] : mu_support(spec)) {
      const Word inv = spec.inverse(spec.from_factor(i, g));
      s += sol.mu[i] * nu_cylinders(spec, sol, act(spec, inv, c));
    }
    residual.push_back(std::abs(s - nu_cylinder(spec, sol, c)));
  }
  return summarise(cylinders, residual, max_depth, tolerance);
}

WalkReport random_walk(const AmalgamSpec& spec, const std::vector<double>& mu, long trials, int horizon,
                       std::uint64_t seed) {
  WalkReport r = walk_frame(spec, trials, horizon, seed);
  const StepSampler sample(spec, mu);
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<std::uint64_t>(t));
    std::vector<Letter> path;
    std::vector<Syllable> firsts;
    for (int step = 1; step <= horizon; ++step) {
      path.push_back(sample(rng));
      const Word w = spec.reduce(path);
      firsts.push_back(w.syllables.empty() ? Syllable{-1, 0} : w.syllables.front());
    }
    const Syllable last = firsts.back();
    const bool stable = std::all_of(firsts.begin() + (horizon - horizon / 4 - 1), firsts.end(),
                                    [&](const Syllable& s) { return s == last; });
    if (last.factor < 0 || !stable) ++r.unstable;
    if (last.factor >= 0) ++r.counts[cylinder_slot(r, last)];
  }
  return r;
}

}  // namespace reference

}  // namespace amalgam
