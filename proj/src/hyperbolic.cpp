#include <algorithm>
#include <climits>

#include "amalgam/error.hpp"
#include "amalgam/product.hpp"
#include "amalgam/reference.hpp"

namespace amalgam {

namespace {

// the pairwise table is quadratic in the ball size
constexpr std::size_t max_triple_ball = 6000;

void check_triple_budget(std::size_t n) {
  if (n > max_triple_ball)
    throw BudgetExceeded("hyperbolicity check over " + std::to_string(n) +
                         " words exceeds the triple budget of " + std::to_string(max_triple_ball));
}

int delta_twice(const std::vector<int>& gp, std::size_t n) {
  int best = INT_MIN;
#pragma omp parallel for reduction(max : best) schedule(dynamic, 4)
  for (std::size_t z = 0; z < n; ++z) {
    for (std::size_t x = 0; x < n; ++x) {
      const int xz = gp[x * n + z];
      const int* row = &gp[x * n];
      for (std::size_t y = 0; y < n; ++y) {
        const int v = std::min(xz, gp[y * n + z]) - row[y];
        best = std::max(best, v);
      }
    }
  }
  return best;
}

}  // namespace

mpq_class hyperbolicity_delta(const AmalgamSpec& spec, int radius) {
  const std::vector<Word> words = spec.ball(radius);
  const std::size_t n = words.size();
  check_triple_budget(n);
  std::vector<int> gp(n * n);
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gp[i * n + j] = gromov_product_twice(spec, words[i], words[j]);
  mpq_class d(delta_twice(gp, n), 2);
  d.canonicalize();
  return d;
}

namespace reference {

std::vector<int> gromov_matrix_twice(const AmalgamSpec& spec, const std::vector<Word>& words) {
  const std::size_t n = words.size();
  std::vector<int> gp(n * n);
  std::vector<Word> inverses;
  inverses.reserve(n);
  for (const auto& w : words) inverses.push_back(spec.inverse(w));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const int d = spec.length(spec.multiply(inverses[i], words[j]));
      gp[i * n + j] = spec.length(words[i]) + spec.length(words[j]) - d;
    }
  return gp;
}

mpq_class hyperbolicity_delta(const AmalgamSpec& spec, int radius) {
  const std::vector<Word> words = spec.ball(radius);
  const std::size_t n = words.size();
  check_triple_budget(n);
  const std::vector<int> gp = gromov_matrix_twice(spec, words);
  int best = INT_MIN;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        best = std::max(best, std::min(gp[x * n + z], gp[y * n + z]) - gp[x * n + y]);
  mpq_class d(best, 2);
  d.canonicalize();
  return d;
}

}  // namespace reference

}  // namespace amalgam
