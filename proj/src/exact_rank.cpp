#include <gmpxx.h>

#include <random>
#include <string>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"
#include "rigidlab/rigidity.hpp"

namespace rigidlab {

std::size_t exact_integer_matrix_rank(std::span<const long long> entries, std::size_t rows, std::size_t cols) {
  if (entries.size() != rows * cols) throw ParameterError("matrix entry count does not match shape");
  std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) a[r][c] = static_cast<long>(entries[r * cols + c]);

  // Bareiss: after step k every entry is an integer minor, so the divisions
  // by the previous pivot are exact.
  mpz_class prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        a[r][k] = (a[rank][c] * a[r][k] - a[r][c] * a[rank][k]);
        mpz_divexact(a[r][k].get_mpz_t(), a[r][k].get_mpz_t(), prev.get_mpz_t());
      }
      a[r][c] = 0;
    }
    prev = a[rank][c];
    ++rank;
  }
  return rank;
}

std::size_t exact_rational_rank(const Graph& g, int d, std::uint64_t seed) {
  if (d < 1) throw ParameterError("dimension must be at least 1");
  if (static_cast<long long>(g.n()) * d > 64)
    throw CapacityError("exact rational rank is limited to n*d <= 64 (got " + std::to_string(g.n() * d) + ")");
  Rng rng = make_rng(seed);
  std::uniform_int_distribution<long long> coord(1, 1000000);
  std::vector<long long> p(static_cast<std::size_t>(g.n()) * d);
  for (auto& x : p) x = coord(rng);

  const auto edges = g.edges();
  const std::size_t cols = static_cast<std::size_t>(g.n()) * d;
  std::vector<long long> m(edges.size() * cols, 0);
  for (std::size_t r = 0; r < edges.size(); ++r) {
    const auto [u, v] = edges[r];
    for (int i = 0; i < d; ++i) {
      long long diff = p[static_cast<std::size_t>(u) * d + i] - p[static_cast<std::size_t>(v) * d + i];
      m[r * cols + static_cast<std::size_t>(u) * d + i] = diff;
      m[r * cols + static_cast<std::size_t>(v) * d + i] = -diff;
    }
  }
  return exact_integer_matrix_rank(m, edges.size(), cols);
}

}  // namespace rigidlab
