#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rigidlab/graph.hpp"

namespace rigidlab {

/// Nonnegative rational num/den in lowest terms.
struct Rational {
  long long num = 0;
  long long den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(long long num, long long den);

/// d(X, Y) = |E(X, Y)| / (|X| |Y|). X and Y must be disjoint and nonempty.
Rational pair_density(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y);

enum class PairCriterion { regular, dense, super_regular };
enum class CheckMode { exhaustive, sampled };
enum class PairOutcome { pass, fail, inconclusive };

std::string_view criterion_name(PairCriterion c);
PairCriterion parse_criterion(std::string_view name);
std::string_view outcome_name(PairOutcome o);

/// Largest side size that is still checked exhaustively.
inline constexpr int kExhaustiveSideLimit = 14;

struct RegularityVerdict {
  VertexSet a;
  VertexSet b;
  Rational density;
  PairCriterion criterion = PairCriterion::regular;
  CheckMode mode = CheckMode::exhaustive;
  int samples = 0;
  PairOutcome outcome = PairOutcome::pass;
  double epsilon = 0.0;
  double delta = 0.0;
  // Witness for a subset-condition failure: |X| >= eps|A|, |Y| >= eps|B|.
  VertexSet witness_x;
  VertexSet witness_y;
  std::optional<Rational> witness_density;
  // Super-regular degree failure (checked exactly in both modes).
  std::optional<Vertex> degree_violation;
  std::string_view reason;
};

/// Regular: eps-regular with d(A,B) >= delta. Dense: d(X,Y) >= delta for all
/// large X, Y. Super-regular: eps-regular plus minimum cross-degrees
/// delta|B| and delta|A|. Sides up to kExhaustiveSideLimit are checked
/// exhaustively; larger ones by `samples` random witness candidates of size
/// ceil(eps|A|) x ceil(eps|B|), where finding none is inconclusive.
RegularityVerdict check_pair(const Graph& g, std::span<const Vertex> a, std::span<const Vertex> b, double epsilon,
                             double delta, PairCriterion criterion, int samples = 2000, std::uint64_t seed = 0);

/// Smallest integer size s with s >= eps * side (and s >= 1).
int witness_size(double epsilon, int side);

struct SuperRegularTriple {
  std::vector<VertexSet> original;  // A_1, A_2, A_3
  int m = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  /// removed[i][j] = A_i^j = {x in A_i : deg(x, A_j) < (delta - 2 eps)|A_j|}; removed[i][i] empty.
  std::vector<std::vector<VertexSet>> removed;
  std::vector<VertexSet> trimmed;  // A_i'
  int m_prime = 0;
  bool size_bound_holds = false;  // M' >= (1 - 2 eps) M
  bool degree_condition_holds = false;
  /// (vertex, other side) pairs failing deg(x, A_j') >= (delta - 4 eps)|A_j'|.
  std::vector<std::pair<Vertex, int>> degree_failures;
};

SuperRegularTriple trim_to_super_regular_triple(const Graph& g, std::span<const Vertex> a1,
                                                std::span<const Vertex> a2, std::span<const Vertex> a3,
                                                double epsilon, double delta);

}  // namespace rigidlab
