#include "rigidlab/regularity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "rigidlab/errors.hpp"
#include "rigidlab/random.hpp"

namespace rigidlab {

namespace {

constexpr long double kTol = 1e-12L;

void check_disjoint_nonempty(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  if (x.empty() || y.empty()) throw ParameterError("vertex sets must be nonempty");
  check_vertices(g, x);
  check_vertices(g, y);
  auto in_x = membership_mask(g.n(), x);
  for (Vertex v : y)
    if (in_x[v]) throw ParameterError("vertex sets overlap at " + std::to_string(v));
}

// Degrees from a subset of A into each vertex of B, with the B-order sorted
// by that degree, so that top/bottom prefixes realise the extreme densities
// over all Y of a given size.
struct SortedDegrees {
  std::vector<int> order;  // indices into B, descending degree
  std::vector<long long> prefix;  // prefix[s] = sum of the s largest degrees
};

SortedDegrees sort_degrees(const std::vector<int>& deg) {
  SortedDegrees s;
  s.order.resize(deg.size());
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) { return deg[a] > deg[b]; });
  s.prefix.assign(deg.size() + 1, 0);
  for (std::size_t i = 0; i < deg.size(); ++i) s.prefix[i + 1] = s.prefix[i] + deg[s.order[i]];
  return s;
}

class PairScanner {
 public:
  PairScanner(const Graph& g, const VertexSet& a, const VertexSet& b, double eps, double delta,
              PairCriterion criterion)
      : g_(g), a_(a), b_(b), eps_(eps), delta_(delta), criterion_(criterion) {
    b_index_.assign(g.n(), -1);
    for (std::size_t j = 0; j < b.size(); ++j) b_index_[b[j]] = static_cast<int>(j);
    edges_ab_ = static_cast<long long>(edges_between(g, a, b));
    density_ab_ = static_cast<long double>(edges_ab_) / (static_cast<long double>(a.size()) * b.size());
    min_x_ = witness_size(eps, static_cast<int>(a.size()));
    min_y_ = witness_size(eps, static_cast<int>(b.size()));
  }

  int min_x() const { return min_x_; }
  int min_y() const { return min_y_; }

  /// Checks every Y of size >= min_y against the given X. Records the first
  /// violation found.
  bool scan(const std::vector<int>& x_indices, RegularityVerdict& out) const {
    if (static_cast<int>(x_indices.size()) < min_x_) return false;
    std::vector<int> deg(b_.size(), 0);
    for (int i : x_indices)
      for (Vertex w : g_.neighbors(a_[i]))
        if (b_index_[w] >= 0) ++deg[b_index_[w]];
    SortedDegrees sd = sort_degrees(deg);
    const long long total = sd.prefix.back();
    const long double xs = static_cast<long double>(x_indices.size());
    for (int s = min_y_; s <= static_cast<int>(b_.size()); ++s) {
      const long double denom = xs * s;
      const long long top = sd.prefix[s];
      const long long bottom = total - sd.prefix[b_.size() - s];
      const long double d_top = top / denom, d_bottom = bottom / denom;
      bool use_top = false, violated = false;
      if (criterion_ == PairCriterion::dense) {
        violated = d_bottom < delta_ - kTol;
      } else if (d_top - density_ab_ > eps_ + kTol) {
        violated = use_top = true;
      } else {
        violated = density_ab_ - d_bottom > eps_ + kTol;
      }
      if (!violated) continue;
      out.witness_x.clear();
      for (int i : x_indices) out.witness_x.push_back(a_[i]);
      out.witness_x = make_vertex_set(out.witness_x);
      out.witness_y.clear();
      for (int t = 0; t < s; ++t) {
        int idx = use_top ? sd.order[t] : sd.order[b_.size() - 1 - t];
        out.witness_y.push_back(b_[idx]);
      }
      out.witness_y = make_vertex_set(out.witness_y);
      out.witness_density = make_rational(use_top ? top : bottom, static_cast<long long>(x_indices.size()) * s);
      return true;
    }
    return false;
  }

 private:
  const Graph& g_;
  const VertexSet& a_;
  const VertexSet& b_;
  double eps_;
  double delta_;
  PairCriterion criterion_;
  std::vector<int> b_index_;
  long long edges_ab_ = 0;
  long double density_ab_ = 0;
  int min_x_ = 1;
  int min_y_ = 1;
};

}  // namespace

Rational make_rational(long long num, long long den) {
  if (den <= 0) throw ParameterError("rational with non-positive denominator");
  long long g = std::gcd(num, den);
  if (g == 0) g = 1;
  return {num / g, den / g};
}

Rational pair_density(const Graph& g, std::span<const Vertex> x, std::span<const Vertex> y) {
  check_disjoint_nonempty(g, x, y);
  VertexSet xs = make_vertex_set({x.begin(), x.end()});
  VertexSet ys = make_vertex_set({y.begin(), y.end()});
  return make_rational(static_cast<long long>(edges_between(g, xs, ys)),
                       static_cast<long long>(xs.size()) * static_cast<long long>(ys.size()));
}

std::string_view criterion_name(PairCriterion c) {
  switch (c) {
    case PairCriterion::regular:
      return "regular";
    case PairCriterion::dense:
      return "dense";
    case PairCriterion::super_regular:
      return "super";
  }
  return "unknown";
}

PairCriterion parse_criterion(std::string_view name) {
  if (name == "regular") return PairCriterion::regular;
  if (name == "dense") return PairCriterion::dense;
  if (name == "super" || name == "super_regular") return PairCriterion::super_regular;
  throw ParameterError("unknown criterion '" + std::string(name) + "'");
}

std::string_view outcome_name(PairOutcome o) {
  switch (o) {
    case PairOutcome::pass:
      return "pass";
    case PairOutcome::fail:
      return "fail";
    case PairOutcome::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

int witness_size(double epsilon, int side) {
  const long double raw = static_cast<long double>(epsilon) * side;
  int s = static_cast<int>(std::ceil(raw - kTol));
  return std::max(s, 1);
}

RegularityVerdict check_pair(const Graph& g, std::span<const Vertex> a_in, std::span<const Vertex> b_in,
                             double epsilon, double delta, PairCriterion criterion, int samples,
                             std::uint64_t seed) {
  check_disjoint_nonempty(g, a_in, b_in);
  RegularityVerdict out;
  out.a = make_vertex_set({a_in.begin(), a_in.end()});
  out.b = make_vertex_set({b_in.begin(), b_in.end()});
  out.criterion = criterion;
  out.epsilon = epsilon;
  out.delta = delta;
  out.density = pair_density(g, out.a, out.b);
  const int na = static_cast<int>(out.a.size()), nb = static_cast<int>(out.b.size());

  // Whole-pair density conditions.
  if (criterion == PairCriterion::regular || criterion == PairCriterion::dense) {
    if (static_cast<long double>(out.density.value()) < delta - kTol) {
      out.outcome = PairOutcome::fail;
      out.witness_x = out.a;
      out.witness_y = out.b;
      out.witness_density = out.density;
      out.reason = "pair density below delta";
      return out;
    }
  }
  if (criterion == PairCriterion::super_regular) {
    auto in_a = membership_mask(g.n(), out.a);
    auto in_b = membership_mask(g.n(), out.b);
    for (Vertex x : out.a)
      if (g.degree_into(x, in_b) < delta * nb - kTol) {
        out.outcome = PairOutcome::fail;
        out.degree_violation = x;
        out.reason = "cross-degree below delta|B|";
        return out;
      }
    for (Vertex y : out.b)
      if (g.degree_into(y, in_a) < delta * na - kTol) {
        out.outcome = PairOutcome::fail;
        out.degree_violation = y;
        out.reason = "cross-degree below delta|A|";
        return out;
      }
  }

  PairScanner scanner(g, out.a, out.b, epsilon, delta, criterion);
  if (scanner.min_x() > na || scanner.min_y() > nb) {
    out.mode = CheckMode::exhaustive;
    out.outcome = PairOutcome::pass;
    out.reason = "no subsets meet the size threshold";
    return out;
  }

  if (na <= kExhaustiveSideLimit && nb <= kExhaustiveSideLimit) {
    out.mode = CheckMode::exhaustive;
    std::vector<int> x;
    for (std::uint32_t mask = 1; mask < (1u << na); ++mask) {
      if (std::popcount(mask) < scanner.min_x()) continue;
      x.clear();
      for (int i = 0; i < na; ++i)
        if (mask & (1u << i)) x.push_back(i);
      if (scanner.scan(x, out)) {
        out.outcome = PairOutcome::fail;
        out.reason = "subset pair violates the criterion";
        return out;
      }
    }
    out.outcome = PairOutcome::pass;
    return out;
  }

  out.mode = CheckMode::sampled;
  out.samples = samples;
  Rng rng = make_rng(seed);
  std::vector<int> pool(na);
  std::iota(pool.begin(), pool.end(), 0);
  const int sx = scanner.min_x();
  for (int t = 0; t < samples; ++t) {
    for (int i = 0; i < sx; ++i) {
      std::uniform_int_distribution<int> pick(i, na - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    std::vector<int> x(pool.begin(), pool.begin() + sx);
    if (scanner.scan(x, out)) {
      // The scan may pick a larger Y than the minimum; the witness is valid either way.
      out.outcome = PairOutcome::fail;
      out.reason = "sampled subset pair violates the criterion";
      return out;
    }
  }
  out.outcome = PairOutcome::inconclusive;
  out.reason = "no violation among sampled candidates";
  return out;
}

SuperRegularTriple trim_to_super_regular_triple(const Graph& g, std::span<const Vertex> a1,
                                                std::span<const Vertex> a2, std::span<const Vertex> a3,
                                                double epsilon, double delta) {
  if (!(epsilon > 0.0 && epsilon < 0.25)) throw ParameterError("need 0 < eps < 1/4");
  if (!(delta > 4.0 * epsilon)) throw ParameterError("need delta > 4 eps");
  SuperRegularTriple out;
  out.epsilon = epsilon;
  out.delta = delta;
  out.original = {make_vertex_set({a1.begin(), a1.end()}), make_vertex_set({a2.begin(), a2.end()}),
                  make_vertex_set({a3.begin(), a3.end()})};
  out.m = static_cast<int>(out.original[0].size());
  for (const auto& side : out.original) {
    if (static_cast<int>(side.size()) != out.m) throw ParameterError("sides must have equal size");
    if (side.empty()) throw ParameterError("sides must be nonempty");
  }
  check_disjoint_nonempty(g, out.original[0], out.original[1]);
  check_disjoint_nonempty(g, out.original[0], out.original[2]);
  check_disjoint_nonempty(g, out.original[1], out.original[2]);

  std::vector<std::vector<char>> masks;
  for (const auto& side : out.original) masks.push_back(membership_mask(g.n(), side));

  out.removed.assign(3, std::vector<VertexSet>(3));
  std::vector<VertexSet> kept(3);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const long double threshold = (static_cast<long double>(delta) - 2.0L * epsilon) * out.m;
      for (Vertex x : out.original[i])
        if (g.degree_into(x, masks[j]) < threshold - kTol) out.removed[i][j].push_back(x);
    }
    for (Vertex x : out.original[i]) {
      bool drop = false;
      for (int j = 0; j < 3; ++j)
        if (j != i && std::binary_search(out.removed[i][j].begin(), out.removed[i][j].end(), x)) drop = true;
      if (!drop) kept[i].push_back(x);
    }
  }
  out.m_prime = static_cast<int>(std::min({kept[0].size(), kept[1].size(), kept[2].size()}));
  out.trimmed.resize(3);
  for (int i = 0; i < 3; ++i) {
    // Equalise by dropping the lowest ids.
    const std::size_t surplus = kept[i].size() - out.m_prime;
    out.trimmed[i].assign(kept[i].begin() + surplus, kept[i].end());
  }
  out.size_bound_holds = out.m_prime >= (1.0L - 2.0L * epsilon) * out.m - kTol;

  std::vector<std::vector<char>> trimmed_masks;
  for (const auto& side : out.trimmed) trimmed_masks.push_back(membership_mask(g.n(), side));
  for (int i = 0; i < 3; ++i)
    for (Vertex x : out.trimmed[i])
      for (int j = 0; j < 3; ++j) {
        if (j == i) continue;
        const long double need = (static_cast<long double>(delta) - 4.0L * epsilon) * out.m_prime;
        if (g.degree_into(x, trimmed_masks[j]) < need - kTol) out.degree_failures.emplace_back(x, j);
      }
  out.degree_condition_holds = out.degree_failures.empty();
  return out;
}

}  // namespace rigidlab
