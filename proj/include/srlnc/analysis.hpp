#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <map>
#include <shared_mutex>
#include <span>
#include <string_view>
#include <vector>

#include "srlnc/field.hpp"
#include "srlnc/matrix.hpp"
#include "srlnc/poly.hpp"

namespace srlnc {

enum class Formula { dependency, full_rank_product, rlnc, bkw, partial_fraction, nested_sum, oracle };

std::string_view to_string(Formula f) noexcept;

/// A probability as an exact rational function of the sparsity p0.
struct ProbExpr {
    RationalFn expr;
    std::uint32_t q = 2;
    Formula formula = Formula::dependency;

    Rational at(const Rational& p0) const { return expr(p0); }
    double at(double p0) const { return expr(p0); }
};

/// Probabilities of rank r = 0..n for an m x n sparse random matrix.
struct RankDistribution {
    std::uint32_t q = 2;
    std::size_t m = 0;
    std::size_t n = 0;
    std::vector<ProbExpr> probs;

    RationalFn total() const;
};

/// A rank distribution evaluated at one sparsity value.
struct RankDistributionAt {
    std::uint32_t q = 2;
    std::size_t m = 0;
    std::size_t n = 0;
    Rational p0;
    Formula formula = Formula::nested_sum;
    std::vector<Rational> probs;

    Rational total() const;
};

/// Count of objects per Hamming weight; index is the weight.
using WeightCensus = std::vector<std::uint64_t>;

/// Probability of one specific vector or matrix with `total_entries` entries
/// of which `weight` are nonzero: p0^(total - weight) ((1 - p0)/(q - 1))^weight.
RationalPoly weight_measure(std::uint32_t q, std::size_t total_entries, std::size_t weight);
RationalPoly weight_measure(const FqMatrix& m);
RationalPoly weight_measure(const FieldSpec& spec, std::span<const Symbol> v);
/// sum_w census[w] * weight_measure(q, total_entries, w).
RationalPoly census_polynomial(std::uint32_t q, std::size_t total_entries, std::span<const std::uint64_t> census);

/// Weight census of the row space of a full-row-rank C, computed through its
/// column basis decomposition: each z in F_q^i contributes the vector whose
/// permuted coordinates are (z, zS), of weight wt(z) + wt(zS).
WeightCensus row_space_census(const FqMatrix& c);

/// Memo of row-space censuses keyed by the RREF of C. Safe for concurrent use;
/// racing inserts of the same key store identical values.
class InnerSumCache {
  public:
    WeightCensus lookup(const FqMatrix& c);

    std::size_t size() const;
    std::uint64_t hits() const;
    std::uint64_t misses() const;

  private:
    mutable std::shared_mutex mutex_;
    std::map<std::vector<Symbol>, WeightCensus> entries_;
    std::atomic<std::uint64_t> hits_{0};
    std::atomic<std::uint64_t> misses_{0};
};

/// Inner sum of the dependency probability for a fixed full-rank C:
/// sum over z of wtm(z) wtm(zS), which equals the total weight measure of
/// the row space of C.
RationalPoly p_in_inner(const FqMatrix& c);
RationalPoly p_in_inner_cached(const FqMatrix& c, InnerSumCache& cache);

struct AnalysisOptions {
    std::uint64_t budget = kDefaultEnumerationBudget;
    unsigned threads = 1;
};

/// Exact probability that a sparse random n-vector lies in the span of i
/// sparse random vectors conditioned on those being linearly independent.
/// Requires 0 <= i <= n - 1.
ProbExpr p_in(std::size_t i, std::size_t n, const FieldSpec& spec, const AnalysisOptions& opts = {});

/// p(i, m) for i = 0..n-1; the column-wise factors of the full-rank product.
std::vector<ProbExpr> dependency_probs(std::size_t count, std::size_t dim, const FieldSpec& spec,
                                       const AnalysisOptions& opts = {});

/// Probability that an m x n sparse random matrix has full column rank:
/// prod_{i<n} (1 - p(i, m)). The product is normalized and always reduces to
/// a polynomial.
ProbExpr full_rank_prob(std::size_t m, std::size_t n, const FieldSpec& spec, const AnalysisOptions& opts = {});

/// Point evaluation of the full-rank product, factor by factor in ascending i.
/// Stops at the first factor that is zero so conditionals on probability-zero
/// events are never evaluated.
Rational full_rank_prob_at(std::size_t m, std::size_t n, const FieldSpec& spec, const Rational& p0,
                           const AnalysisOptions& opts = {});

/// Row-perspective rank distribution: rank r is reached by r rank-increasing
/// rows, and the other m - r rows fall into the current span at
/// nondecreasing ranks i_1 <= ... <= i_{m-r} <= r, each with probability
/// p(i_k, n). The nested sum is evaluated by suffix-sum dynamic programming.
RankDistribution rank_dist_nested(std::size_t m, std::size_t n, const FieldSpec& spec,
                                  const AnalysisOptions& opts = {});
RankDistributionAt rank_dist_nested_at(std::size_t m, std::size_t n, const FieldSpec& spec, const Rational& p0,
                                       const AnalysisOptions& opts = {});

/// Same distribution through the partial-fraction form with a_t = p(t-1, n).
/// Throws CoincidentValuesError when two a_t coincide at p0.
RankDistributionAt rank_dist_partial_fraction(std::size_t m, std::size_t n, const FieldSpec& spec,
                                              const Rational& p0, const AnalysisOptions& opts = {});

/// Nested sum over nondecreasing index sequences i_1 <= ... <= i_steps in
/// [0, a.size()), of prod a[i_k]. Exposed for testing.
Rational nested_dependency_sum(std::span<const Rational> a, std::size_t steps);
RationalFn nested_dependency_sum(std::span<const RationalFn> a, std::size_t steps);

/// sum_k x_k^power / prod_{t != k} (x_t - x_k). Throws CoincidentValuesError
/// for repeated points.
Rational partial_fraction_sum(std::span<const Rational> xs, unsigned power);
/// partial_fraction_sum with power = xs.size() - 1; equals (-1)^(size - 1).
Rational partial_fraction_identity_check(std::span<const Rational> xs);

/// Upper bound max(p0, (1 - p0)/(q - 1))^(n - i) on p(i, n). Piecewise in
/// p0 with the breakpoint at 1/q, so it is evaluated rather than expanded.
class BkwBound {
  public:
    BkwBound(std::size_t i, std::size_t n, std::uint32_t q);

    Rational at(const Rational& p0) const;
    double at(double p0) const;
    std::size_t exponent() const noexcept { return n_ - i_; }

  private:
    std::size_t i_;
    std::size_t n_;
    std::uint32_t q_;
};

BkwBound bkw_bound(std::size_t i, std::size_t n, const FieldSpec& spec);

/// Uniform-coefficient (p0 = 1/q) references.
Rational rlnc_dependency_prob(std::uint32_t q, std::size_t n, std::size_t i);
Rational rlnc_full_rank_prob(std::uint32_t q, std::size_t m, std::size_t n);
/// Exact rank distribution of a uniform random m x n matrix, by counting
/// rank-r matrices.
std::vector<Rational> rlnc_rank_distribution(std::uint32_t q, std::size_t m, std::size_t n);

}  // namespace srlnc
