#include "srlnc/analysis.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <thread>

namespace srlnc {

std::string_view to_string(Formula f) noexcept {
    switch (f) {
        case Formula::dependency: return "dependency";
        case Formula::full_rank_product: return "full_rank_product";
        case Formula::rlnc: return "rlnc";
        case Formula::bkw: return "bkw";
        case Formula::partial_fraction: return "partial_fraction";
        case Formula::nested_sum: return "nested_sum";
        case Formula::oracle: return "oracle";
    }
    return "unknown";
}

RationalFn RankDistribution::total() const {
    RationalFn sum;
    for (const auto& p : probs) sum = sum + p.expr;
    return sum;
}

Rational RankDistributionAt::total() const {
    Rational sum = 0;
    for (const auto& p : probs) sum += p;
    return sum;
}

namespace {

mpz_class binomial(std::size_t n, std::size_t k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

mpz_class to_mpz(std::uint64_t v) {
    mpz_class out;
    mpz_import(out.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return out;
}

}  // namespace

RationalPoly census_polynomial(std::uint32_t q, std::size_t total_entries, std::span<const std::uint64_t> census) {
    if (census.size() > total_entries + 1) throw DimensionError("census longer than the entry count allows");
    std::vector<Rational> coeffs(total_entries + 1);
    mpz_class scale = 1;  // (q - 1)^w
    for (std::size_t w = 0; w < census.size(); ++w) {
        if (w > 0) scale *= (q - 1);
        if (census[w] == 0) continue;
        const mpz_class count = to_mpz(census[w]);
        // p0^(N - w) (1 - p0)^w = sum_j C(w, j) (-1)^j p0^(N - w + j)
        for (std::size_t j = 0; j <= w; ++j) {
            mpz_class term = count * binomial(w, j);
            if (j % 2 == 1) term = -term;
            Rational t(term, scale);
            t.canonicalize();
            coeffs[total_entries - w + j] += t;
        }
    }
    for (auto& c : coeffs) c.canonicalize();
    return RationalPoly(std::move(coeffs));
}

RationalPoly weight_measure(std::uint32_t q, std::size_t total_entries, std::size_t weight) {
    if (weight > total_entries) throw DimensionError("weight exceeds the number of entries");
    WeightCensus census(weight + 1, 0);
    census[weight] = 1;
    return census_polynomial(q, total_entries, census);
}

RationalPoly weight_measure(const FqMatrix& m) {
    return weight_measure(m.spec().order(), m.rows() * m.cols(), weight(m));
}

RationalPoly weight_measure(const FieldSpec& spec, std::span<const Symbol> v) {
    return weight_measure(spec.order(), v.size(), weight(v));
}

WeightCensus row_space_census(const FqMatrix& c) {
    const std::size_t n = c.cols();
    WeightCensus census(n + 1, 0);
    if (c.rows() == 0) {
        census[0] = 1;
        return census;
    }
    const auto d = column_basis_decompose(c);
    const std::size_t i = d.rank();
    const Symbol q = c.spec().order();
    std::vector<Symbol> z(i, 0);
    while (true) {
        const auto tail = multiply(z, d.s);
        ++census[weight(z) + weight(tail)];
        std::size_t k = i;
        while (k-- > 0) {
            if (++z[k] < q) break;
            z[k] = 0;
        }
        if (k == static_cast<std::size_t>(-1)) break;
    }
    return census;
}

WeightCensus InnerSumCache::lookup(const FqMatrix& c) {
    auto reduced = rref(c).reduced;
    std::vector<Symbol> key(reduced.entries().begin(), reduced.entries().end());
    key.push_back(static_cast<Symbol>(c.rows()));
    key.push_back(static_cast<Symbol>(c.cols()));
    {
        std::shared_lock lock(mutex_);
        if (auto it = entries_.find(key); it != entries_.end()) {
            ++hits_;
            return it->second;
        }
    }
    WeightCensus census = row_space_census(c);
    std::unique_lock lock(mutex_);
    auto [it, inserted] = entries_.emplace(std::move(key), std::move(census));
    if (inserted) {
        ++misses_;
    } else {
        ++hits_;
    }
    return it->second;
}

std::size_t InnerSumCache::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

std::uint64_t InnerSumCache::hits() const { return hits_.load(); }
std::uint64_t InnerSumCache::misses() const { return misses_.load(); }

RationalPoly p_in_inner(const FqMatrix& c) {
    return census_polynomial(c.spec().order(), c.cols(), row_space_census(c));
}

RationalPoly p_in_inner_cached(const FqMatrix& c, InnerSumCache& cache) {
    return census_polynomial(c.spec().order(), c.cols(), cache.lookup(c));
}

ProbExpr p_in(std::size_t i, std::size_t n, const FieldSpec& spec, const AnalysisOptions& opts) {
    if (i >= n) {
        throw DimensionError("p(i, n) needs 0 <= i <= n - 1, got i = " + std::to_string(i) +
                             ", n = " + std::to_string(n));
    }
    const std::uint32_t q = spec.order();
    if (i == 0) return {RationalFn(RationalPoly::monomial(1, n)), q, Formula::dependency};

    const FullRankEnumerator enumerator(spec, i, n, opts.budget);
    const std::uint64_t per_matrix = checked_pow(q, i);
    if (enumerator.count() > (std::numeric_limits<std::uint64_t>::max() >> 1) / per_matrix) {
        throw BudgetExceededError("weight census would overflow", enumerator.count(), opts.budget);
    }

    struct Partial {
        WeightCensus numerator;
        WeightCensus denominator;
    };
    const std::size_t entries = i * n;
    const unsigned workers = std::max(1u, std::min<unsigned>(opts.threads, 64));
    std::vector<Partial> partials(workers, Partial{WeightCensus(entries + n + 1, 0), WeightCensus(entries + 1, 0)});
    InnerSumCache cache;

    auto work = [&](unsigned w) {
        const std::uint64_t domain = enumerator.partition_domain();
        const std::uint64_t begin = domain / workers * w + std::min<std::uint64_t>(w, domain % workers);
        const std::uint64_t end = begin + domain / workers + (w < domain % workers ? 1 : 0);
        Partial& out = partials[w];
        enumerator.for_each_in(begin, end, [&](const FqMatrix& c) {
            const std::size_t wc = weight(c);
            ++out.denominator[wc];
            const auto inner = cache.lookup(c);
            for (std::size_t k = 0; k < inner.size(); ++k) out.numerator[wc + k] += inner[k];
        });
    };

    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    Partial total{WeightCensus(entries + n + 1, 0), WeightCensus(entries + 1, 0)};
    for (const auto& p : partials) {
        for (std::size_t k = 0; k < p.numerator.size(); ++k) total.numerator[k] += p.numerator[k];
        for (std::size_t k = 0; k < p.denominator.size(); ++k) total.denominator[k] += p.denominator[k];
    }
    return {RationalFn(census_polynomial(q, entries + n, total.numerator),
                       census_polynomial(q, entries, total.denominator)),
            q, Formula::dependency};
}

std::vector<ProbExpr> dependency_probs(std::size_t count, std::size_t dim, const FieldSpec& spec,
                                       const AnalysisOptions& opts) {
    std::vector<ProbExpr> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(p_in(i, dim, spec, opts));
    return out;
}

ProbExpr full_rank_prob(std::size_t m, std::size_t n, const FieldSpec& spec, const AnalysisOptions& opts) {
    if (m < n) throw DimensionError("full-rank probability needs m >= n");
    RationalFn product(RationalPoly::constant(1));
    for (const auto& p : dependency_probs(n, m, spec, opts)) product = product * p.expr.one_minus();
    return {std::move(product), spec.order(), Formula::full_rank_product};
}

Rational full_rank_prob_at(std::size_t m, std::size_t n, const FieldSpec& spec, const Rational& p0,
                           const AnalysisOptions& opts) {
    if (m < n) throw DimensionError("full-rank probability needs m >= n");
    Rational product = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const Rational factor = 1 - p_in(i, m, spec, opts).at(p0);
        if (factor == 0) return 0;
        product *= factor;
    }
    return product;
}

namespace {

template <typename T>
T nested_sum_impl(std::span<const T> a, std::size_t steps, const T& one) {
    // suffix[j]: sum over sequences of the current length using indices >= j.
    std::vector<T> suffix(a.size(), one);
    for (std::size_t s = 0; s < steps; ++s) {
        T acc{};
        for (std::size_t j = a.size(); j-- > 0;) {
            acc = acc + a[j] * suffix[j];
            suffix[j] = acc;
        }
    }
    return a.empty() ? (steps == 0 ? one : T{}) : suffix[0];
}

// a[0..n-1] = p(i, n) and a[n] = 1: an n-vector always lies in F_q^n.
std::vector<RationalFn> dependency_chain(std::size_t n, const FieldSpec& spec, const AnalysisOptions& opts) {
    std::vector<RationalFn> a;
    for (const auto& p : dependency_probs(n, n, spec, opts)) a.push_back(p.expr);
    a.emplace_back(RationalPoly::constant(1));
    return a;
}

std::vector<Rational> dependency_chain_at(std::size_t n, const FieldSpec& spec, const Rational& p0,
                                          const AnalysisOptions& opts) {
    std::vector<Rational> a;
    for (const auto& f : dependency_chain(n, spec, opts)) a.push_back(f(p0));
    return a;
}

void check_rank_dims(std::size_t m, std::size_t n) {
    if (m < n) throw DimensionError("rank distribution needs m >= n");
}

}  // namespace

Rational nested_dependency_sum(std::span<const Rational> a, std::size_t steps) {
    return nested_sum_impl<Rational>(a, steps, Rational(1));
}

RationalFn nested_dependency_sum(std::span<const RationalFn> a, std::size_t steps) {
    return nested_sum_impl<RationalFn>(a, steps, RationalFn(RationalPoly::constant(1)));
}

RankDistribution rank_dist_nested(std::size_t m, std::size_t n, const FieldSpec& spec, const AnalysisOptions& opts) {
    check_rank_dims(m, n);
    const auto a = dependency_chain(n, spec, opts);
    RankDistribution out{spec.order(), m, n, {}};
    RationalFn increasing(RationalPoly::constant(1));
    for (std::size_t r = 0; r <= n; ++r) {
        const auto tail = nested_dependency_sum(std::span<const RationalFn>(a.data(), r + 1), m - r);
        out.probs.push_back({increasing * tail, spec.order(), Formula::nested_sum});
        if (r < n) increasing = increasing * a[r].one_minus();
    }
    return out;
}

RankDistributionAt rank_dist_nested_at(std::size_t m, std::size_t n, const FieldSpec& spec, const Rational& p0,
                                       const AnalysisOptions& opts) {
    check_rank_dims(m, n);
    const auto a = dependency_chain_at(n, spec, p0, opts);
    RankDistributionAt out{spec.order(), m, n, p0, Formula::nested_sum, {}};
    Rational increasing = 1;
    for (std::size_t r = 0; r <= n; ++r) {
        out.probs.push_back(increasing * nested_dependency_sum(std::span<const Rational>(a.data(), r + 1), m - r));
        if (r < n) increasing *= 1 - a[r];
    }
    return out;
}

Rational partial_fraction_sum(std::span<const Rational> xs, unsigned power) {
    Rational sum = 0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        Rational den = 1;
        for (std::size_t t = 0; t < xs.size(); ++t) {
            if (t == k) continue;
            const Rational diff = xs[t] - xs[k];
            if (diff == 0) {
                throw CoincidentValuesError("coincident points x_" + std::to_string(t + 1) + " = x_" +
                                            std::to_string(k + 1) + " = " + to_string(xs[k]));
            }
            den *= diff;
        }
        Rational num;
        mpz_pow_ui(num.get_num_mpz_t(), xs[k].get_num_mpz_t(), power);
        mpz_pow_ui(num.get_den_mpz_t(), xs[k].get_den_mpz_t(), power);
        sum += num / den;
    }
    return sum;
}

Rational partial_fraction_identity_check(std::span<const Rational> xs) {
    if (xs.empty()) throw DimensionError("identity check needs at least one point");
    return partial_fraction_sum(xs, static_cast<unsigned>(xs.size() - 1));
}

RankDistributionAt rank_dist_partial_fraction(std::size_t m, std::size_t n, const FieldSpec& spec,
                                              const Rational& p0, const AnalysisOptions& opts) {
    check_rank_dims(m, n);
    const auto a = dependency_chain_at(n, spec, p0, opts);
    RankDistributionAt out{spec.order(), m, n, p0, Formula::partial_fraction, {}};
    Rational prefix = 1;  // prod_{t <= r} (a_t - 1)
    for (std::size_t r = 0; r <= n; ++r) {
        const std::span<const Rational> xs(a.data(), r + 1);
        Rational sum;
        try {
            sum = partial_fraction_sum(xs, static_cast<unsigned>(m));
        } catch (const CoincidentValuesError& e) {
            throw CoincidentValuesError(std::string("partial-fraction form undefined at p0 = ") + to_string(p0) +
                                        " for rank " + std::to_string(r) + ": " + e.what() +
                                        "; use the nested form");
        }
        out.probs.push_back(prefix * sum);
        if (r < n) prefix *= a[r] - 1;
    }
    return out;
}

BkwBound::BkwBound(std::size_t i, std::size_t n, std::uint32_t q) : i_(i), n_(n), q_(q) {
    if (i >= n) throw DimensionError("BKW bound needs 0 <= i <= n - 1");
}

Rational BkwBound::at(const Rational& p0) const {
    const Rational nonzero = (1 - p0) / Rational(q_ - 1);
    const Rational base = std::max(p0, nonzero);
    Rational out = 1;
    for (std::size_t k = 0; k < exponent(); ++k) out *= base;
    return out;
}

double BkwBound::at(double p0) const { return to_double(at(Rational(p0))); }

BkwBound bkw_bound(std::size_t i, std::size_t n, const FieldSpec& spec) { return {i, n, spec.order()}; }

Rational rlnc_dependency_prob(std::uint32_t q, std::size_t n, std::size_t i) {
    if (i > n) throw DimensionError("rlnc dependency needs i <= n");
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), q, n - i);
    return Rational(mpz_class(1), den);
}

Rational rlnc_full_rank_prob(std::uint32_t q, std::size_t m, std::size_t n) {
    if (m < n) throw DimensionError("full-rank probability needs m >= n");
    Rational out = 1;
    for (std::size_t i = 0; i < n; ++i) out *= 1 - rlnc_dependency_prob(q, m, i);
    return out;
}

std::vector<Rational> rlnc_rank_distribution(std::uint32_t q, std::size_t m, std::size_t n) {
    auto qpow = [q](std::size_t e) {
        mpz_class out;
        mpz_ui_pow_ui(out.get_mpz_t(), q, e);
        return out;
    };
    const std::size_t max_rank = std::min(m, n);
    std::vector<Rational> out;
    const mpz_class total = qpow(m * n);
    for (std::size_t r = 0; r <= max_rank; ++r) {
        Rational count = 1;
        for (std::size_t i = 0; i < r; ++i) {
            Rational factor((qpow(m) - qpow(i)) * (qpow(n) - qpow(i)), qpow(r) - qpow(i));
            factor.canonicalize();
            count *= factor;
        }
        out.push_back(count / total);
    }
    return out;
}

}  // namespace srlnc
