#include "srlnc/oracle.hpp"

#include <algorithm>
#include <sstream>

#include "srlnc/analysis.hpp"

namespace srlnc {

namespace {

std::uint64_t space_size(std::uint32_t q, std::size_t entries, std::uint64_t budget, const char* what) {
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < entries; ++k) {
        if (total > budget / q) {
            throw BudgetExceededError(std::string("oracle ") + what, total > UINT64_MAX / q ? UINT64_MAX : total * q,
                                      budget);
        }
        total *= q;
    }
    return total;
}

// Row echelon elimination on a scratch copy; returns the rank.
std::size_t brute_rank(const FieldSpec& f, std::vector<Symbol> a, std::size_t rows, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && a[p * cols + c] == 0) ++p;
        if (p == rows) continue;
        for (std::size_t k = 0; k < cols; ++k) std::swap(a[p * cols + k], a[r * cols + k]);
        const Symbol pivot_inv = f.inv(a[r * cols + c]);
        for (std::size_t below = r + 1; below < rows; ++below) {
            const Symbol factor = f.mul(a[below * cols + c], pivot_inv);
            if (factor == 0) continue;
            for (std::size_t k = c; k < cols; ++k) {
                a[below * cols + k] = f.sub(a[below * cols + k], f.mul(factor, a[r * cols + k]));
            }
        }
        ++r;
    }
    return r;
}

bool next_digits(std::vector<Symbol>& digits, std::uint32_t q) {
    for (std::size_t k = digits.size(); k-- > 0;) {
        if (++digits[k] < q) return true;
        digits[k] = 0;
    }
    return false;
}

std::size_t nonzeros(const std::vector<Symbol>& v) {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Symbol s) { return s != 0; }));
}

}  // namespace

RankCensus oracle_rank_census(std::size_t m, std::size_t n, const FieldSpec& spec, std::uint64_t budget) {
    space_size(spec.order(), m * n, budget, "rank census");
    const std::size_t max_rank = std::min(m, n);
    RankCensus out{spec.order(), m, n, std::vector<std::vector<std::uint64_t>>(max_rank + 1,
                                                                               std::vector<std::uint64_t>(m * n + 1)),
                   {}};
    std::vector<Symbol> entries(m * n, 0);
    do {
        ++out.by_rank_weight[brute_rank(spec, entries, m, n)][nonzeros(entries)];
    } while (next_digits(entries, spec.order()));
    for (const auto& census : out.by_rank_weight) out.probs.push_back(census_polynomial(spec.order(), m * n, census));
    return out;
}

FullRankCensus oracle_full_rank_poly(std::size_t m, std::size_t n, const FieldSpec& spec, std::uint64_t budget) {
    auto census = oracle_rank_census(m, n, spec, budget);
    FullRankCensus out{spec.order(), m, n, std::move(census.by_rank_weight.back()), std::move(census.probs.back())};
    return out;
}

RationalFn oracle_p_in(std::size_t i, std::size_t n, const FieldSpec& spec, std::uint64_t budget) {
    if (i >= n) throw DimensionError("oracle p(i, n) needs i <= n - 1");
    space_size(spec.order(), i * n + n, budget, "dependency probability");
    const std::uint32_t q = spec.order();
    std::vector<std::uint64_t> joint(i * n + n + 1, 0);
    std::vector<std::uint64_t> conditioning(i * n + 1, 0);
    std::vector<Symbol> a(i * n, 0);
    do {
        if (brute_rank(spec, a, i, n) != i) continue;
        const std::size_t wa = nonzeros(a);
        ++conditioning[wa];
        std::vector<Symbol> h(n, 0);
        std::vector<Symbol> stacked(a);
        stacked.resize(i * n + n);
        do {
            std::copy(h.begin(), h.end(), stacked.begin() + static_cast<std::ptrdiff_t>(i * n));
            if (brute_rank(spec, stacked, i + 1, n) == i) ++joint[wa + nonzeros(h)];
        } while (next_digits(h, q));
    } while (next_digits(a, q));
    return RationalFn(census_polynomial(q, i * n + n, joint), census_polynomial(q, i * n, conditioning));
}

std::size_t oracle_rank(const FieldSpec& spec, std::vector<Symbol> entries, std::size_t rows, std::size_t cols) {
    if (entries.size() != rows * cols) throw DimensionError("oracle_rank: entry count does not match shape");
    return brute_rank(spec, std::move(entries), rows, cols);
}

std::string format_census_table(const FullRankCensus& census) {
    std::ostringstream out;
    out << "weight  count\n";
    for (std::size_t w = 0; w < census.by_weight.size(); ++w) {
        out << std::string(w < 10 ? 5 : 4, ' ') << w << "  " << census.by_weight[w] << '\n';
    }
    return out.str();
}

}  // namespace srlnc
