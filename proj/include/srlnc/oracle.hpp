#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "srlnc/field.hpp"
#include "srlnc/poly.hpp"

namespace srlnc {

// Brute-force ground truth. Every routine enumerates all matrices in scope
// and decides rank with its own elimination, sharing only field primitives
// with the analysis code.

inline constexpr std::uint64_t kDefaultOracleBudget = std::uint64_t{1} << 24;

struct FullRankCensus {
    std::uint32_t q = 2;
    std::size_t m = 0;
    std::size_t n = 0;
    /// Full-rank matrices per weight, index 0..m*n.
    std::vector<std::uint64_t> by_weight;
    RationalPoly poly;
};

struct RankCensus {
    std::uint32_t q = 2;
    std::size_t m = 0;
    std::size_t n = 0;
    /// by_rank_weight[r][w]: matrices of rank r and weight w.
    std::vector<std::vector<std::uint64_t>> by_rank_weight;
    std::vector<RationalPoly> probs;
};

/// Probability that an m x n sparse random matrix has rank min(m, n), as
/// the weighted count of all such matrices.
FullRankCensus oracle_full_rank_poly(std::size_t m, std::size_t n, const FieldSpec& spec,
                                     std::uint64_t budget = kDefaultOracleBudget);

RankCensus oracle_rank_census(std::size_t m, std::size_t n, const FieldSpec& spec,
                              std::uint64_t budget = kDefaultOracleBudget);

/// Pr{h in rowspace(A) | A full rank} by definition: enumerate every i x n A
/// and every h, deciding membership by comparing ranks.
RationalFn oracle_p_in(std::size_t i, std::size_t n, const FieldSpec& spec,
                       std::uint64_t budget = kDefaultOracleBudget);

/// Rank by plain row echelon elimination on a row-major copy.
std::size_t oracle_rank(const FieldSpec& spec, std::vector<Symbol> entries, std::size_t rows, std::size_t cols);

/// Weight/count table in the layout "weight  count".
std::string format_census_table(const FullRankCensus& census);

}  // namespace srlnc
