#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srlnc/field.hpp"

namespace srlnc {

/// Dense row-major matrix over F_q.
class FqMatrix {
  public:
    FqMatrix(FieldSpec spec, std::size_t rows, std::size_t cols);
    FqMatrix(FieldSpec spec, std::size_t rows, std::size_t cols, std::vector<Symbol> entries);

    static FqMatrix identity(const FieldSpec& spec, std::size_t n);
    /// Parses "1 0 1; 0 1 1": rows separated by ';', entries by whitespace.
    static FqMatrix parse(const FieldSpec& spec, std::string_view text);
    static FqMatrix row_vector(const FieldSpec& spec, std::span<const Symbol> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FieldSpec& spec() const noexcept { return spec_; }

    Symbol operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
    Symbol& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }

    std::span<const Symbol> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<Symbol> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Symbol> entries() const noexcept { return data_; }
    std::span<Symbol> entries() noexcept { return data_; }

    std::string to_string() const;

    friend bool operator==(const FqMatrix& a, const FqMatrix& b) noexcept {
        return a.spec_ == b.spec_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

  private:
    FieldSpec spec_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Symbol> data_;
};

FqMatrix transpose(const FqMatrix& m);
FqMatrix multiply(const FqMatrix& a, const FqMatrix& b);
/// Row vector times matrix.
std::vector<Symbol> multiply(std::span<const Symbol> v, const FqMatrix& m);
/// Column j of the result is column perm[j] of m.
FqMatrix permute_columns(const FqMatrix& m, std::span<const std::size_t> perm);
FqMatrix select_columns(const FqMatrix& m, std::span<const std::size_t> cols);
FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom);

std::size_t rank(const FqMatrix& m);

struct Rref {
    FqMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form; pivots are normalized to 1 and strictly increasing.
Rref rref(const FqMatrix& m);

/// Throws SingularMatrixError unless m is square and full rank.
FqMatrix invert(const FqMatrix& m);

/// Split of a full-row-rank i x n matrix A into an invertible block A1 built
/// from the leftmost maximal independent column set and the remainder A2,
/// with S = A1^-1 A2. The column permutation Q is kept as an index array:
/// column j of (A1 | A2) is column perm[j] of A.
struct ColumnBasisDecomposition {
    std::vector<std::size_t> perm;
    std::vector<std::size_t> pivot_cols;
    FqMatrix a1;
    FqMatrix a2;
    FqMatrix s;

    std::size_t rank() const noexcept { return pivot_cols.size(); }
    std::size_t cols() const noexcept { return perm.size(); }
};

/// Throws RankError if A is not full row rank or has no rows.
ColumnBasisDecomposition column_basis_decompose(const FqMatrix& a);

/// True iff h lies in the row space of the decomposed matrix: the last n - i
/// coordinates of hQ equal the first i coordinates times S.
bool membership_criterion(const ColumnBasisDecomposition& d, std::span<const Symbol> h);

std::size_t weight(std::span<const Symbol> v) noexcept;
inline std::size_t weight(const FqMatrix& m) noexcept { return weight(m.entries()); }

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

/// Saturating q^e.
std::uint64_t checked_pow(std::uint64_t q, std::uint64_t e) noexcept;
/// Number of full-row-rank rows x cols matrices over F_q, prod_j (q^cols - q^j),
/// saturating at UINT64_MAX.
std::uint64_t full_rank_count(std::uint32_t q, std::size_t rows, std::size_t cols) noexcept;

/// Enumerates every full-row-rank rows x cols matrix over F_q exactly once, in
/// lexicographic order of the row-major entries. Dependent rows are pruned
/// while descending, so the cost tracks the number of matrices produced.
///
/// The first row's lexicographic index in [0, q^cols) is the partition key:
/// disjoint index ranges can be consumed by independent workers.
class FullRankEnumerator {
  public:
    using Visitor = std::function<void(const FqMatrix&)>;

    /// Throws BudgetExceededError when the number of matrices exceeds budget.
    FullRankEnumerator(FieldSpec spec, std::size_t rows, std::size_t cols,
                       std::uint64_t budget = kDefaultEnumerationBudget);

    std::uint64_t count() const noexcept { return count_; }
    std::uint64_t partition_domain() const noexcept { return domain_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FieldSpec& spec() const noexcept { return spec_; }

    /// The visitor receives a matrix that is overwritten on the next call.
    void for_each(const Visitor& visit) const { for_each_in(0, domain_, visit); }
    void for_each_in(std::uint64_t first_row_begin, std::uint64_t first_row_end, const Visitor& visit) const;

  private:
    FieldSpec spec_;
    std::size_t rows_;
    std::size_t cols_;
    std::uint64_t count_;
    std::uint64_t domain_;
};

std::vector<FqMatrix> enumerate_full_rank(const FieldSpec& spec, std::size_t rows, std::size_t cols,
                                          std::uint64_t budget = kDefaultEnumerationBudget);

}  // namespace srlnc
