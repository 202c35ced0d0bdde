#include "srlnc/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <sstream>

namespace srlnc {

FqMatrix::FqMatrix(FieldSpec spec, std::size_t rows, std::size_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

FqMatrix::FqMatrix(FieldSpec spec, std::size_t rows, std::size_t cols, std::vector<Symbol> entries)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw DimensionError("matrix needs " + std::to_string(rows * cols) + " entries, got " +
                             std::to_string(data_.size()));
    }
    for (Symbol v : data_) {
        if (!spec_.contains(v)) throw FieldError("entry " + std::to_string(v) + " outside " + spec_.name());
    }
}

FqMatrix FqMatrix::identity(const FieldSpec& spec, std::size_t n) {
    FqMatrix m(spec, n, n);
    for (std::size_t k = 0; k < n; ++k) m(k, k) = 1;
    return m;
}

FqMatrix FqMatrix::row_vector(const FieldSpec& spec, std::span<const Symbol> v) {
    return FqMatrix(spec, 1, v.size(), std::vector<Symbol>(v.begin(), v.end()));
}

FqMatrix FqMatrix::parse(const FieldSpec& spec, std::string_view text) {
    std::vector<Symbol> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find(';', start);
        if (end == std::string_view::npos) end = text.size();
        const std::string_view line = text.substr(start, end - start);
        std::size_t count = 0;
        std::size_t pos = 0;
        while (pos < line.size()) {
            if (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\n' || line[pos] == '\r') {
                ++pos;
                continue;
            }
            std::uint64_t value = 0;
            const auto [ptr, ec] = std::from_chars(line.data() + pos, line.data() + line.size(), value);
            if (ec != std::errc() || ptr == line.data() + pos) {
                throw ParseError("bad matrix entry near '" + std::string(line.substr(pos)) + "'");
            }
            if (!spec.contains(value)) {
                throw ParseError("entry " + std::to_string(value) + " outside " + spec.name());
            }
            entries.push_back(static_cast<Symbol>(value));
            ++count;
            pos = static_cast<std::size_t>(ptr - line.data());
        }
        if (count == 0) {
            if (end == text.size() && rows > 0) break;  // trailing ';'
            throw ParseError("empty matrix row");
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw ParseError("ragged matrix: row " + std::to_string(rows) + " has " + std::to_string(count) +
                             " entries, expected " + std::to_string(cols));
        }
        ++rows;
        start = end + 1;
    }
    return FqMatrix(spec, rows, cols, std::move(entries));
}

std::string FqMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r != 0) out << "; ";
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c != 0) out << ' ';
            out << (*this)(r, c);
        }
    }
    return out.str();
}

FqMatrix transpose(const FqMatrix& m) {
    FqMatrix t(m.spec(), m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
    }
    return t;
}

FqMatrix multiply(const FqMatrix& a, const FqMatrix& b) {
    if (!(a.spec() == b.spec())) throw FieldError("matrix product over different fields");
    if (a.cols() != b.rows()) throw DimensionError("matrix product dimension mismatch");
    const FieldSpec& f = a.spec();
    FqMatrix out(f, a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Symbol coef = a(r, k);
            if (coef == 0) continue;
            for (std::size_t c = 0; c < b.cols(); ++c) out(r, c) = f.add(out(r, c), f.mul(coef, b(k, c)));
        }
    }
    return out;
}

std::vector<Symbol> multiply(std::span<const Symbol> v, const FqMatrix& m) {
    if (v.size() != m.rows()) throw DimensionError("vector-matrix product dimension mismatch");
    const FieldSpec& f = m.spec();
    std::vector<Symbol> out(m.cols(), 0);
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k] == 0) continue;
        for (std::size_t c = 0; c < m.cols(); ++c) out[c] = f.add(out[c], f.mul(v[k], m(k, c)));
    }
    return out;
}

FqMatrix select_columns(const FqMatrix& m, std::span<const std::size_t> cols) {
    FqMatrix out(m.spec(), m.rows(), cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j] >= m.cols()) throw DimensionError("column index out of range");
        for (std::size_t r = 0; r < m.rows(); ++r) out(r, j) = m(r, cols[j]);
    }
    return out;
}

FqMatrix permute_columns(const FqMatrix& m, std::span<const std::size_t> perm) {
    if (perm.size() != m.cols()) throw DimensionError("permutation length must equal column count");
    return select_columns(m, perm);
}

FqMatrix vstack(const FqMatrix& top, const FqMatrix& bottom) {
    if (!(top.spec() == bottom.spec())) throw FieldError("stacking matrices over different fields");
    if (top.cols() != bottom.cols()) throw DimensionError("stacking matrices with different widths");
    std::vector<Symbol> entries(top.entries().begin(), top.entries().end());
    entries.insert(entries.end(), bottom.entries().begin(), bottom.entries().end());
    return FqMatrix(top.spec(), top.rows() + bottom.rows(), top.cols(), std::move(entries));
}

namespace {

// In-place Gauss-Jordan elimination; returns pivot columns.
std::vector<std::size_t> reduce_in_place(FqMatrix& m) {
    const FieldSpec& f = m.spec();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t pr = lead;
        while (pr < m.rows() && m(pr, c) == 0) ++pr;
        if (pr == m.rows()) continue;
        if (pr != lead) {
            auto a = m.row(pr);
            auto b = m.row(lead);
            std::swap_ranges(a.begin(), a.end(), b.begin());
        }
        auto pivot_row = m.row(lead);
        const Symbol scale = f.inv(pivot_row[c]);
        for (auto& v : pivot_row) v = f.mul(v, scale);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == lead) continue;
            const Symbol factor = m(r, c);
            if (factor == 0) continue;
            auto row = m.row(r);
            for (std::size_t k = c; k < m.cols(); ++k) row[k] = f.sub(row[k], f.mul(factor, pivot_row[k]));
        }
        pivots.push_back(c);
        ++lead;
    }
    return pivots;
}

}  // namespace

std::size_t rank(const FqMatrix& m) {
    FqMatrix work = m;
    return reduce_in_place(work).size();
}

Rref rref(const FqMatrix& m) {
    FqMatrix work = m;
    auto pivots = reduce_in_place(work);
    return {std::move(work), std::move(pivots)};
}

FqMatrix invert(const FqMatrix& m) {
    if (m.rows() != m.cols()) throw SingularMatrixError("cannot invert a non-square matrix");
    const std::size_t n = m.rows();
    FqMatrix aug(m.spec(), n, 2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
        aug(r, n + r) = 1;
    }
    const auto pivots = reduce_in_place(aug);
    if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) {
        throw SingularMatrixError("matrix is singular");
    }
    FqMatrix out(m.spec(), n, n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) out(r, c) = aug(r, n + c);
    }
    return out;
}

ColumnBasisDecomposition column_basis_decompose(const FqMatrix& a) {
    if (a.rows() == 0) throw RankError("column basis decomposition needs at least one row");
    auto pivots = rref(a).pivot_cols;
    if (pivots.size() != a.rows()) {
        throw RankError("matrix is not full row rank (rank " + std::to_string(pivots.size()) + " < " +
                        std::to_string(a.rows()) + ")");
    }
    std::vector<std::size_t> rest;
    for (std::size_t c = 0, p = 0; c < a.cols(); ++c) {
        if (p < pivots.size() && pivots[p] == c) {
            ++p;
        } else {
            rest.push_back(c);
        }
    }
    std::vector<std::size_t> perm = pivots;
    perm.insert(perm.end(), rest.begin(), rest.end());
    FqMatrix a1 = select_columns(a, pivots);
    FqMatrix a2 = select_columns(a, rest);
    FqMatrix s = multiply(invert(a1), a2);
    return {std::move(perm), std::move(pivots), std::move(a1), std::move(a2), std::move(s)};
}

bool membership_criterion(const ColumnBasisDecomposition& d, std::span<const Symbol> h) {
    if (h.size() != d.cols()) {
        throw DimensionError("vector length " + std::to_string(h.size()) + " does not match " +
                             std::to_string(d.cols()) + " columns");
    }
    const std::size_t i = d.rank();
    std::vector<Symbol> head(i);
    for (std::size_t k = 0; k < i; ++k) head[k] = h[d.perm[k]];
    const auto projected = multiply(head, d.s);
    for (std::size_t k = i; k < d.cols(); ++k) {
        if (h[d.perm[k]] != projected[k - i]) return false;
    }
    return true;
}

std::size_t weight(std::span<const Symbol> v) noexcept {
    return static_cast<std::size_t>(std::count_if(v.begin(), v.end(), [](Symbol s) { return s != 0; }));
}

std::uint64_t checked_pow(std::uint64_t q, std::uint64_t e) noexcept {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t out = 1;
    for (std::uint64_t k = 0; k < e; ++k) {
        if (q != 0 && out > kMax / q) return kMax;
        out *= q;
    }
    return out;
}

std::uint64_t full_rank_count(std::uint32_t q, std::size_t rows, std::size_t cols) noexcept {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    if (rows > cols) return 0;
    const std::uint64_t total = checked_pow(q, cols);
    if (total == kMax) return kMax;
    std::uint64_t out = 1;
    for (std::size_t j = 0; j < rows; ++j) {
        const std::uint64_t factor = total - checked_pow(q, j);
        if (factor != 0 && out > kMax / factor) return kMax;
        out *= factor;
    }
    return out;
}

FullRankEnumerator::FullRankEnumerator(FieldSpec spec, std::size_t rows, std::size_t cols, std::uint64_t budget)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {
    if (rows > cols) throw DimensionError("full-row-rank enumeration needs rows <= cols");
    count_ = full_rank_count(spec_.order(), rows, cols);
    domain_ = checked_pow(spec_.order(), cols);
    if (count_ > budget) {
        throw BudgetExceededError("enumerating full-rank " + std::to_string(rows) + "x" + std::to_string(cols) +
                                      " matrices over " + spec_.name(),
                                  count_, budget);
    }
}

void FullRankEnumerator::for_each_in(std::uint64_t first_row_begin, std::uint64_t first_row_end,
                                     const Visitor& visit) const {
    first_row_end = std::min(first_row_end, domain_);
    FqMatrix current(spec_, rows_, cols_);
    if (rows_ == 0) {
        if (first_row_begin < first_row_end) visit(current);
        return;
    }
    const FieldSpec& f = spec_;
    const Symbol q = f.order();
    // Echelon basis per depth: basis[d] is row d reduced against rows < d.
    std::vector<std::vector<Symbol>> basis(rows_, std::vector<Symbol>(cols_));
    std::vector<std::size_t> pivot(rows_);
    std::vector<Symbol> residual(cols_);

    auto independent = [&](std::size_t depth, std::span<const Symbol> v) {
        std::copy(v.begin(), v.end(), residual.begin());
        for (std::size_t d = 0; d < depth; ++d) {
            const Symbol factor = residual[pivot[d]];
            if (factor == 0) continue;
            for (std::size_t c = 0; c < cols_; ++c) {
                residual[c] = f.sub(residual[c], f.mul(factor, basis[d][c]));
            }
        }
        for (std::size_t c = 0; c < cols_; ++c) {
            if (residual[c] != 0) {
                const Symbol scale = f.inv(residual[c]);
                for (std::size_t k = 0; k < cols_; ++k) basis[depth][k] = f.mul(residual[k], scale);
                pivot[depth] = c;
                return true;
            }
        }
        return false;
    };

    // Increment a base-q digit vector, last digit fastest. Returns false on wrap.
    auto advance = [q](std::span<Symbol> digits) {
        for (std::size_t k = digits.size(); k-- > 0;) {
            if (++digits[k] < q) return true;
            digits[k] = 0;
        }
        return false;
    };

    auto descend = [&](auto&& self, std::size_t depth) -> void {
        auto row = current.row(depth);
        std::fill(row.begin(), row.end(), 0);
        do {
            if (!independent(depth, row)) continue;
            if (depth + 1 == rows_) {
                visit(current);
            } else {
                self(self, depth + 1);
            }
        } while (advance(row));
    };

    auto first = current.row(0);
    std::uint64_t index = first_row_begin;
    for (std::size_t k = cols_; k-- > 0;) {
        first[k] = static_cast<Symbol>(index % q);
        index /= q;
    }
    for (std::uint64_t v = first_row_begin; v < first_row_end; ++v) {
        if (independent(0, first)) {
            if (rows_ == 1) {
                visit(current);
            } else {
                descend(descend, 1);
            }
        }
        advance(first);
    }
}

std::vector<FqMatrix> enumerate_full_rank(const FieldSpec& spec, std::size_t rows, std::size_t cols,
                                          std::uint64_t budget) {
    FullRankEnumerator e(spec, rows, cols, budget);
    std::vector<FqMatrix> out;
    out.reserve(static_cast<std::size_t>(e.count()));
    e.for_each([&](const FqMatrix& m) { out.push_back(m); });
    return out;
}

}  // namespace srlnc
