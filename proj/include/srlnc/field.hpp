#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "srlnc/errors.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

/// Raw field symbol. Always in [0, q) for the owning FieldSpec.
using Symbol = std::uint32_t;

enum class FieldKind { prime, binary_extension };

/// Canonical irreducible modulus (bitmask including the leading term) for GF(2^k).
std::uint32_t binary_modulus(unsigned degree);

/// The finite field F_q: q prime below 2^16, or q = 2^k with 2 <= k <= 8.
///
/// A FieldSpec is a cheap immutable handle; copies share the same
/// log/antilog tables. Two specs compare equal iff they have the same order,
/// since the modulus for each order is fixed.
class FieldSpec {
  public:
    explicit FieldSpec(std::uint32_t q);

    std::uint32_t order() const noexcept { return q_; }
    FieldKind kind() const noexcept { return kind_; }
    /// Extension degree k for GF(2^k); 1 for prime fields.
    unsigned degree() const noexcept { return degree_; }
    /// Modulus bitmask for GF(2^k); 0 for prime fields.
    std::uint32_t modulus() const noexcept { return modulus_; }
    std::string name() const;

    Symbol add(Symbol a, Symbol b) const noexcept {
        if (kind_ == FieldKind::binary_extension) return a ^ b;
        const Symbol s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    Symbol sub(Symbol a, Symbol b) const noexcept {
        if (kind_ == FieldKind::binary_extension) return a ^ b;
        return a >= b ? a - b : a + q_ - b;
    }
    Symbol neg(Symbol a) const noexcept {
        if (kind_ == FieldKind::binary_extension || a == 0) return a;
        return q_ - a;
    }
    Symbol mul(Symbol a, Symbol b) const noexcept {
        if (kind_ == FieldKind::binary_extension) {
            if (a == 0 || b == 0) return 0;
            return tables_->exp[tables_->log[a] + tables_->log[b]];
        }
        return static_cast<Symbol>((static_cast<std::uint64_t>(a) * b) % q_);
    }
    /// Multiplicative inverse. Throws FieldError for zero.
    Symbol inv(Symbol a) const;
    Symbol div(Symbol a, Symbol b) const { return mul(a, inv(b)); }
    Symbol pow(Symbol a, std::uint64_t e) const noexcept;

    bool contains(std::uint64_t v) const noexcept { return v < q_; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept { return a.q_ == b.q_; }

  private:
    struct LogTables {
        std::array<std::uint16_t, 256> log{};
        std::array<Symbol, 512> exp{};
    };

    std::uint32_t q_;
    FieldKind kind_;
    unsigned degree_ = 1;
    std::uint32_t modulus_ = 0;
    std::shared_ptr<const LogTables> tables_;
};

bool is_prime(std::uint32_t v) noexcept;

/// A field symbol bound to its field. Arithmetic between elements of
/// different fields throws FieldError.
class FieldElement {
  public:
    FieldElement(const FieldSpec& spec, std::uint64_t value);

    Symbol value() const noexcept { return value_; }
    const FieldSpec& spec() const noexcept { return spec_; }
    bool is_zero() const noexcept { return value_ == 0; }

    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.spec_ == b.spec_ && a.value_ == b.value_;
    }

  private:
    FieldSpec spec_;
    Symbol value_;
};

FieldElement add(const FieldElement& a, const FieldElement& b);
FieldElement sub(const FieldElement& a, const FieldElement& b);
FieldElement mul(const FieldElement& a, const FieldElement& b);
FieldElement inv(const FieldElement& a);

inline FieldElement operator+(const FieldElement& a, const FieldElement& b) { return add(a, b); }
inline FieldElement operator-(const FieldElement& a, const FieldElement& b) { return sub(a, b); }
inline FieldElement operator*(const FieldElement& a, const FieldElement& b) { return mul(a, b); }

/// All q elements, 0 first, ascending value.
std::vector<FieldElement> enumerate_elements(const FieldSpec& spec);

/// Coefficient distribution of a sparse code: Pr{0} = p0 and every nonzero
/// symbol has probability (1 - p0) / (q - 1).
class SparseDist {
  public:
    SparseDist(FieldSpec spec, double p0);

    const FieldSpec& spec() const noexcept { return spec_; }
    double p0() const noexcept { return p0_; }

    Symbol sample(CounterRng& rng) const noexcept {
        if (rng.uniform01() < p0_) return 0;
        return static_cast<Symbol>(1 + rng.below(spec_.order() - 1));
    }

  private:
    FieldSpec spec_;
    double p0_;
};

FieldElement sample(const SparseDist& dist, CounterRng& rng);

}  // namespace srlnc
