#include "srlnc/field.hpp"

#include <bit>
#include <utility>

namespace srlnc {

namespace {

// Carryless multiply reduced by the modulus.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t modulus, unsigned degree) {
    std::uint32_t result = 0;
    while (b != 0) {
        if (b & 1u) result ^= a;
        b >>= 1;
        a <<= 1;
        if (a & (1u << degree)) a ^= modulus;
    }
    return result;
}

}  // namespace

std::uint32_t binary_modulus(unsigned degree) {
    switch (degree) {
        case 2: return 0b111;
        case 3: return 0b1011;
        case 4: return 0b10011;
        case 5: return 0b100101;
        case 6: return 0b1000011;
        case 7: return 0b10000011;
        case 8: return 0b100011011;
        default: throw FieldError("no binary-extension field of degree " + std::to_string(degree));
    }
}

bool is_prime(std::uint32_t v) noexcept {
    if (v < 2) return false;
    for (std::uint32_t d = 2; d * d <= v; ++d) {
        if (v % d == 0) return false;
    }
    return true;
}

FieldSpec::FieldSpec(std::uint32_t q) : q_(q), kind_(FieldKind::prime) {
    if (q < 2) throw FieldError("field order must be at least 2, got " + std::to_string(q));
    if (is_prime(q)) {
        if (q >= (1u << 16)) throw FieldError("prime field order must be below 65536");
        return;
    }
    if (!std::has_single_bit(q) || q > 256) {
        throw FieldError("unsupported field order " + std::to_string(q) +
                         " (need a prime below 65536 or 2^k with 2 <= k <= 8)");
    }
    kind_ = FieldKind::binary_extension;
    degree_ = static_cast<unsigned>(std::countr_zero(q));
    modulus_ = binary_modulus(degree_);

    // Find the smallest primitive element; x itself is not primitive for the
    // degree-8 modulus.
    auto tables = std::make_shared<LogTables>();
    for (std::uint32_t g = 2; g < q; ++g) {
        std::uint32_t x = 1;
        std::uint32_t period = 0;
        do {
            x = clmul_mod(x, g, modulus_, degree_);
            ++period;
        } while (x != 1 && period < q);
        if (period != q - 1) continue;
        x = 1;
        for (std::uint32_t e = 0; e < q - 1; ++e) {
            tables->exp[e] = x;
            tables->exp[e + q - 1] = x;
            tables->log[x] = static_cast<std::uint16_t>(e);
            x = clmul_mod(x, g, modulus_, degree_);
        }
        tables_ = std::move(tables);
        return;
    }
    throw FieldError("modulus has no primitive element");
}

std::string FieldSpec::name() const {
    if (kind_ == FieldKind::prime) return "GF(" + std::to_string(q_) + ")";
    return "GF(2^" + std::to_string(degree_) + ")";
}

Symbol FieldSpec::inv(Symbol a) const {
    if (a == 0) throw FieldError("zero has no multiplicative inverse");
    if (kind_ == FieldKind::binary_extension) {
        return tables_->exp[(q_ - 1 - tables_->log[a]) % (q_ - 1)];
    }
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = q_, new_r = a;
    while (new_r != 0) {
        const std::int64_t quotient = r / new_r;
        t = std::exchange(new_t, t - quotient * new_t);
        r = std::exchange(new_r, r - quotient * new_r);
    }
    if (t < 0) t += q_;
    return static_cast<Symbol>(t);
}

Symbol FieldSpec::pow(Symbol a, std::uint64_t e) const noexcept {
    Symbol result = 1;
    while (e != 0) {
        if (e & 1u) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

FieldElement::FieldElement(const FieldSpec& spec, std::uint64_t value)
    : spec_(spec), value_(static_cast<Symbol>(value)) {
    if (!spec.contains(value)) {
        throw FieldError("value " + std::to_string(value) + " is not an element of " + spec.name());
    }
}

namespace {

const FieldSpec& common_spec(const FieldElement& a, const FieldElement& b) {
    if (!(a.spec() == b.spec())) {
        throw FieldError("mismatched fields: " + a.spec().name() + " vs " + b.spec().name());
    }
    return a.spec();
}

}  // namespace

FieldElement add(const FieldElement& a, const FieldElement& b) {
    const auto& f = common_spec(a, b);
    return {f, f.add(a.value(), b.value())};
}

FieldElement sub(const FieldElement& a, const FieldElement& b) {
    const auto& f = common_spec(a, b);
    return {f, f.sub(a.value(), b.value())};
}

FieldElement mul(const FieldElement& a, const FieldElement& b) {
    const auto& f = common_spec(a, b);
    return {f, f.mul(a.value(), b.value())};
}

FieldElement inv(const FieldElement& a) { return {a.spec(), a.spec().inv(a.value())}; }

std::vector<FieldElement> enumerate_elements(const FieldSpec& spec) {
    std::vector<FieldElement> out;
    out.reserve(spec.order());
    for (std::uint32_t v = 0; v < spec.order(); ++v) out.emplace_back(spec, v);
    return out;
}

SparseDist::SparseDist(FieldSpec spec, double p0) : spec_(std::move(spec)), p0_(p0) {
    if (!(p0 >= 0.0 && p0 <= 1.0)) throw FieldError("sparsity p0 must lie in [0, 1]");
}

FieldElement sample(const SparseDist& dist, CounterRng& rng) { return {dist.spec(), dist.sample(rng)}; }

}  // namespace srlnc
