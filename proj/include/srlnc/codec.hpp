#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "srlnc/field.hpp"
#include "srlnc/poly.hpp"
#include "srlnc/rng.hpp"

namespace srlnc {

/// One generation of n source packets, each L field symbols long.
struct SourceGeneration {
    std::size_t n = 0;
    std::size_t length = 0;
    std::vector<std::vector<Symbol>> packets;

    /// Payload symbols drawn uniformly from F_q.
    static SourceGeneration random(const FieldSpec& spec, std::size_t n, std::size_t length, CounterRng& rng);
};

struct CodedPacket {
    std::vector<Symbol> coding_vector;
    std::vector<Symbol> payload;
};

/// Payload for an explicit coding vector: sum_j g_j x_j.
CodedPacket combine(const FieldSpec& spec, const SourceGeneration& gen, std::span<const Symbol> coding_vector);

/// Draws a coding vector i.i.d. from the sparse distribution and combines the
/// generation with it. With include_zero_vectors false the all-zero vector is
/// redrawn, which needs p0 < 1.
CodedPacket encode(const SourceGeneration& gen, const SparseDist& dist, CounterRng& rng,
                   bool include_zero_vectors = true);

/// Destination-side incremental Gauss-Jordan decoder. The accepted coding
/// vectors are kept in reduced row echelon form sorted by pivot, and the
/// payloads undergo the same row operations.
class Decoder {
  public:
    Decoder(FieldSpec spec, std::size_t n, std::size_t length);

    /// Returns true iff the packet increased the rank.
    bool insert(const CodedPacket& packet);

    std::size_t n() const noexcept { return n_; }
    std::size_t rank() const noexcept { return rows_.size(); }
    std::size_t received_count() const noexcept { return received_; }
    bool complete() const noexcept { return rank() == n_; }
    const std::vector<std::vector<Symbol>>& reduced_rows() const noexcept { return rows_; }
    const std::vector<std::vector<Symbol>>& transformed_payloads() const noexcept { return payloads_; }
    const std::vector<std::size_t>& pivot_cols() const noexcept { return pivots_; }

    /// Throws RankError unless rank == n.
    std::vector<std::vector<Symbol>> recover_sources() const;

  private:
    FieldSpec spec_;
    std::size_t n_;
    std::size_t length_;
    std::size_t received_ = 0;
    std::vector<std::vector<Symbol>> rows_;
    std::vector<std::vector<Symbol>> payloads_;
    std::vector<std::size_t> pivots_;
};

enum class ReceptionMode { fixed_m, stream };

struct SimConfig {
    std::uint32_t q = 2;
    std::size_t n = 4;
    Rational p0 = Rational(1, 2);
    std::size_t length = 8;
    ReceptionMode mode = ReceptionMode::fixed_m;
    /// Packets held by the destination in fixed-m mode.
    std::size_t m = 6;
    /// Packets sent by the source in stream mode.
    std::size_t sent = 16;
    /// Per-packet erasure probability in stream mode.
    Rational erasure = 0;
    std::uint64_t trials = 10000;
    std::uint64_t seed = 1;
    bool include_zero_vectors = true;
    unsigned threads = 1;

    /// Throws Error on an inconsistent configuration.
    void validate() const;
};

struct SimReport {
    SimConfig config;
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double success_rate = 0.0;
    double std_error = 0.0;
    /// Transmissions until rank n, over successful trials.
    double mean_transmissions = 0.0;
    std::size_t p50_transmissions = 0;
    std::size_t p90_transmissions = 0;
    std::size_t p99_transmissions = 0;
    std::size_t max_transmissions = 0;
    std::uint64_t rank_audits = 0;
    std::uint64_t rank_audit_failures = 0;
    std::uint64_t roundtrip_failures = 0;
    std::uint64_t zero_vectors_sent = 0;
};

/// Runs independent trials; trial t draws from substream (seed, t), so the
/// report depends only on the config.
SimReport run_trials(const SimConfig& cfg);

std::string to_string(ReceptionMode mode);
nlohmann::json to_json(const SimConfig& cfg);
SimConfig sim_config_from_json(const nlohmann::json& j);
nlohmann::json to_json(const SimReport& report);
/// "q,n,mode,m_or_N,eps,p0,trials,seed,success_rate,stderr"
std::string sim_csv_header();
std::string sim_csv_row(const SimReport& report);

}  // namespace srlnc
