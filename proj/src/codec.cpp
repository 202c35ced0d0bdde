#include "srlnc/codec.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "srlnc/matrix.hpp"

namespace srlnc {

SourceGeneration SourceGeneration::random(const FieldSpec& spec, std::size_t n, std::size_t length,
                                          CounterRng& rng) {
    SourceGeneration gen{n, length, std::vector<std::vector<Symbol>>(n, std::vector<Symbol>(length))};
    for (auto& packet : gen.packets) {
        for (auto& s : packet) s = static_cast<Symbol>(rng.below(spec.order()));
    }
    return gen;
}

CodedPacket combine(const FieldSpec& spec, const SourceGeneration& gen, std::span<const Symbol> coding_vector) {
    if (coding_vector.size() != gen.n) throw DimensionError("coding vector length must equal generation size");
    CodedPacket out{std::vector<Symbol>(coding_vector.begin(), coding_vector.end()),
                    std::vector<Symbol>(gen.length, 0)};
    for (std::size_t j = 0; j < gen.n; ++j) {
        const Symbol g = coding_vector[j];
        if (g == 0) continue;
        const auto& x = gen.packets[j];
        for (std::size_t k = 0; k < gen.length; ++k) out.payload[k] = spec.add(out.payload[k], spec.mul(g, x[k]));
    }
    return out;
}

CodedPacket encode(const SourceGeneration& gen, const SparseDist& dist, CounterRng& rng, bool include_zero_vectors) {
    if (!include_zero_vectors && dist.p0() >= 1.0 && gen.n > 0) {
        throw Error("cannot exclude zero coding vectors when p0 = 1");
    }
    std::vector<Symbol> g(gen.n);
    do {
        for (auto& v : g) v = dist.sample(rng);
    } while (!include_zero_vectors && gen.n > 0 && weight(g) == 0);
    return combine(dist.spec(), gen, g);
}

Decoder::Decoder(FieldSpec spec, std::size_t n, std::size_t length)
    : spec_(std::move(spec)), n_(n), length_(length) {}

bool Decoder::insert(const CodedPacket& packet) {
    if (packet.coding_vector.size() != n_ || packet.payload.size() != length_) {
        throw DimensionError("packet dimensions do not match the decoder (n = " + std::to_string(n_) +
                             ", L = " + std::to_string(length_) + ")");
    }
    ++received_;
    const FieldSpec& f = spec_;
    std::vector<Symbol> v = packet.coding_vector;
    std::vector<Symbol> pay = packet.payload;

    auto axpy = [&f](std::vector<Symbol>& y, Symbol a, const std::vector<Symbol>& x) {
        for (std::size_t k = 0; k < y.size(); ++k) y[k] = f.sub(y[k], f.mul(a, x[k]));
    };

    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Symbol factor = v[pivots_[r]];
        if (factor == 0) continue;
        axpy(v, factor, rows_[r]);
        axpy(pay, factor, payloads_[r]);
    }
    const auto lead = std::find_if(v.begin(), v.end(), [](Symbol s) { return s != 0; });
    if (lead == v.end()) return false;
    const auto col = static_cast<std::size_t>(lead - v.begin());
    const Symbol scale = f.inv(*lead);
    for (auto& s : v) s = f.mul(s, scale);
    for (auto& s : pay) s = f.mul(s, scale);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Symbol factor = rows_[r][col];
        if (factor == 0) continue;
        axpy(rows_[r], factor, v);
        axpy(payloads_[r], factor, pay);
    }
    const auto at = std::lower_bound(pivots_.begin(), pivots_.end(), col) - pivots_.begin();
    pivots_.insert(pivots_.begin() + at, col);
    rows_.insert(rows_.begin() + at, std::move(v));
    payloads_.insert(payloads_.begin() + at, std::move(pay));
    return true;
}

std::vector<std::vector<Symbol>> Decoder::recover_sources() const {
    if (!complete()) {
        throw RankError("cannot recover sources at rank " + std::to_string(rank()) + " < " + std::to_string(n_));
    }
    // Full rank in RREF with sorted pivots is the identity, so the transformed
    // payloads are the sources in order.
    return payloads_;
}

void SimConfig::validate() const {
    FieldSpec spec(q);
    if (n == 0) throw Error("generation size n must be positive");
    if (p0 < 0 || p0 > 1) throw Error("p0 must lie in [0, 1]");
    if (mode == ReceptionMode::fixed_m && m < n) throw Error("fixed-m mode needs m >= n");
    if (erasure < 0 || erasure > 1) throw Error("erasure probability must lie in [0, 1]");
    if (!include_zero_vectors && p0 == 1) throw Error("cannot exclude zero coding vectors when p0 = 1");
    if (trials == 0) throw Error("trials must be positive");
}

namespace {

struct TrialOutcome {
    bool success = false;
    bool audited = false;
    bool audit_ok = true;
    bool roundtrip_ok = true;
    std::size_t transmissions = 0;
    std::uint64_t zero_vectors = 0;
};

constexpr std::uint64_t kAuditPeriod = 1000;

TrialOutcome run_one(const SimConfig& cfg, const FieldSpec& spec, const SparseDist& dist, double erasure,
                     std::uint64_t trial) {
    CounterRng rng = CounterRng::substream(cfg.seed, trial);
    TrialOutcome out;
    const auto gen = SourceGeneration::random(spec, cfg.n, cfg.length, rng);
    Decoder decoder(spec, cfg.n, cfg.length);
    out.audited = trial % kAuditPeriod == 0;
    std::vector<Symbol> received;

    auto deliver = [&](const CodedPacket& packet) {
        decoder.insert(packet);
        if (out.audited) received.insert(received.end(), packet.coding_vector.begin(), packet.coding_vector.end());
    };

    const std::size_t budget = cfg.mode == ReceptionMode::fixed_m ? cfg.m : cfg.sent;
    for (std::size_t k = 1; k <= budget; ++k) {
        const auto packet = encode(gen, dist, rng, cfg.include_zero_vectors);
        if (weight(packet.coding_vector) == 0) ++out.zero_vectors;
        if (cfg.mode == ReceptionMode::stream) {
            if (rng.uniform01() < erasure) continue;
            deliver(packet);
            if (decoder.complete()) {
                out.transmissions = k;
                break;
            }
        } else {
            deliver(packet);
            if (decoder.complete() && out.transmissions == 0) out.transmissions = k;
        }
    }
    out.success = decoder.complete();
    if (out.audited) {
        const std::size_t rows = received.size() / cfg.n;
        out.audit_ok = rank(FqMatrix(spec, rows, cfg.n, std::move(received))) == decoder.rank();
    }
    if (out.success) out.roundtrip_ok = decoder.recover_sources() == gen.packets;
    return out;
}

std::size_t nearest_rank(const std::vector<std::size_t>& sorted, double fraction) {
    if (sorted.empty()) return 0;
    auto idx = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(sorted.size())));
    return sorted[std::clamp<std::size_t>(idx, 1, sorted.size()) - 1];
}

}  // namespace

SimReport run_trials(const SimConfig& cfg) {
    cfg.validate();
    const FieldSpec spec(cfg.q);
    const SparseDist dist(spec, to_double(cfg.p0));
    const double erasure = to_double(cfg.erasure);

    std::vector<TrialOutcome> outcomes(cfg.trials);
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, 64));
    auto work = [&](unsigned w) {
        for (std::uint64_t t = w; t < cfg.trials; t += workers) outcomes[t] = run_one(cfg, spec, dist, erasure, t);
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }

    SimReport report;
    report.config = cfg;
    report.trials = cfg.trials;
    std::vector<std::size_t> transmissions;
    double total_transmissions = 0.0;
    for (const auto& o : outcomes) {
        report.zero_vectors_sent += o.zero_vectors;
        if (o.audited) {
            ++report.rank_audits;
            if (!o.audit_ok) ++report.rank_audit_failures;
        }
        if (!o.roundtrip_ok) ++report.roundtrip_failures;
        if (o.success) {
            ++report.successes;
            transmissions.push_back(o.transmissions);
            total_transmissions += static_cast<double>(o.transmissions);
        }
    }
    report.success_rate = static_cast<double>(report.successes) / static_cast<double>(report.trials);
    report.std_error = std::sqrt(report.success_rate * (1.0 - report.success_rate) / static_cast<double>(report.trials));
    std::sort(transmissions.begin(), transmissions.end());
    if (!transmissions.empty()) {
        report.mean_transmissions = total_transmissions / static_cast<double>(transmissions.size());
        report.p50_transmissions = nearest_rank(transmissions, 0.50);
        report.p90_transmissions = nearest_rank(transmissions, 0.90);
        report.p99_transmissions = nearest_rank(transmissions, 0.99);
        report.max_transmissions = transmissions.back();
    }
    return report;
}

std::string to_string(ReceptionMode mode) { return mode == ReceptionMode::fixed_m ? "fixed_m" : "stream"; }

nlohmann::json to_json(const SimConfig& cfg) {
    nlohmann::json j{{"q", cfg.q},
                     {"n", cfg.n},
                     {"p0", to_string(cfg.p0)},
                     {"L", cfg.length},
                     {"mode", to_string(cfg.mode)},
                     {"trials", cfg.trials},
                     {"seed", cfg.seed},
                     {"include_zero_vectors", cfg.include_zero_vectors}};
    if (cfg.mode == ReceptionMode::fixed_m) {
        j["m"] = cfg.m;
    } else {
        j["N"] = cfg.sent;
        j["eps"] = to_string(cfg.erasure);
    }
    return j;
}

namespace {

Rational rational_field(const nlohmann::json& v, const char* key) {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number()) return parse_rational(v.dump());
    throw ParseError(std::string("config field '") + key + "' must be a number or rational string");
}

}  // namespace

SimConfig sim_config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw ParseError("simulation config must be a JSON object");
    static const std::vector<std::string> known{"q",    "n",      "p0",   "L",    "mode", "m", "N", "eps",
                                                "trials", "seed", "include_zero_vectors", "threads"};
    for (const auto& [key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw ParseError("unknown simulation config field '" + key + "'");
        }
    }
    SimConfig cfg;
    try {
        if (j.contains("q")) cfg.q = j.at("q").get<std::uint32_t>();
        if (j.contains("n")) cfg.n = j.at("n").get<std::size_t>();
        if (j.contains("p0")) cfg.p0 = rational_field(j.at("p0"), "p0");
        if (j.contains("L")) cfg.length = j.at("L").get<std::size_t>();
        if (j.contains("mode")) {
            const auto mode = j.at("mode").get<std::string>();
            if (mode == "fixed_m") {
                cfg.mode = ReceptionMode::fixed_m;
            } else if (mode == "stream") {
                cfg.mode = ReceptionMode::stream;
            } else {
                throw ParseError("mode must be \"fixed_m\" or \"stream\"");
            }
        }
        if (j.contains("m")) cfg.m = j.at("m").get<std::size_t>();
        if (j.contains("N")) cfg.sent = j.at("N").get<std::size_t>();
        if (j.contains("eps")) cfg.erasure = rational_field(j.at("eps"), "eps");
        if (j.contains("trials")) cfg.trials = j.at("trials").get<std::uint64_t>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("include_zero_vectors")) cfg.include_zero_vectors = j.at("include_zero_vectors").get<bool>();
        if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad simulation config: ") + e.what());
    }
    return cfg;
}

nlohmann::json to_json(const SimReport& r) {
    return {{"config", to_json(r.config)},
            {"trials", r.trials},
            {"successes", r.successes},
            {"success_rate", r.success_rate},
            {"stderr", r.std_error},
            {"transmissions",
             {{"mean", r.mean_transmissions},
              {"p50", r.p50_transmissions},
              {"p90", r.p90_transmissions},
              {"p99", r.p99_transmissions},
              {"max", r.max_transmissions}}},
            {"rank_audits", r.rank_audits},
            {"rank_audit_failures", r.rank_audit_failures},
            {"roundtrip_failures", r.roundtrip_failures},
            {"zero_vectors_sent", r.zero_vectors_sent}};
}

std::string sim_csv_header() { return "q,n,mode,m_or_N,eps,p0,trials,seed,success_rate,stderr"; }

std::string sim_csv_row(const SimReport& r) {
    const auto& c = r.config;
    const bool fixed = c.mode == ReceptionMode::fixed_m;
    return std::to_string(c.q) + "," + std::to_string(c.n) + "," + to_string(c.mode) + "," +
           std::to_string(fixed ? c.m : c.sent) + "," + (fixed ? std::string("0") : to_string(c.erasure)) + "," +
           to_string(c.p0) + "," + std::to_string(r.trials) + "," + std::to_string(c.seed) + "," +
           nlohmann::json(r.success_rate).dump() + "," + nlohmann::json(r.std_error).dump();
}

}  // namespace srlnc
