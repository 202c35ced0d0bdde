#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "srlnc/analysis.hpp"
#include "srlnc/codec.hpp"
#include "srlnc/errors.hpp"
#include "srlnc/oracle.hpp"

namespace srlnc::cli {
namespace {

using nlohmann::json;

struct UsageError : Error {
    using Error::Error;
};

enum class Format { table, csv, json };

struct Globals {
    std::uint32_t q = 2;
    std::optional<std::size_t> n;
    std::optional<std::size_t> m;
    std::optional<std::size_t> i;
    std::optional<std::string> p0;
    bool symbolic = false;
    std::optional<std::uint64_t> budget;
    unsigned threads = 1;
    std::string out_path;
    std::string format = "table";
    std::optional<std::uint64_t> seed;
};

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Format parse_format(const std::string& s) {
    if (s == "table") return Format::table;
    if (s == "csv") return Format::csv;
    return Format::json;
}

std::size_t need(const std::optional<std::size_t>& v, const char* flag) {
    if (!v) throw UsageError(std::string("missing required flag ") + flag);
    return *v;
}

Rational parse_probability(const std::string& text) {
    Rational r;
    try {
        r = parse_rational(text);
    } catch (const ParseError& e) {
        throw UsageError("bad probability '" + text + "': " + e.what());
    }
    if (r < 0 || r > 1) throw UsageError("probability out of [0, 1]: " + text);
    return r;
}

AnalysisOptions analysis_options(const Globals& g) {
    AnalysisOptions opts;
    if (g.budget) opts.budget = *g.budget;
    opts.threads = g.threads;
    return opts;
}

std::uint64_t oracle_budget(const Globals& g) { return g.budget ? *g.budget : kDefaultOracleBudget; }

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s : s + std::string(width - s.size(), ' ');
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) {
        width[c] = header[c].size();
        for (const auto& r : rows) width[c] = std::max(width[c], r[c].size());
    }
    auto line = [&](const std::vector<std::string>& cells) {
        std::string s;
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += c + 1 < cells.size() ? pad(cells[c], width[c] + 2) : cells[c];
        }
        out << s << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

const std::vector<std::string> kPointHeader = {"q", "n", "m", "i_or_r", "p0", "value", "value_float", "formula"};

std::vector<std::string> point_row(std::uint32_t q, std::size_t n, std::optional<std::size_t> m, std::size_t i_or_r,
                                   const Rational& p0, const Rational& value, Formula formula) {
    return {std::to_string(q),   std::to_string(n), m ? std::to_string(*m) : "",       std::to_string(i_or_r),
            to_string(p0),       to_string(value),  fmt_double(to_double(value)), std::string(to_string(formula))};
}

json expr_json(const RationalFn& f) {
    return {{"expr", to_json(f)}, {"text", to_string(f)}};
}

// exact ----------------------------------------------------------------------

void cmd_exact(const Globals& g, Format fmt, std::ostream& out) {
    const std::size_t n = need(g.n, "--n");
    const std::size_t m = need(g.m, "--m");
    if (m < n) throw UsageError("exact requires m >= n");
    if (g.symbolic == g.p0.has_value()) throw UsageError("exact needs exactly one of --p0 or --symbolic");
    const FieldSpec spec(g.q);
    const auto opts = analysis_options(g);

    if (g.symbolic) {
        const auto p = full_rank_prob(m, n, spec, opts);
        if (fmt == Format::json) {
            json j = {{"command", "exact"}, {"q", g.q}, {"n", n}, {"m", m}, {"formula", to_string(p.formula)}};
            j.update(expr_json(p.expr));
            out << j.dump(2) << '\n';
        } else if (fmt == Format::csv) {
            print_csv(out, {"q", "n", "m", "formula", "expr"},
                      {{std::to_string(g.q), std::to_string(n), std::to_string(m), std::string(to_string(p.formula)),
                        to_string(p.expr)}});
        } else {
            out << "P(rank " << n << ") for " << m << " x " << n << " over " << spec.name() << '\n';
            out << to_string(p.expr) << '\n';
        }
        return;
    }

    const Rational p0 = parse_probability(*g.p0);
    const Rational v = full_rank_prob_at(m, n, spec, p0, opts);
    if (fmt == Format::json) {
        out << json{{"command", "exact"},     {"q", g.q},
                    {"n", n},                 {"m", m},
                    {"p0", to_string(p0)},    {"formula", to_string(Formula::full_rank_product)},
                    {"value", to_string(v)},  {"value_float", to_double(v)}}
                   .dump(2)
            << '\n';
    } else if (fmt == Format::csv) {
        print_csv(out, kPointHeader, {point_row(g.q, n, m, n, p0, v, Formula::full_rank_product)});
    } else {
        out << "P(rank " << n << ") for " << m << " x " << n << " over " << spec.name() << " at p0 = "
            << to_string(p0) << '\n';
        out << "exact  " << to_string(v) << '\n';
        out << "float  " << fmt_double(to_double(v)) << '\n';
    }
}

// pni ------------------------------------------------------------------------

void cmd_pni(const Globals& g, Format fmt, bool with_bound, std::ostream& out) {
    const std::size_t n = need(g.n, "--n");
    const std::size_t i = need(g.i, "--i");
    if (i >= n) throw UsageError("pni requires 0 <= i <= n - 1");
    if (g.symbolic == g.p0.has_value()) throw UsageError("pni needs exactly one of --p0 or --symbolic");
    const FieldSpec spec(g.q);
    const auto p = p_in(i, n, spec, analysis_options(g));
    const auto bound = bkw_bound(i, n, spec);
    const std::string bound_text = (g.q == 2 ? std::string("max(p0, 1 - p0)")
                                             : "max(p0, (1 - p0)/" + std::to_string(g.q - 1) + ")") +
                                   "^" + std::to_string(bound.exponent());

    if (g.symbolic) {
        if (fmt == Format::json) {
            json j = {{"command", "pni"}, {"q", g.q}, {"n", n}, {"i", i}, {"formula", to_string(p.formula)}};
            j.update(expr_json(p.expr));
            if (with_bound) j["bkw_bound"] = {{"exponent", bound.exponent()}, {"text", bound_text}};
            out << j.dump(2) << '\n';
        } else if (fmt == Format::csv) {
            std::vector<std::string> header = {"q", "n", "i", "formula", "expr"};
            std::vector<std::string> row = {std::to_string(g.q), std::to_string(n), std::to_string(i),
                                            std::string(to_string(p.formula)), to_string(p.expr)};
            if (with_bound) {
                header.push_back("bkw_bound");
                row.push_back(bound_text);
            }
            print_csv(out, header, {row});
        } else {
            out << "p(" << i << ", " << n << ") over " << spec.name() << '\n';
            out << to_string(p.expr) << '\n';
            if (with_bound) out << "bound  " << bound_text << '\n';
        }
        return;
    }

    const Rational p0 = parse_probability(*g.p0);
    const Rational v = p.at(p0);
    const Rational b = bound.at(p0);
    if (fmt == Format::json) {
        json j = {{"command", "pni"},        {"q", g.q},
                  {"n", n},                  {"i", i},
                  {"p0", to_string(p0)},     {"formula", to_string(p.formula)},
                  {"value", to_string(v)},   {"value_float", to_double(v)}};
        if (with_bound) {
            j["bkw_bound"] = {{"exponent", bound.exponent()}, {"value", to_string(b)}, {"value_float", to_double(b)}};
        }
        out << j.dump(2) << '\n';
    } else if (fmt == Format::csv) {
        auto header = kPointHeader;
        auto row = point_row(g.q, n, std::nullopt, i, p0, v, p.formula);
        if (with_bound) {
            header.insert(header.end(), {"bkw_bound", "bkw_bound_float"});
            row.insert(row.end(), {to_string(b), fmt_double(to_double(b))});
        }
        print_csv(out, header, {row});
    } else {
        out << "p(" << i << ", " << n << ") over " << spec.name() << " at p0 = " << to_string(p0) << '\n';
        out << "exact  " << to_string(v) << '\n';
        out << "float  " << fmt_double(to_double(v)) << '\n';
        if (with_bound) out << "bound  " << to_string(b) << " (" << fmt_double(to_double(b)) << ")\n";
    }
}

// rankdist -------------------------------------------------------------------

void cmd_rankdist(const Globals& g, Format fmt, const std::string& form, std::ostream& out) {
    const std::size_t n = need(g.n, "--n");
    const std::size_t m = need(g.m, "--m");
    if (m < n) throw UsageError("rankdist requires m >= n");
    const FieldSpec spec(g.q);
    const auto opts = analysis_options(g);

    if (g.symbolic) {
        if (g.p0) throw UsageError("rankdist needs exactly one of --p0 or --symbolic");
        if (form != "nested") throw UsageError("symbolic rank distributions use --form nested");
        const auto dist = rank_dist_nested(m, n, spec, opts);
        if (fmt == Format::json) {
            json probs = json::array();
            for (std::size_t r = 0; r < dist.probs.size(); ++r) {
                json e = {{"rank", r}};
                e.update(expr_json(dist.probs[r].expr));
                probs.push_back(e);
            }
            out << json{{"command", "rankdist"}, {"q", g.q}, {"n", n}, {"m", m},
                        {"formula", to_string(Formula::nested_sum)}, {"probs", probs}}
                       .dump(2)
                << '\n';
        } else {
            std::vector<std::vector<std::string>> rows;
            for (std::size_t r = 0; r < dist.probs.size(); ++r) {
                rows.push_back({std::to_string(r), to_string(dist.probs[r].expr)});
            }
            if (fmt == Format::csv) {
                print_csv(out, {"rank", "expr"}, rows);
            } else {
                print_table(out, {"rank", "probability"}, rows);
            }
        }
        return;
    }

    if (!g.p0) throw UsageError("rankdist needs --p0 or --symbolic");
    const Rational p0 = parse_probability(*g.p0);
    RankDistributionAt dist;
    if (form == "nested") {
        dist = rank_dist_nested_at(m, n, spec, p0, opts);
    } else {
        dist = rank_dist_partial_fraction(m, n, spec, p0, opts);
    }
    const Rational total = dist.total();
    if (fmt == Format::json) {
        json probs = json::array();
        for (std::size_t r = 0; r < dist.probs.size(); ++r) {
            probs.push_back({{"rank", r}, {"value", to_string(dist.probs[r])}, {"value_float", to_double(dist.probs[r])}});
        }
        out << json{{"command", "rankdist"},
                    {"q", g.q},
                    {"n", n},
                    {"m", m},
                    {"p0", to_string(p0)},
                    {"formula", to_string(dist.formula)},
                    {"probs", probs},
                    {"total", to_string(total)}}
                   .dump(2)
            << '\n';
    } else if (fmt == Format::csv) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t r = 0; r < dist.probs.size(); ++r) {
            rows.push_back(point_row(g.q, n, m, r, p0, dist.probs[r], dist.formula));
        }
        print_csv(out, kPointHeader, rows);
    } else {
        out << "rank distribution of " << m << " x " << n << " over " << spec.name() << " at p0 = " << to_string(p0)
            << " (" << to_string(dist.formula) << ")\n";
        std::vector<std::vector<std::string>> rows;
        for (std::size_t r = 0; r < dist.probs.size(); ++r) {
            rows.push_back({std::to_string(r), to_string(dist.probs[r]), fmt_double(to_double(dist.probs[r]))});
        }
        rows.push_back({"total", to_string(total), fmt_double(to_double(total))});
        print_table(out, {"rank", "exact", "float"}, rows);
    }
}

// sweep ----------------------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        if (!cur.empty()) parts.push_back(cur);
    }
    return parts;
}

std::size_t parse_size(const std::string& s) {
    std::size_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw UsageError("bad integer '" + s + "'");
    return v;
}

std::vector<std::size_t> parse_m_range(const std::string& s) {
    std::vector<std::size_t> ms;
    if (auto colon = s.find(':'); colon != std::string::npos) {
        const std::size_t lo = parse_size(s.substr(0, colon));
        const std::size_t hi = parse_size(s.substr(colon + 1));
        if (hi < lo) throw UsageError("empty --m-range " + s);
        for (std::size_t m = lo; m <= hi; ++m) ms.push_back(m);
    } else {
        for (const auto& part : split(s, ',')) ms.push_back(parse_size(part));
    }
    if (ms.empty()) throw UsageError("empty --m-range");
    return ms;
}

std::vector<Rational> parse_grid(const std::string& s) {
    std::vector<Rational> grid;
    for (const auto& part : split(s, ',')) grid.push_back(parse_probability(part));
    if (grid.empty()) throw UsageError("empty --p0-grid");
    return grid;
}

void cmd_sweep(const Globals& g, Format fmt, const std::string& m_range, const std::string& p0_grid,
               std::ostream& out) {
    const std::size_t n = need(g.n, "--n");
    std::vector<std::size_t> ms;
    if (!m_range.empty()) {
        ms = parse_m_range(m_range);
    } else {
        ms = {need(g.m, "--m or --m-range")};
    }
    std::vector<Rational> grid;
    if (!p0_grid.empty()) {
        grid = parse_grid(p0_grid);
    } else if (g.p0) {
        grid = {parse_probability(*g.p0)};
    } else {
        for (int k = 1; k < 20; ++k) grid.push_back(Rational(k) / 20);
    }
    for (auto m : ms) {
        if (m < n) throw UsageError("sweep requires every m >= n");
    }
    const FieldSpec spec(g.q);
    const auto opts = analysis_options(g);

    const std::vector<std::string> header = {"q", "n", "m", "p0", "value", "value_float", "bkw_lower_bound",
                                             "rlnc_reference"};
    std::vector<std::vector<std::string>> rows;
    json records = json::array();
    for (auto m : ms) {
        const auto p = full_rank_prob(m, n, spec, opts);
        const Rational rlnc = rlnc_full_rank_prob(g.q, m, n);
        for (const auto& p0 : grid) {
            const Rational v = p.at(p0);
            Rational lower = 1;
            for (std::size_t i = 0; i < n; ++i) lower *= 1 - bkw_bound(i, m, spec).at(p0);
            rows.push_back({std::to_string(g.q), std::to_string(n), std::to_string(m), to_string(p0), to_string(v),
                            fmt_double(to_double(v)), fmt_double(to_double(lower)), fmt_double(to_double(rlnc))});
            records.push_back({{"q", g.q},
                               {"n", n},
                               {"m", m},
                               {"p0", to_string(p0)},
                               {"value", to_string(v)},
                               {"value_float", to_double(v)},
                               {"bkw_lower_bound", to_double(lower)},
                               {"rlnc_reference", to_double(rlnc)}});
        }
    }
    if (fmt == Format::json) {
        out << json{{"command", "sweep"}, {"rows", records}}.dump(2) << '\n';
    } else if (fmt == Format::csv) {
        print_csv(out, header, rows);
    } else {
        print_table(out, header, rows);
    }
}

// simulate -------------------------------------------------------------------

struct SimFlags {
    std::string config_path;
    std::optional<std::uint64_t> trials;
    std::optional<std::size_t> length;
    std::optional<std::string> mode;
    std::optional<std::size_t> sent;
    std::optional<std::string> eps;
    bool exclude_zero = false;
};

SimConfig build_sim_config(const Globals& g, const SimFlags& f, bool q_given) {
    SimConfig cfg;
    if (!f.config_path.empty()) {
        std::ifstream in(f.config_path);
        if (!in) throw UsageError("cannot open config " + f.config_path);
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ParseError(std::string("config: ") + e.what());
        }
        cfg = sim_config_from_json(j);
    }
    if (q_given) cfg.q = g.q;
    if (g.n) cfg.n = *g.n;
    if (g.m) cfg.m = *g.m;
    if (g.p0) cfg.p0 = parse_probability(*g.p0);
    if (g.seed) cfg.seed = *g.seed;
    if (f.trials) cfg.trials = *f.trials;
    if (f.length) cfg.length = *f.length;
    if (f.mode) cfg.mode = *f.mode == "stream" ? ReceptionMode::stream : ReceptionMode::fixed_m;
    if (f.sent) cfg.sent = *f.sent;
    if (f.eps) cfg.erasure = parse_probability(*f.eps);
    if (f.exclude_zero) cfg.include_zero_vectors = false;
    cfg.threads = g.threads;
    try {
        cfg.validate();
    } catch (const Error& e) {
        throw UsageError(e.what());
    }
    return cfg;
}

void cmd_simulate(const Globals& g, Format fmt, const SimFlags& flags, bool q_given, std::ostream& out) {
    const SimConfig cfg = build_sim_config(g, flags, q_given);
    const SimReport report = run_trials(cfg);

    json analysis = nullptr;
    if (cfg.mode == ReceptionMode::fixed_m && cfg.include_zero_vectors && cfg.m >= cfg.n) {
        try {
            const Rational exact = full_rank_prob_at(cfg.m, cfg.n, FieldSpec(cfg.q), cfg.p0, analysis_options(g));
            const double pe = to_double(exact);
            const double sigma = std::sqrt(pe * (1 - pe) / static_cast<double>(report.trials));
            json z = nullptr;
            if (sigma > 0) {
                z = (report.success_rate - pe) / sigma;
            } else if (report.success_rate == pe) {
                z = 0.0;
            }
            analysis = {{"value", to_string(exact)}, {"value_float", pe}, {"z", z}};
        } catch (const BudgetExceededError&) {
        }
    }

    if (fmt == Format::json) {
        out << json{{"command", "simulate"}, {"report", to_json(report)}, {"analysis", analysis}}.dump(2) << '\n';
    } else if (fmt == Format::csv) {
        out << sim_csv_header() << '\n' << sim_csv_row(report) << '\n';
    } else {
        const json r = to_json(report);
        out << "simulation over " << FieldSpec(cfg.q).name() << ", n = " << cfg.n << ", "
            << (cfg.mode == ReceptionMode::fixed_m ? "m = " + std::to_string(cfg.m)
                                                   : "N = " + std::to_string(cfg.sent) + ", eps = " +
                                                         to_string(cfg.erasure))
            << ", p0 = " << to_string(cfg.p0) << '\n';
        std::vector<std::vector<std::string>> rows;
        for (const char* key : {"trials", "successes", "success_rate", "stderr"}) rows.push_back({key, r[key].dump()});
        for (const char* key : {"mean", "p50", "p90", "p99", "max"}) {
            rows.push_back({std::string("transmissions_") + key, r["transmissions"][key].dump()});
        }
        for (const char* key : {"rank_audits", "rank_audit_failures", "roundtrip_failures", "zero_vectors_sent"}) {
            rows.push_back({key, r[key].dump()});
        }
        if (!analysis.is_null()) {
            rows.push_back({"exact", analysis["value"].get<std::string>()});
            rows.push_back({"exact_float", analysis["value_float"].dump()});
            rows.push_back({"z", analysis["z"].dump()});
        }
        print_table(out, {"field", "value"}, rows);
    }
}

// oracle ---------------------------------------------------------------------

bool cmd_oracle(const Globals& g, Format fmt, std::ostream& out) {
    const std::size_t n = need(g.n, "--n");
    const std::size_t m = need(g.m, "--m");
    if (m < n) throw UsageError("oracle requires m >= n");
    const FieldSpec spec(g.q);
    const auto census = oracle_full_rank_poly(m, n, spec, oracle_budget(g));
    const auto analysis = full_rank_prob(m, n, spec, analysis_options(g));
    const bool match = analysis.expr == RationalFn(census.poly);

    if (fmt == Format::json) {
        out << json{{"command", "oracle"},
                    {"q", g.q},
                    {"n", n},
                    {"m", m},
                    {"census", census.by_weight},
                    {"oracle", {{"expr", to_json(RationalFn(census.poly))}, {"text", to_string(census.poly)}}},
                    {"analysis", expr_json(analysis.expr)},
                    {"match", match}}
                   .dump(2)
            << '\n';
    } else if (fmt == Format::csv) {
        std::vector<std::vector<std::string>> rows;
        for (std::size_t w = 0; w < census.by_weight.size(); ++w) {
            rows.push_back({std::to_string(g.q), std::to_string(n), std::to_string(m), std::to_string(w),
                            std::to_string(census.by_weight[w])});
        }
        print_csv(out, {"q", "n", "m", "weight", "count"}, rows);
    } else {
        out << "full-rank " << m << " x " << n << " matrices over " << spec.name() << " by weight\n";
        out << format_census_table(census);
        out << "oracle    " << to_string(census.poly) << '\n';
        out << "analysis  " << to_string(analysis.expr) << '\n';
        out << (match ? "MATCH" : "MISMATCH") << '\n';
    }
    return match;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and simulated decoding probabilities for sparse random linear network codes", "srlnc"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    auto* q_opt = app.add_option("--q", g.q, "field order (prime < 65536 or 2^k, k <= 8)");
    app.add_option("--n", g.n, "generation size / columns");
    app.add_option("--m", g.m, "received packets / rows");
    app.add_option("--i", g.i, "span dimension for pni");
    app.add_option("--p0", g.p0, "sparsity as 7/10, 0.7 or 7e-1");
    app.add_flag("--symbolic", g.symbolic, "print the rational function in p0");
    app.add_option("--budget", g.budget, "enumeration budget (matrices)");
    app.add_option("--threads", g.threads, "worker threads, 0 for all cores");
    app.add_option("--out", g.out_path, "write output to this file");
    app.add_option("--format", g.format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
    app.add_option("--seed", g.seed, "simulation seed");

    auto* exact = app.add_subcommand("exact", "full column rank probability of an m x n matrix");
    auto* pni = app.add_subcommand("pni", "probability p(i, n) that a vector falls in an i-dim span");
    bool with_bound = false;
    pni->add_flag("--bound", with_bound, "also print the max(p0, (1-p0)/(q-1))^(n-i) bound");
    auto* rankdist = app.add_subcommand("rankdist", "rank distribution at a point");
    std::string form = "nested";
    rankdist->add_option("--form", form, "nested or pf")->check(CLI::IsMember({"nested", "pf"}));
    auto* sweep = app.add_subcommand("sweep", "full-rank probability over m and p0 grids");
    std::string m_range;
    std::string p0_grid;
    sweep->add_option("--m-range", m_range, "lo:hi or a comma list");
    sweep->add_option("--p0-grid", p0_grid, "comma list of probabilities (default k/20)");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo encoder/decoder run");
    SimFlags sim;
    simulate->add_option("--config", sim.config_path, "JSON config file");
    simulate->add_option("--trials", sim.trials, "number of trials");
    simulate->add_option("--length", sim.length, "payload symbols per packet");
    simulate->add_option("--mode", sim.mode, "fixed_m or stream")->check(CLI::IsMember({"fixed_m", "stream"}));
    simulate->add_option("--sent", sim.sent, "packets sent in stream mode");
    simulate->add_option("--eps", sim.eps, "erasure probability in stream mode");
    simulate->add_flag("--exclude-zero", sim.exclude_zero, "redraw all-zero coding vectors");
    auto* oracle = app.add_subcommand("oracle", "brute-force census and comparison");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    if (g.threads == 0) g.threads = std::max(1u, std::thread::hardware_concurrency());

    std::ofstream file;
    std::ostream* sink = &out;
    if (!g.out_path.empty()) {
        file.open(g.out_path);
        if (!file) {
            err << "error: cannot write " << g.out_path << '\n';
            return kExitUsage;
        }
        sink = &file;
    }
    const Format fmt = parse_format(g.format);

    // buffer so that a failing command leaves no partial output
    std::ostringstream buf;
    int status = kExitOk;
    try {
        if (exact->parsed()) {
            cmd_exact(g, fmt, buf);
        } else if (pni->parsed()) {
            cmd_pni(g, fmt, with_bound, buf);
        } else if (rankdist->parsed()) {
            cmd_rankdist(g, fmt, form, buf);
        } else if (sweep->parsed()) {
            cmd_sweep(g, fmt, m_range, p0_grid, buf);
        } else if (simulate->parsed()) {
            cmd_simulate(g, fmt, sim, q_opt->count() > 0, buf);
        } else if (oracle->parsed()) {
            if (!cmd_oracle(g, fmt, buf)) status = kExitFailure;
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExceededError& e) {
        err << "budget exceeded: " << e.what() << '\n';
        return kExitBudget;
    } catch (const DegenerateError& e) {
        err << "degenerate input: " << e.what() << '\n';
        return kExitDegenerate;
    } catch (const FieldError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DimensionError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    *sink << buf.str();
    sink->flush();
    return status;
}

}  // namespace srlnc::cli
