// Copyright 2026 The dqsd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "dqsd/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "dqsd/certify.h"
#include "dqsd/guessing.h"
#include "dqsd/pauli.h"

namespace dqsd::cli {

namespace {

using json = nlohmann::ordered_json;

std::string trim(const std::string &s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return "";
    }
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_double(const std::string &value, const std::string &where) {
    try {
        std::size_t used = 0;
        double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v)) {
            throw std::invalid_argument(value);
        }
        return v;
    } catch (const std::logic_error &) {
        throw ConfigError(where, "expected a number, got '" + value + "'");
    }
}

std::uint64_t parse_uint(const std::string &value, const std::string &where) {
    if (value.empty() || value.find_first_not_of("0123456789") != std::string::npos) {
        throw ConfigError(where, "expected a nonnegative integer, got '" + value + "'");
    }
    try {
        return std::stoull(value);
    } catch (const std::logic_error &) {
        throw ConfigError(where, "integer out of range: '" + value + "'");
    }
}

bool parse_bool(const std::string &value, const std::string &where) {
    if (value == "true" || value == "1" || value == "yes") {
        return true;
    }
    if (value == "false" || value == "0" || value == "no") {
        return false;
    }
    throw ConfigError(where, "expected true or false, got '" + value + "'");
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::map<std::string, std::string> parse_key_values(const std::string &text, const std::string &source) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(number), "expected 'key = value'");
        }
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

std::string read_file(const std::string &path, const std::string &where) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(where, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<int> parse_signs(const std::string &value, std::size_t count, const std::string &where) {
    auto parts = split(value, ',');
    if (parts.size() != count) {
        throw ConfigError(where, "expected " + std::to_string(count) + " comma-separated values");
    }
    std::vector<int> out;
    for (const auto &p : parts) {
        if (p != "1" && p != "+1" && p != "-1") {
            throw ConfigError(where, "outcomes must be +1 or -1, got '" + p + "'");
        }
        out.push_back(p == "-1" ? -1 : 1);
    }
    return out;
}

std::vector<Complex> named_ket(const std::string &symbols, const std::string &where) {
    const double r = 1 / std::sqrt(2.0);
    std::vector<Complex> ket{1};
    for (char c : symbols) {
        std::array<Complex, 2> f{};
        switch (c) {
            case '0':
                f = {1, 0};
                break;
            case '1':
                f = {0, 1};
                break;
            case '+':
                f = {r, r};
                break;
            case '-':
                f = {r, -r};
                break;
            case 'R':
                f = {r, Complex(0, r)};
                break;
            case 'L':
                f = {r, Complex(0, -r)};
                break;
            default:
                throw ConfigError(where, std::string("unknown state symbol '") + c + "'");
        }
        std::vector<Complex> next;
        for (auto v : ket) {
            next.push_back(v * f[0]);
            next.push_back(v * f[1]);
        }
        ket = std::move(next);
    }
    return ket;
}

/// Emits records as CSV (header from the first record) or as JSON lines.
class RecordWriter {
   public:
    RecordWriter(std::ostream &out, std::string format) : out_(out), format_(std::move(format)) {}

    void write(const json &record) {
        if (format_ == "jsonl") {
            out_ << record.dump() << '\n';
            return;
        }
        if (!header_written_) {
            bool first = true;
            for (const auto &item : record.items()) {
                out_ << (first ? "" : ",") << item.key();
                first = false;
            }
            out_ << '\n';
            header_written_ = true;
        }
        bool first = true;
        for (const auto &item : record.items()) {
            out_ << (first ? "" : ",") << csv_value(item.value());
            first = false;
        }
        out_ << '\n';
    }

   private:
    static std::string csv_value(const json &v) {
        if (v.is_number_float()) {
            return format_double(v.get<double>());
        }
        if (v.is_string()) {
            return v.get<std::string>();
        }
        return v.dump();
    }

    std::ostream &out_;
    std::string format_;
    bool header_written_ = false;
};

/// The output file, or `fallback` when no path is configured.
class Sink {
   public:
    Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) {
                throw ConfigError("output", "cannot open '" + path + "' for writing");
            }
            stream_ = &file_;
        }
    }
    std::ostream &stream() { return *stream_; }

   private:
    std::ofstream file_;
    std::ostream *stream_;
};

std::string summary_path(const std::string &output) {
    std::filesystem::path p(output);
    return (p.parent_path() / (p.stem().string() + "_summary" + p.extension().string())).string();
}

json provenance(const RunConfig &config) {
    return json{{"config_hash", config_hash(config)}, {"seed", config.seed}};
}

void append(json &record, const json &extra) {
    for (const auto &item : extra.items()) {
        record[item.key()] = item.value();
    }
}

std::size_t qubits_of(const Ensemble &ensemble) {
    return ensemble.front().state.num_qubits();
}

// Seeds for the independent random streams of one run.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
    return derive_input_seed(derive_input_seed(seed, stream), index);
}

enum Stream : std::uint64_t { kCertStream = 1, kProbeStream = 2, kTruthStream = 3, kDataStream = 4 };

CertificationReport run_certification(const RunConfig &config, const DeviceStrategy &strategy, std::size_t cell,
                                      std::optional<CountsTable> *counts_out = nullptr) {
    CorrelationTable p1 = p1_exact(strategy);
    if (!config.shots) {
        return certify(p1, config.tolerance.value_or(kExactCertificationTolerance));
    }
    CountsTable counts = sample(p1, *config.shots, stream_seed(config.seed, kCertStream, cell));
    if (counts_out) {
        *counts_out = counts;
    }
    return config.tolerance ? certify_with_tolerance(counts, *config.tolerance) : certify(counts);
}

json report_record(const RunConfig &config, const CertificationReport &r) {
    json rec{{"command", "certify"},
             {"strategy", config.strategy},
             {"shots", r.shots_string()},
             {"tolerance", r.tolerance},
             {"beta", r.beta},
             {"gamma_0", r.gamma[0]},
             {"gamma_1", r.gamma[1]},
             {"gamma_2", r.gamma[2]},
             {"gamma_3", r.gamma[3]},
             {"passed", r.passed}};
    append(rec, provenance(config));
    return rec;
}

void write_report(std::ostream &out, const std::string &format, const json &record) {
    if (format == "jsonl") {
        out << record.dump() << '\n';
        return;
    }
    out << "key,value\n";
    for (const auto &item : record.items()) {
        const auto &v = item.value();
        out << item.key() << ',' << (v.is_number_float() ? format_double(v.get<double>())
                                     : v.is_string()      ? v.get<std::string>()
                                                          : v.dump())
            << '\n';
    }
}

int run_certify(const RunConfig &config, std::ostream &log) {
    DeviceStrategy strategy = make_strategy(config.strategy);
    std::optional<CountsTable> counts;
    CertificationReport report = run_certification(config, strategy, 0, &counts);
    if (counts && !config.counts_output.empty()) {
        std::ofstream out(config.counts_output, std::ios::binary);
        write_counts_csv(out, *counts, config_hash(config));
    }
    Sink sink(config.output, log);
    write_report(sink.stream(), config.format, report_record(config, report));
    log << "certification " << (report.passed ? "passed" : "FAILED") << ": beta = " << format_double(report.beta)
        << " (target " << format_double(kMaxThreeChsh) << ", tolerance " << format_double(report.tolerance)
        << ")\n";
    return report.passed ? kOk : kCertificationFailed;
}

std::string format_used(const std::vector<std::vector<int>> &used) {
    std::string s;
    for (const auto &u : used) {
        s += (s.empty() ? "" : " ") + format_index_tuple(u);
    }
    return s;
}

int run_discriminate(const RunConfig &config, std::ostream &log) {
    DeviceStrategy strategy = make_strategy(config.strategy);
    Ensemble ensemble = parse_ensemble(config.ensemble);
    std::size_t n = qubits_of(ensemble);
    std::vector<DeviceStrategy> cells(n, strategy);
    NQubitNetwork{cells, ensemble.front().state}.validate();

    std::vector<CertificationReport> certs;
    for (std::size_t k = 0; k < n; k++) {
        certs.push_back(run_certification(config, strategy, k));
        if (!certs.back().passed) {
            log << "certification FAILED on cell " << k + 1 << " (beta = " << format_double(certs.back().beta)
                << "); refusing to discriminate\n";
            return kCertificationFailed;
        }
    }

    std::vector<std::optional<MdiProbeResult>> probes(n);
    if (config.mdi_probe) {
        for (std::size_t k = 0; k < n; k++) {
            probes[k] = mdi_probe(strategy, config.shots, stream_seed(config.seed, kProbeStream, k));
            log << "probe on cell " << k + 1 << ": sign " << probes[k]->sign << '\n';
        }
    }

    std::vector<CorrelationTable> tables;
    for (const auto &member : ensemble) {
        tables.push_back(n == 1 ? p2_exact(strategy, member.state)
                                : p2_exact_nqubit(NQubitNetwork{cells, member.state}));
    }

    Sink sink(config.output, log);
    RecordWriter writer(sink.stream(), config.format);
    std::uint64_t correct = 0, refused = 0;
    bool mdi_required = false;
    for (std::uint64_t t = 0; t < config.trials; t++) {
        std::mt19937_64 rng(stream_seed(config.seed, kTruthStream, t));
        double u = std::uniform_real_distribution<double>(0, 1)(rng);
        std::size_t truth = 0;
        for (double acc = ensemble[0].prior; truth + 1 < ensemble.size() && u >= acc;) {
            acc += ensemble[++truth].prior;
        }

        json rec{{"trial", t}, {"truth", truth}};
        std::optional<P2Table> p2;
        if (config.shots) {
            CountsTable counts = sample(tables[truth], *config.shots, stream_seed(config.seed, kDataStream, t));
            if (t == 0 && !config.counts_output.empty()) {
                std::ofstream out(config.counts_output, std::ios::binary);
                write_counts_csv(out, counts, config_hash(config));
            }
            p2 = extract_p2(counts);
        } else {
            p2 = extract_p2(tables[truth]);
        }
        try {
            DiscriminationDecision d =
                n == 1 ? discriminate_single(*p2, ensemble, certs[0], probes[0])
                       : discriminate_nqubit(*p2, ensemble, certs, probes);
            correct += d.chosen_index == truth;
            append(rec, json{{"chosen", d.chosen_index},
                             {"correct", d.chosen_index == truth},
                             {"mode", to_string(d.mode)},
                             {"margin", d.margin},
                             {"standard_error", d.standard_error},
                             {"used", format_used(d.used_inputs)},
                             {"status", "ok"}});
        } catch (const MdiRequiredError &) {
            mdi_required = true;
            refused++;
            append(rec, json{{"chosen", ""}, {"correct", false}, {"mode", "MDI"}, {"margin", 0.0},
                             {"standard_error", 0.0}, {"used", ""}, {"status", "mdi-required"}});
        } catch (const InconclusiveError &) {
            refused++;
            append(rec, json{{"chosen", ""}, {"correct", false}, {"mode", ""}, {"margin", 0.0},
                             {"standard_error", 0.0}, {"used", ""}, {"status", "inconclusive"}});
        }
        append(rec, provenance(config));
        writer.write(rec);
    }
    log << "discriminate: " << correct << " of " << config.trials << " trials correct (accuracy "
        << format_double(static_cast<double>(correct) / static_cast<double>(config.trials)) << "), " << refused
        << " refused";
    if (mdi_required) {
        log << "; the ensemble needs the third Pauli correlation, rerun with --mdi-probe";
    }
    log << '\n';
    return refused ? kRefused : kOk;
}

int run_sweep(const RunConfig &config, std::ostream &log) {
    SweepResult result = sweep(SweepGrid::uniform(config.grid_step, config.grid_step));
    json prov = provenance(config);
    {
        Sink sink(config.output, log);
        RecordWriter writer(sink.stream(), config.format);
        for (const auto &p : result.heatmap) {
            json rec{{"q", p.q},         {"c1", p.c1},     {"d_sign1", p.d_sign1}, {"c2", p.c2},
                     {"d_sign2", p.d_sign2}, {"p_g1", p.p_g1}, {"p_g2", p.p_g2},     {"p_delta", p.p_delta}};
            append(rec, prov);
            writer.write(rec);
        }
    }
    if (!config.output.empty()) {
        std::ofstream out(summary_path(config.output), std::ios::binary);
        RecordWriter writer(out, config.format);
        for (std::size_t k = 0; k < result.grid.q.size(); k++) {
            json rec{{"q", result.grid.q[k]}, {"avg_p_delta", result.avg[k]}, {"max_p_delta", result.max[k]}};
            append(rec, prov);
            writer.write(rec);
        }
    }
    const auto &g = result.global_argmax;
    log << "sweep: max_q avg p_delta = " << format_double(result.max_avg) << " at q = "
        << format_double(result.max_avg_q) << "; global max p_delta = " << format_double(result.global_max)
        << " at q = " << format_double(g.q) << ", c1 = " << format_double(g.c1) << " (d " << (g.d_sign1 > 0 ? "+" : "-")
        << "), c2 = " << format_double(g.c2) << " (d " << (g.d_sign2 > 0 ? "+" : "-") << ")\n";
    return kOk;
}

int run_demo(const RunConfig &config, std::ostream &log) {
    Sink sink(config.output, log);
    std::ostream &out = sink.stream();
    DeviceStrategy strategy = make_strategy(config.strategy);
    out << "Step 1: devices share Phi^0 on both links (strategy: " << strategy.label << ")\n";
    CertificationReport cert = run_certification(config, strategy, 0);
    out << "Step 2: certification\n"
        << "  beta = " << format_double(cert.beta) << " (maximum " << format_double(kMaxThreeChsh) << ")\n";
    for (int b = 0; b < 4; b++) {
        out << "  gamma_" << b << " = " << format_double(cert.gamma[static_cast<std::size_t>(b)]) << '\n';
    }
    out << "  shots " << cert.shots_string() << ", tolerance " << format_double(cert.tolerance) << " -> "
        << (cert.passed ? "passed" : "FAILED") << '\n';
    if (!cert.passed) {
        out << "  nothing can be concluded from uncertified devices\n";
        return kCertificationFailed;
    }

    out << "Step 3: discrimination\n";
    auto show = [&](const std::string &label, const Ensemble &ens, bool allow_probe) {
        out << "  ensemble " << label << '\n';
        std::optional<MdiProbeResult> probe;
        if (requires_mdi(ens[0].state, ens[1].state)) {
            out << "    the members differ only in the third Pauli correlation\n";
            if (allow_probe) {
                probe = mdi_probe(strategy, config.shots, stream_seed(config.seed, kProbeStream, 0));
                out << "    trusted probe |R> resolves the sign of the third observable: " << probe->sign << '\n';
            }
        }
        for (std::size_t truth = 0; truth < ens.size(); truth++) {
            CorrelationTable table = p2_exact(strategy, ens[truth].state);
            P2Table p2 = config.shots ? extract_p2(sample(table, *config.shots,
                                                          stream_seed(config.seed, kDataStream, truth)))
                                      : extract_p2(table);
            try {
                auto d = discriminate_single(p2, ens, cert, probe);
                out << "    prepared member " << truth << " -> decided " << d.chosen_index << " (" << to_string(d.mode)
                    << ", inputs " << format_used(d.used_inputs) << ", margin " << format_double(d.margin) << ")\n";
            } catch (const MdiRequiredError &) {
                out << "    prepared member " << truth << " -> refused: trusted probe required\n";
            }
        }
    };
    show("{|0>, |+>}", parse_ensemble("0.5@0;0.5@+"), false);
    show("{|R>, |L>} without probe", parse_ensemble("0.5@R;0.5@L"), false);
    show("{|R>, |L>} with probe", parse_ensemble("0.5@R;0.5@L"), true);
    out << "config_hash " << config_hash(config) << " seed " << config.seed << '\n';
    return kOk;
}

}  // namespace

void set_field(RunConfig &config, const std::string &key, const std::string &raw, const std::string &where) {
    std::string value = trim(raw);
    std::string field = where.empty() ? key : where + ": " + key;
    if (key == "command") {
        if (value != "certify" && value != "discriminate" && value != "sweep" && value != "demo") {
            throw ConfigError(field, "must be certify, discriminate, sweep or demo");
        }
        config.command = value;
    } else if (key == "strategy") {
        config.strategy = value;
    } else if (key == "ensemble") {
        config.ensemble = value;
    } else if (key == "shots") {
        if (value == "exact") {
            config.shots.reset();
        } else {
            config.shots = parse_uint(value, field);
            if (*config.shots == 0) {
                throw ConfigError(field, "must be at least 1 or 'exact'");
            }
        }
    } else if (key == "seed") {
        config.seed = parse_uint(value, field);
    } else if (key == "tolerance") {
        if (value == "auto") {
            config.tolerance.reset();
        } else {
            config.tolerance = parse_double(value, field);
            if (*config.tolerance < 0) {
                throw ConfigError(field, "must be nonnegative");
            }
        }
    } else if (key == "grid_step") {
        config.grid_step = parse_double(value, field);
        if (!(config.grid_step > 0 && config.grid_step <= 1)) {
            throw ConfigError(field, "must lie in (0, 1]");
        }
    } else if (key == "output") {
        config.output = value;
    } else if (key == "format") {
        if (value != "csv" && value != "jsonl") {
            throw ConfigError(field, "must be csv or jsonl");
        }
        config.format = value;
    } else if (key == "trials") {
        config.trials = parse_uint(value, field);
        if (config.trials == 0) {
            throw ConfigError(field, "must be at least 1");
        }
    } else if (key == "mdi_probe") {
        config.mdi_probe = parse_bool(value, field);
    } else if (key == "counts_output") {
        config.counts_output = value;
    } else {
        throw ConfigError(field, "unknown key");
    }
}

void apply_config_text(RunConfig &config, const std::string &text, const std::string &source) {
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        number++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        std::string where = source + ":" + std::to_string(number);
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(where, "expected 'key = value'");
        }
        set_field(config, trim(line.substr(0, eq)), line.substr(eq + 1), where);
    }
}

void apply_config_file(RunConfig &config, const std::string &path) {
    apply_config_text(config, read_file(path, "config"), path);
}

void validate_config(const RunConfig &config) {
    if (config.command.empty()) {
        throw ConfigError("command", "no command given (certify, discriminate, sweep or demo)");
    }
    make_strategy(config.strategy);
    if (config.command == "discriminate") {
        parse_ensemble(config.ensemble);
    }
    if (config.command == "sweep") {
        SweepGrid::uniform(config.grid_step, config.grid_step);
    }
}

std::string canonical_config(const RunConfig &c) {
    std::map<std::string, std::string> kv{
        {"command", c.command},
        {"strategy", c.strategy},
        {"ensemble", c.ensemble},
        {"shots", c.shots ? std::to_string(*c.shots) : "exact"},
        {"seed", std::to_string(c.seed)},
        {"tolerance", c.tolerance ? format_double(*c.tolerance) : "auto"},
        {"grid_step", format_double(c.grid_step)},
        {"format", c.format},
        {"trials", std::to_string(c.trials)},
        {"mdi_probe", c.mdi_probe ? "true" : "false"},
    };
    std::string out;
    for (const auto &[k, v] : kv) {
        out += k + "=" + v + "\n";
    }
    return out;
}

std::string config_hash(const RunConfig &config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : canonical_config(config)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

DeviceStrategy make_strategy(const std::string &spec) {
    if (spec == "honest") {
        return honest_strategy();
    }
    if (spec == "conjugated") {
        return conjugated_strategy();
    }
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "werner") {
        double p = parse_double(arg, "strategy");
        if (!(p >= 0 && p <= 1)) {
            throw ConfigError("strategy", "Werner visibility must lie in [0, 1]");
        }
        return werner_strategy(p);
    }
    if (kind == "classical") {
        std::string where = "strategy: " + arg;
        auto kv = parse_key_values(read_file(arg, "strategy"), arg);
        ClassicalAssignment as;
        for (const auto &[key, value] : kv) {
            if (key == "alice") {
                auto s = parse_signs(value, 3, where + ": alice");
                std::copy(s.begin(), s.end(), as.alice.begin());
            } else if (key == "bob") {
                auto s = parse_signs(value, 6, where + ": bob");
                std::copy(s.begin(), s.end(), as.bob.begin());
            } else if (key == "charlie") {
                auto s = parse_signs(value, 2, where + ": charlie");
                std::copy(s.begin(), s.end(), as.charlie.begin());
            } else if (key == "bob_bell") {
                auto b = parse_uint(value, where + ": bob_bell");
                if (b > 3) {
                    throw ConfigError(where + ": bob_bell", "must be in 0..3");
                }
                as.bob_bell = static_cast<int>(b);
            } else {
                throw ConfigError(where + ": " + key, "unknown key");
            }
        }
        return classical_strategy(as);
    }
    throw ConfigError("strategy", "expected honest, conjugated, werner:P or classical:FILE, got '" + spec + "'");
}

Ensemble parse_ensemble(const std::string &spec) {
    Ensemble ensemble;
    auto members = split(spec, ';');
    for (std::size_t i = 0; i < members.size(); i++) {
        std::string where = "ensemble[" + std::to_string(i) + "]";
        auto at = members[i].find('@');
        if (at == std::string::npos) {
            throw ConfigError(where, "expected 'prior@state'");
        }
        double prior = parse_double(trim(members[i].substr(0, at)), where + ": prior");
        std::string state = trim(members[i].substr(at + 1));
        try {
            if (state.find(',') != std::string::npos) {
                auto angles = split(state, ',');
                if (angles.size() != 2) {
                    throw ConfigError(where, "expected 'omega,theta'");
                }
                PureStateParams params{parse_double(angles[0], where + ": omega"),
                                       parse_double(angles[1], where + ": theta")};
                ensemble.push_back({prior, params.state()});
            } else {
                if (state.empty()) {
                    throw ConfigError(where, "empty state");
                }
                ensemble.push_back({prior, DensityMatrix::from_ket(named_ket(state, where))});
            }
        } catch (const ConfigError &) {
            throw;
        } catch (const Error &e) {
            throw ConfigError(where, e.what());
        }
    }
    if (ensemble.empty()) {
        throw ConfigError("ensemble", "no members");
    }
    try {
        validate_ensemble(ensemble, qubits_of(ensemble));
    } catch (const Error &e) {
        throw ConfigError("ensemble", e.what());
    }
    return ensemble;
}

void write_counts_csv(std::ostream &out, const CountsTable &counts, const std::string &hash) {
    counts.validate();
    const TableShape &shape = counts.shape;
    for (const auto &p : shape.parties()) {
        out << "x_" << p.name << ',';
    }
    for (const auto &p : shape.parties()) {
        out << "a_" << p.name << ',';
    }
    out << "count,config_hash,seed\n";
    for (std::size_t i = 0; i < shape.num_inputs(); i++) {
        auto in = shape.input_tuple(i);
        for (std::size_t o = 0; o < shape.num_outcomes(i); o++) {
            for (int x : in) {
                out << x << ',';
            }
            for (int a : shape.outcome_tuple(i, o)) {
                out << a << ',';
            }
            out << counts.count(i, o) << ',' << hash << ',' << counts.seed << '\n';
        }
    }
}

CountsTable read_counts_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ArgumentError("counts CSV is empty");
    }
    auto header = split(line, ',');
    std::vector<std::string> names;
    for (const auto &h : header) {
        if (h.rfind("x_", 0) == 0) {
            names.push_back(h.substr(2));
        }
    }
    std::size_t k = names.size();
    if (k == 0 || header.size() < 2 * k + 1 || header[2 * k] != "count") {
        throw ArgumentError("counts CSV header must be x_..., a_..., count");
    }
    struct Row {
        std::vector<int> x, a;
        std::uint64_t count;
    };
    std::vector<Row> rows;
    std::uint64_t seed = 0;
    // Labels in order of first appearance, which is the writer's enumeration order.
    std::vector<std::vector<std::pair<int, std::vector<int>>>> alphabets(k);
    auto remember = [&](std::size_t party, int x, int a) {
        auto &inputs = alphabets[party];
        auto it = std::find_if(inputs.begin(), inputs.end(), [&](const auto &e) { return e.first == x; });
        if (it == inputs.end()) {
            inputs.push_back({x, {}});
            it = inputs.end() - 1;
        }
        if (std::find(it->second.begin(), it->second.end(), a) == it->second.end()) {
            it->second.push_back(a);
        }
    };
    while (std::getline(in, line)) {
        if (trim(line).empty()) {
            continue;
        }
        auto cells = split(line, ',');
        if (cells.size() < 2 * k + 1) {
            throw ArgumentError("counts CSV row has too few columns: " + line);
        }
        Row r;
        for (std::size_t j = 0; j < k; j++) {
            r.x.push_back(std::stoi(cells[j]));
            r.a.push_back(std::stoi(cells[k + j]));
            remember(j, r.x.back(), r.a.back());
        }
        r.count = std::stoull(cells[2 * k]);
        if (cells.size() > 2 * k + 2) {
            seed = std::stoull(cells[2 * k + 2]);
        }
        rows.push_back(std::move(r));
    }
    std::vector<PartyAlphabet> parties;
    for (std::size_t j = 0; j < k; j++) {
        PartyAlphabet p{names[j], {}, {}};
        for (const auto &[x, outs] : alphabets[j]) {
            p.inputs.push_back(x);
            p.outcomes.push_back(outs);
        }
        parties.push_back(std::move(p));
    }
    TableShape shape(std::move(parties));
    CountsTable counts{shape, std::vector<std::uint64_t>(shape.total_size(), 0),
                       std::vector<std::uint64_t>(shape.num_inputs(), 0), seed};
    for (const auto &r : rows) {
        std::size_t i = shape.input_index(r.x);
        std::size_t o = shape.outcome_index(i, r.a);
        counts.counts[shape.offset(i) + o] += r.count;
        counts.shots_per_input[i] += r.count;
    }
    return counts;
}

int run(const RunConfig &config, std::ostream &log) {
    try {
        validate_config(config);
        if (config.command == "certify") {
            return run_certify(config, log);
        }
        if (config.command == "discriminate") {
            return run_discriminate(config, log);
        }
        if (config.command == "sweep") {
            return run_sweep(config, log);
        }
        return run_demo(config, log);
    } catch (const ConfigError &e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const UncertifiedDevicesError &e) {
        log << "certification failed: " << e.what() << '\n';
        return kCertificationFailed;
    } catch (const MdiRequiredError &e) {
        log << "mdi-required: " << e.what() << '\n';
        return kRefused;
    } catch (const InconclusiveError &e) {
        log << "inconclusive: " << e.what() << '\n';
        return kRefused;
    } catch (const ResourceError &e) {
        log << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception &e) {
        log << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace dqsd::cli
