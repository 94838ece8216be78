#pragma once

#include <algorithm>
#include <cstdio>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "apiwatt/apimetric.hpp"
#include "apiwatt/callgraph.hpp"
#include "apiwatt/config.hpp"
#include "apiwatt/detail/parallel.hpp"
#include "apiwatt/detail/text.hpp"
#include "apiwatt/energy.hpp"
#include "apiwatt/error.hpp"
#include "apiwatt/evolution.hpp"
#include "apiwatt/synth.hpp"
#include "apiwatt/trace.hpp"

namespace apiwatt {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Revision layout: <revision>/traces/<test>.<sample>.trace paired with
// <revision>/power/<test>.<sample>.power.

struct ExecutionFiles {
    std::string test_name;
    std::uint32_t sample_index = 0;
    fs::path trace;
    fs::path power;
};

struct RevisionInput {
    std::string label;
    fs::path dir;
    std::vector<ExecutionFiles> executions;  // sorted by (test, sample)
};

namespace detail {

/// Splits `<test>.<sample><ext>` into its key; nullopt when it does not fit.
inline std::optional<std::pair<std::string, std::uint32_t>> execution_key(const std::string& file, std::string_view ext) {
    if (!file.ends_with(ext)) return std::nullopt;
    const std::string_view stem = std::string_view(file).substr(0, file.size() - ext.size());
    const auto dot = stem.rfind('.');
    if (dot == std::string_view::npos) return std::nullopt;
    const auto sample = parse_unsigned<std::uint32_t>(stem.substr(dot + 1));
    if (!sample || dot == 0) return std::nullopt;
    return std::pair{std::string(stem.substr(0, dot)), *sample};
}

inline std::map<std::pair<std::string, std::uint32_t>, fs::path> scan_files(const fs::path& dir, std::string_view ext) {
    if (!fs::is_directory(dir)) throw LayoutError("missing directory " + dir.string());
    std::map<std::pair<std::string, std::uint32_t>, fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        const auto name = entry.path().filename().string();
        if (!name.ends_with(ext)) continue;
        const auto key = execution_key(name, ext);
        if (!key) throw LayoutError(entry.path().string() + ": file name is not <test>.<sample>" + std::string(ext));
        out.emplace(*key, entry.path());
    }
    return out;
}

}  // namespace detail

inline RevisionInput scan_revision(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw LayoutError("revision directory " + dir.string() + " does not exist");
    RevisionInput rev;
    rev.dir = dir;
    rev.label = fs::absolute(dir).lexically_normal().filename().string();
    if (rev.label.empty()) rev.label = fs::absolute(dir).lexically_normal().parent_path().filename().string();
    const auto traces = detail::scan_files(dir / "traces", ".trace");
    const auto power = detail::scan_files(dir / "power", ".power");
    if (traces.empty()) throw LayoutError("revision " + rev.label + " has no trace files");
    for (const auto& [key, path] : traces) {
        const auto it = power.find(key);
        if (it == power.end())
            throw LayoutError("revision " + rev.label + ": test " + key.first + " sample " + std::to_string(key.second) +
                              " has no power file");
        rev.executions.push_back({key.first, key.second, path, it->second});
    }
    for (const auto& [key, path] : power)
        if (!traces.contains(key))
            throw LayoutError("revision " + rev.label + ": test " + key.first + " sample " + std::to_string(key.second) +
                              " has no trace file");
    return rev;
}

/// Revision subdirectories of `root`: every child directory holding traces/.
inline std::vector<fs::path> find_revisions(const fs::path& root) {
    if (!fs::is_directory(root)) throw LayoutError("root directory " + root.string() + " does not exist");
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(root))
        if (entry.is_directory() && fs::is_directory(entry.path() / "traces")) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Per-execution analysis.

struct MethodRow {
    MethodEnergyRecord energy;
    std::int64_t uapi = 0;             // 0 inside pruned API subtrees
    std::optional<std::string> api;    // classifier label of an API call
};

struct ExecutionAnalysis {
    ExecutionRecord record;
    std::vector<MethodRow> methods;  // ordered by start time
};

inline ExecutionAnalysis analyze_execution(const TestTrace& trace, const PowerProfile& power,
                                           const AnalysisConfig& config, const ApiClassifier& classifier) {
    const auto tree = build_call_trees(trace);
    const auto profile = uapi(tree, classifier);
    const auto intervals = method_intervals(tree);
    const double offset = config.offset_for(trace.test_name);

    ExecutionAnalysis out;
    const auto energy = test_energy(tree, power, {}, offset);
    out.record = {trace.test_name, trace.sample_index, energy.energy_mj, energy.avg_power_mw, energy.duration_ms,
                  profile.root_uapi, profile.total_api_interactions, 0.0};

    auto records = attribute(intervals, power, offset);
    out.methods.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        MethodRow row{std::move(records[i]), profile.node_values[intervals[i].preorder], std::nullopt};
        // Unpruned API calls are exactly the classified nodes with U = 1.
        if (const auto* rule = classifier.match(row.energy.method); rule && row.uapi > 0) row.api = rule->label;
        out.methods.push_back(std::move(row));
    }
    return out;
}

struct RevisionAnalysis {
    std::string label;
    std::vector<ExecutionAnalysis> executions;  // sorted by (test, sample)

    RevisionDataset dataset() const {
        RevisionDataset d{label, {}};
        for (const auto& e : executions) d.records.push_back(e.record);
        return d;
    }
};

/// Parses and analyses every execution of a revision on up to `jobs` threads.
/// Errors name the offending file.
inline RevisionAnalysis analyze_revision(const RevisionInput& input, const AnalysisConfig& config, std::size_t jobs = 1) {
    const auto classifier = config.classifier();
    RevisionAnalysis out;
    out.label = input.label;
    out.executions.resize(input.executions.size());
    detail::parallel_for(input.executions.size(), jobs, [&](std::size_t i) {
        const auto& ex = input.executions[i];
        TestTrace trace;
        PowerProfile power;
        try {
            trace = parse_trace(detail::read_file(ex.trace));
        } catch (const ParseError& e) {
            throw e.in_file(ex.trace.string());
        }
        try {
            power = parse_power(detail::read_file(ex.power));
        } catch (const ParseError& e) {
            throw e.in_file(ex.power.string());
        }
        if (trace.test_name != ex.test_name || trace.sample_index != ex.sample_index)
            throw ParseError(ParseError::Kind::Value, 1,
                             "header names " + trace.test_name + " #" + std::to_string(trace.sample_index))
                .in_file(ex.trace.string());
        if (power.test_name != ex.test_name || power.sample_index != ex.sample_index)
            throw ParseError(ParseError::Kind::Value, 1,
                             "header names " + power.test_name + " #" + std::to_string(power.sample_index))
                .in_file(ex.power.string());
        try {
            out.executions[i] = analyze_execution(trace, power, config, classifier);
        } catch (const RangeError& e) {
            throw RangeError(ex.trace.string() + ": " + e.what());
        }
    });
    std::vector<RevisionDataset> one{out.dataset()};
    assign_ruapi(one, config.ruapi_scope);
    for (std::size_t i = 0; i < out.executions.size(); ++i) out.executions[i].record.ruapi = one[0].records[i].ruapi;
    return out;
}

// ---------------------------------------------------------------------------
// Line-delimited records.

inline std::string method_jsonl(const RevisionAnalysis& rev) {
    std::string out;
    for (const auto& e : rev.executions) {
        for (const auto& m : e.methods) {
            nlohmann::ordered_json j;
            j["test"] = e.record.test_name;
            j["sample"] = e.record.sample_index;
            j["method"] = m.energy.method.full_name();
            j["thread"] = m.energy.thread;
            j["depth"] = m.energy.depth;
            j["start_ns"] = m.energy.t_start_ns;
            j["duration_ns"] = m.energy.duration_ns;
            j["energy_mj_inclusive"] = m.energy.energy_mj_inclusive;
            j["energy_mj_exclusive"] = m.energy.energy_mj_exclusive;
            j["avg_power_mw"] = m.energy.avg_power_mw;
            j["uapi"] = m.uapi;
            j["api"] = m.api ? nlohmann::ordered_json(*m.api) : nlohmann::ordered_json(nullptr);
            out += j.dump();
            out += '\n';
        }
    }
    return out;
}

inline nlohmann::ordered_json to_json(const ExecutionRecord& r) {
    return {{"test", r.test_name},         {"sample", r.sample_index},
            {"energy_mj", r.energy_mj},    {"avg_power_mw", r.avg_power_mw},
            {"duration_ms", r.duration_ms}, {"uapi", r.uapi},
            {"api_interactions", r.api_interactions}, {"ruapi", r.ruapi}};
}

inline std::string execution_jsonl(const RevisionAnalysis& rev) {
    std::string out;
    for (const auto& e : rev.executions) {
        out += to_json(e.record).dump();
        out += '\n';
    }
    return out;
}

inline std::vector<ExecutionRecord> parse_execution_jsonl(std::string_view text) {
    std::vector<ExecutionRecord> out;
    detail::LineReader reader(text);
    std::string_view line;
    while (reader.next(line)) {
        if (line.empty()) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            out.push_back({j.at("test").get<std::string>(), j.at("sample").get<std::uint32_t>(),
                           j.at("energy_mj").get<double>(), j.at("avg_power_mw").get<double>(),
                           j.at("duration_ms").get<double>(), j.at("uapi").get<std::int64_t>(),
                           j.at("api_interactions").get<std::int64_t>(), j.at("ruapi").get<double>()});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(ParseError::Kind::Malformed, reader.line_number(), e.what());
        }
    }
    return out;
}

inline constexpr std::string_view kMethodsSuffix = ".methods.jsonl";
inline constexpr std::string_view kExecutionsSuffix = ".executions.jsonl";
inline constexpr std::string_view kReportName = "report.json";
inline constexpr std::string_view kSummaryName = "summary.csv";

// ---------------------------------------------------------------------------
// Commands. Each returns its process exit code; failures are thrown as the
// typed errors above and mapped to codes by the front end.

struct AnalyzeResult {
    std::string label;
    std::size_t executions = 0;
    std::size_t method_records = 0;
};

inline AnalyzeResult cmd_analyze(const fs::path& revision_dir, const fs::path& out_dir, const AnalysisConfig& config,
                                 std::size_t jobs = 1) {
    const auto input = scan_revision(revision_dir);
    const auto rev = analyze_revision(input, config, jobs);
    AnalyzeResult res{rev.label, rev.executions.size(), 0};
    for (const auto& e : rev.executions) res.method_records += e.methods.size();
    detail::write_file(out_dir / (rev.label + std::string(kMethodsSuffix)), method_jsonl(rev));
    detail::write_file(out_dir / (rev.label + std::string(kExecutionsSuffix)), execution_jsonl(rev));
    return res;
}

/// Analyses every revision under `root`, compares them and writes report.json,
/// pairs_<metric>.csv, proxy.csv and summary.csv into `out_dir`.
inline ComparisonReport cmd_evolve(const fs::path& root, const fs::path& out_dir, const AnalysisConfig& config,
                                   std::size_t jobs = 1) {
    const auto dirs = find_revisions(root);
    if (dirs.size() < 2)
        throw LayoutError(root.string() + " holds " + std::to_string(dirs.size()) + " revision director" +
                          (dirs.size() == 1 ? "y" : "ies") + " with a traces/ folder; at least 2 are needed");
    std::vector<RevisionDataset> datasets;
    for (const auto& d : dirs) datasets.push_back(analyze_revision(scan_revision(d), config, jobs).dataset());
    const auto report = compare(std::move(datasets), config.compare_options());
    detail::write_file(out_dir / kReportName, to_json(report).dump(2) + "\n");
    for (const auto m : kMetrics)
        detail::write_file(out_dir / ("pairs_" + std::string(to_string(m)) + ".csv"), pairs_csv(report, m));
    detail::write_file(out_dir / "proxy.csv", proxy_csv(report));
    detail::write_file(out_dir / kSummaryName, summary_csv(report.summaries));
    return report;
}

struct ReportOutput {
    std::vector<RevisionSummary> summaries;
    std::optional<ComparisonReport> report;  // absent when built from analyze outputs only
    std::string csv;
    std::string text;
};

namespace detail {

inline std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

// Six significant digits for the text table; the CSV keeps full precision.
inline std::string short_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string summary_table(const ReportOutput& r) {
    std::size_t w = 8;
    for (const auto& s : r.summaries) w = std::max(w, s.revision.size());
    std::string out = pad("revision", w + 2) + pad("tests", 7) + pad("mean_energy_mj", 18) + pad("mean_power_mw", 18) +
                      "sum_ruapi\n";
    for (const auto& s : r.summaries)
        out += pad(s.revision, w + 2) + pad(std::to_string(s.n_tests), 7) + pad(short_num(s.mean_energy_mj), 18) +
               pad(short_num(s.mean_power_mw), 18) + short_num(s.sum_ruapi) + "\n";
    if (!r.report) {
        out += r.summaries.size() < 2 ? "\nno comparisons: a single revision was analysed\n"
                                      : "\nno comparison report found; run evolve for pairwise results\n";
        return out;
    }
    const auto& rep = *r.report;
    out += "\nalpha " + format_double(rep.alpha) + ", " + std::to_string(rep.executions) + " executions, " +
           std::to_string(rep.aligned_tests.size()) + " aligned tests\n";
    for (const auto m : kMetrics) {
        const auto& a = rep.metric(m);
        std::size_t sig = 0;
        for (const auto& p : a.pairs) sig += p.significant;
        out += pad(to_string(m), 8) + "ANOVA F=" + (std::isfinite(a.anova.f) ? short_num(a.anova.f) : "inf") +
               " p=" + short_num(a.anova.p) + " (" + stats::to_string(a.anova.status) + "), " +
               std::to_string(sig) + "/" + std::to_string(a.pairs.size()) + " pairs significant\n";
    }
    auto score = [](const char* name, const ProxyScore& s) {
        return std::string("proxy vs ") + name + ": accuracy " + short_num(s.accuracy) + ", F1 " +
               (s.f1 ? short_num(*s.f1) : std::string("n/a")) + "\n";
    };
    out += score("energy", rep.proxy_vs_energy);
    out += score("power", rep.proxy_vs_power);
    return out;
}

}  // namespace detail

/// Builds the plot CSV and text summary from evolve outputs in `dir`, falling
/// back to `<label>.executions.jsonl` files written by analyze.
inline ReportOutput build_report(const fs::path& dir) {
    if (!fs::is_directory(dir)) throw LayoutError("report directory " + dir.string() + " does not exist");
    ReportOutput out;
    const auto report_path = dir / kReportName;
    if (fs::is_regular_file(report_path)) {
        try {
            out.report = report_from_json(nlohmann::ordered_json::parse(detail::read_file(report_path)));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(ParseError::Kind::Malformed, 0, e.what()).in_file(report_path.string());
        } catch (const ParseError& e) {
            throw e.in_file(report_path.string());
        }
        out.summaries = out.report->summaries;
    } else {
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(dir))
            if (entry.is_regular_file() && entry.path().filename().string().ends_with(kExecutionsSuffix))
                files.push_back(entry.path());
        if (files.empty()) throw LayoutError(dir.string() + " holds neither report.json nor *.executions.jsonl");
        std::vector<RevisionDataset> revs;
        for (const auto& f : files) {
            const auto name = f.filename().string();
            RevisionDataset d{name.substr(0, name.size() - kExecutionsSuffix.size()), {}};
            try {
                d.records = parse_execution_jsonl(detail::read_file(f));
            } catch (const ParseError& e) {
                throw e.in_file(f.string());
            }
            revs.push_back(std::move(d));
        }
        std::sort(revs.begin(), revs.end(), [](const auto& a, const auto& b) { return version_less(a.label, b.label); });
        out.summaries = revision_summaries(revs);
    }
    out.csv = summary_csv(out.summaries);
    out.text = detail::summary_table(out);
    return out;
}

inline ReportOutput cmd_report(const fs::path& dir, const fs::path& out_dir) {
    auto r = build_report(dir);
    detail::write_file(out_dir / kSummaryName, r.csv);
    detail::write_file(out_dir / "summary.txt", r.text);
    return r;
}

inline synth::GroundTruth cmd_synth(const fs::path& spec_path, const fs::path& out_dir, std::size_t jobs = 1) {
    return synth::generate(synth::parse_synth_spec(detail::read_file(spec_path)), out_dir, jobs);
}

}  // namespace apiwatt
