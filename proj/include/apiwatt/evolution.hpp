#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <future>
#include <iterator>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "json.hpp"

#include "apiwatt/apimetric.hpp"
#include "apiwatt/detail/text.hpp"
#include "apiwatt/energy.hpp"
#include "apiwatt/error.hpp"
#include "apiwatt/stats.hpp"

namespace apiwatt {

/// Ordering of dotted version labels: numeric components compare as numbers,
/// others as strings; a label sorts before its own extensions ("1.2" < "1.2.1").
inline bool version_less(std::string_view a, std::string_view b) {
    auto is_num = [](std::string_view s) {
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    auto strip = [](std::string_view s) {
        while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
        return s;
    };
    const auto ca = detail::split(a, '.');
    const auto cb = detail::split(b, '.');
    for (std::size_t i = 0; i < std::min(ca.size(), cb.size()); ++i) {
        if (is_num(ca[i]) && is_num(cb[i])) {
            const auto x = strip(ca[i]);
            const auto y = strip(cb[i]);
            if (x.size() != y.size()) return x.size() < y.size();
            if (x != y) return x < y;
        } else if (ca[i] != cb[i]) {
            return ca[i] < cb[i];
        }
    }
    if (ca.size() != cb.size()) return ca.size() < cb.size();
    return a < b;
}

/// One test execution (test, sample) of one revision.
struct ExecutionRecord {
    std::string test_name;
    std::uint32_t sample_index = 0;
    double energy_mj = 0.0;
    double avg_power_mw = 0.0;
    double duration_ms = 0.0;
    std::int64_t uapi = 0;
    std::int64_t api_interactions = 0;
    double ruapi = 0.0;  // filled by assign_ruapi()

    friend bool operator==(const ExecutionRecord&, const ExecutionRecord&) = default;
};

struct RevisionDataset {
    std::string label;
    std::vector<ExecutionRecord> records;
};

inline void check_unique_keys(const RevisionDataset& rev) {
    std::set<std::pair<std::string_view, std::uint32_t>> keys;
    for (const auto& r : rev.records)
        if (!keys.insert({r.test_name, r.sample_index}).second)
            throw InvariantError("revision " + rev.label + " holds duplicate execution " + r.test_name + " #" +
                                 std::to_string(r.sample_index));
}

inline std::set<std::string> test_names(const RevisionDataset& rev) {
    std::set<std::string> out;
    for (const auto& r : rev.records) out.insert(r.test_name);
    return out;
}

struct Alignment {
    std::vector<std::string> tests;                          // present in every revision, sorted
    std::map<std::string, std::vector<std::string>> excluded;  // per revision label
};

inline Alignment align_tests(std::span<const RevisionDataset> revisions) {
    if (revisions.size() < 2) throw InvariantError("alignment needs at least 2 revisions");
    std::set<std::string> common = test_names(revisions.front());
    for (std::size_t i = 1; i < revisions.size(); ++i) {
        const auto names = test_names(revisions[i]);
        std::set<std::string> next;
        std::set_intersection(common.begin(), common.end(), names.begin(), names.end(),
                              std::inserter(next, next.end()));
        common = std::move(next);
    }
    if (common.empty()) throw InvariantError("no test is present in every revision");
    Alignment out;
    out.tests.assign(common.begin(), common.end());
    for (const auto& rev : revisions) {
        auto& ex = out.excluded[rev.label];
        for (const auto& name : test_names(rev))
            if (!common.contains(name)) ex.push_back(name);
    }
    return out;
}

struct TopTests {
    std::vector<std::string> tests;  // ordered by descending mean energy
    bool truncated = false;          // fewer than k tests were available
};

/// The k tests with the highest mean energy in `revision`; ties go to the
/// lexicographically smaller name.
inline TopTests select_top_energy_tests(const RevisionDataset& revision, std::size_t k) {
    if (k < 1) throw InvariantError("top-k selection needs k >= 1");
    std::map<std::string, std::pair<double, std::size_t>> acc;
    for (const auto& r : revision.records) {
        auto& [sum, n] = acc[r.test_name];
        sum += r.energy_mj;
        ++n;
    }
    std::vector<std::pair<std::string, double>> ranked;
    for (const auto& [name, sn] : acc) ranked.emplace_back(name, sn.first / static_cast<double>(sn.second));
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    TopTests out;
    out.truncated = k > ranked.size();
    for (std::size_t i = 0; i < std::min(k, ranked.size()); ++i) out.tests.push_back(ranked[i].first);
    return out;
}

enum class RuapiScope {
    Study,     // N = all API interactions of every analysed execution of every revision
    Revision,  // N = API interactions of one revision's run of the test set (per sample index)
};

/// Fills ExecutionRecord::ruapi = U / (N + 1) for every record.
inline void assign_ruapi(std::span<RevisionDataset> revisions, RuapiScope scope) {
    if (scope == RuapiScope::Study) {
        std::int64_t n = 0;
        for (const auto& rev : revisions)
            for (const auto& r : rev.records) n += r.api_interactions;
        for (auto& rev : revisions)
            for (auto& r : rev.records) r.ruapi = ruapi(r.uapi, n).value;
        return;
    }
    for (auto& rev : revisions) {
        std::map<std::uint32_t, std::int64_t> per_run;
        for (const auto& r : rev.records) per_run[r.sample_index] += r.api_interactions;
        for (auto& r : rev.records) r.ruapi = ruapi(r.uapi, per_run[r.sample_index]).value;
    }
}

enum class Metric { Energy, Power, Ruapi };
inline constexpr std::array<Metric, 3> kMetrics = {Metric::Energy, Metric::Power, Metric::Ruapi};

inline const char* to_string(Metric m) {
    switch (m) {
        case Metric::Energy: return "energy";
        case Metric::Power: return "power";
        case Metric::Ruapi: return "ruapi";
    }
    return "energy";
}

inline double metric_value(const ExecutionRecord& r, Metric m) {
    switch (m) {
        case Metric::Energy: return r.energy_mj;
        case Metric::Power: return r.avg_power_mw;
        case Metric::Ruapi: return r.ruapi;
    }
    return 0.0;
}

enum class ObservationUnit { PerSample, PerTestMean };

struct PairSignificance {
    std::string a;
    std::string b;
    bool significant = false;
};

struct ProxyScore {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    std::size_t tn = 0;
    double accuracy = 0.0;
    std::optional<double> precision;
    std::optional<double> recall;
    std::optional<double> f1;  // absent when there is no positive case at all

    std::size_t total() const { return tp + fp + fn + tn; }

    friend bool operator==(const ProxyScore&, const ProxyScore&) = default;
};

/// Scores the proxy's "significant change" calls against the target's. Both
/// inputs must list the same revision pairs in the same order.
inline ProxyScore proxy_eval(std::span<const PairSignificance> proxy, std::span<const PairSignificance> target) {
    if (proxy.size() != target.size())
        throw InvariantError("proxy and target cover different pair sets (" + std::to_string(proxy.size()) + " vs " +
                             std::to_string(target.size()) + " pairs)");
    ProxyScore s;
    for (std::size_t i = 0; i < proxy.size(); ++i) {
        if (proxy[i].a != target[i].a || proxy[i].b != target[i].b)
            throw InvariantError("pair " + std::to_string(i) + " differs: (" + proxy[i].a + ", " + proxy[i].b +
                                 ") vs (" + target[i].a + ", " + target[i].b + ")");
        const bool p = proxy[i].significant;
        const bool t = target[i].significant;
        if (p && t) ++s.tp;
        else if (p) ++s.fp;
        else if (t) ++s.fn;
        else ++s.tn;
    }
    const auto d = [](std::size_t x) { return static_cast<double>(x); };
    s.accuracy = s.total() == 0 ? 0.0 : d(s.tp + s.tn) / d(s.total());
    if (s.tp + s.fp > 0) s.precision = d(s.tp) / d(s.tp + s.fp);
    if (s.tp + s.fn > 0) s.recall = d(s.tp) / d(s.tp + s.fn);
    if (s.tp + s.fp + s.fn > 0) s.f1 = 2.0 * d(s.tp) / (2.0 * d(s.tp) + d(s.fp) + d(s.fn));
    return s;
}

struct RevisionSummary {
    std::string revision;
    double mean_energy_mj = 0.0;
    double mean_power_mw = 0.0;
    double sum_ruapi = 0.0;
    std::size_t n_tests = 0;

    friend bool operator==(const RevisionSummary&, const RevisionSummary&) = default;
};

/// Per revision: means of the per-test sample means for energy and power, and
/// the sum over tests of the per-test mean rU_api. Ordered by version.
inline std::vector<RevisionSummary> revision_summaries(std::span<const RevisionDataset> revisions) {
    std::vector<RevisionSummary> out;
    for (const auto& rev : revisions) {
        struct Acc {
            double e = 0, p = 0, r = 0;
            std::size_t n = 0;
        };
        std::map<std::string, Acc> per_test;
        for (const auto& rec : rev.records) {
            auto& a = per_test[rec.test_name];
            a.e += rec.energy_mj;
            a.p += rec.avg_power_mw;
            a.r += rec.ruapi;
            ++a.n;
        }
        if (per_test.empty()) throw InvariantError("revision " + rev.label + " has no aligned tests");
        RevisionSummary s;
        s.revision = rev.label;
        for (const auto& [name, a] : per_test) {
            const double n = static_cast<double>(a.n);
            s.mean_energy_mj += a.e / n;
            s.mean_power_mw += a.p / n;
            s.sum_ruapi += a.r / n;
        }
        s.n_tests = per_test.size();
        s.mean_energy_mj /= static_cast<double>(s.n_tests);
        s.mean_power_mw /= static_cast<double>(s.n_tests);
        out.push_back(std::move(s));
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return version_less(a.revision, b.revision); });
    return out;
}

struct CompareOptions {
    double alpha = 0.05;
    ObservationUnit unit = ObservationUnit::PerSample;
    Aggregation aggregation = Aggregation::Mean;  // used by PerTestMean
    std::optional<std::size_t> top_k;             // selected in the earliest revision
    RuapiScope ruapi_scope = RuapiScope::Study;
};

struct MetricAnalysis {
    stats::AnovaResult anova;
    std::vector<stats::TukeyPair> pairs;  // indices into ComparisonReport::revisions

    friend bool operator==(const MetricAnalysis&, const MetricAnalysis&) = default;
};

struct ComparisonReport {
    std::vector<std::string> revisions;  // version order; group i of every analysis
    std::vector<std::string> aligned_tests;
    std::map<std::string, std::vector<std::string>> excluded_tests;
    std::optional<std::size_t> top_k;
    bool top_k_truncated = false;
    double alpha = 0.05;
    std::string observation_unit = "per_sample";
    std::string aggregation = "mean";
    std::string ruapi_scope = "study";
    std::size_t executions = 0;  // (revision, test, sample) records analysed
    std::vector<std::size_t> observations;  // per revision, per metric
    std::map<std::string, MetricAnalysis> metrics;  // keyed by to_string(Metric)
    ProxyScore proxy_vs_energy;
    ProxyScore proxy_vs_power;
    std::vector<RevisionSummary> summaries;

    const MetricAnalysis& metric(Metric m) const { return metrics.at(to_string(m)); }

    std::vector<PairSignificance> significance(Metric m) const {
        std::vector<PairSignificance> out;
        for (const auto& p : metric(m).pairs) out.push_back({revisions[p.group_a], revisions[p.group_b], p.significant});
        return out;
    }

    bool degenerate() const {
        return std::any_of(metrics.begin(), metrics.end(), [](const auto& kv) { return kv.second.anova.degenerate(); });
    }

    friend bool operator==(const ComparisonReport&, const ComparisonReport&) = default;
};

/// Aligns the revisions, runs one-way ANOVA plus Tukey HSD on energy, power
/// and rU_api, and scores rU_api significance as a proxy for the other two.
/// Input order does not matter: revisions are processed in version order.
inline ComparisonReport compare(std::vector<RevisionDataset> revisions, const CompareOptions& opt = {}) {
    if (revisions.size() < 2) throw InvariantError("comparison needs at least 2 revisions");
    if (!(opt.alpha > 0.0 && opt.alpha < 1.0)) throw InvariantError("alpha must lie in (0, 1)");
    std::sort(revisions.begin(), revisions.end(),
              [](const auto& a, const auto& b) { return version_less(a.label, b.label); });
    for (std::size_t i = 0; i < revisions.size(); ++i) {
        check_unique_keys(revisions[i]);
        if (i > 0 && revisions[i].label == revisions[i - 1].label)
            throw InvariantError("duplicate revision label " + revisions[i].label);
    }

    ComparisonReport rep;
    rep.alpha = opt.alpha;
    rep.observation_unit = opt.unit == ObservationUnit::PerSample ? "per_sample" : "per_test_mean";
    rep.aggregation = opt.aggregation == Aggregation::Mean ? "mean" : "median";
    rep.ruapi_scope = opt.ruapi_scope == RuapiScope::Study ? "study" : "revision";
    rep.top_k = opt.top_k;
    for (const auto& r : revisions) rep.revisions.push_back(r.label);

    std::set<std::string> wanted;
    if (opt.top_k) {
        auto top = select_top_energy_tests(revisions.front(), *opt.top_k);
        rep.top_k_truncated = top.truncated;
        wanted.insert(top.tests.begin(), top.tests.end());
    }
    auto alignment = align_tests(revisions);
    if (opt.top_k) {
        std::vector<std::string> kept;
        for (auto& t : alignment.tests) {
            if (wanted.contains(t)) kept.push_back(t);
            else
                for (auto& [label, ex] : alignment.excluded) ex.push_back(t);
        }
        if (kept.empty()) throw InvariantError("none of the top-" + std::to_string(*opt.top_k) + " tests is present in every revision");
        alignment.tests = std::move(kept);
        for (auto& [label, ex] : alignment.excluded) std::sort(ex.begin(), ex.end());
    }
    rep.aligned_tests = alignment.tests;
    rep.excluded_tests = alignment.excluded;

    const std::set<std::string> aligned(alignment.tests.begin(), alignment.tests.end());
    for (auto& rev : revisions) {
        std::erase_if(rev.records, [&](const auto& r) { return !aligned.contains(r.test_name); });
        std::sort(rev.records.begin(), rev.records.end(), [](const auto& a, const auto& b) {
            return std::tie(a.test_name, a.sample_index) < std::tie(b.test_name, b.sample_index);
        });
        rep.executions += rev.records.size();
    }
    assign_ruapi(revisions, opt.ruapi_scope);

    auto observations = [&](Metric m) {
        std::vector<std::vector<double>> groups;
        for (const auto& rev : revisions) {
            std::vector<double> g;
            if (opt.unit == ObservationUnit::PerSample) {
                for (const auto& r : rev.records) g.push_back(metric_value(r, m));
            } else {
                std::map<std::string, std::vector<double>> per_test;
                for (const auto& r : rev.records) per_test[r.test_name].push_back(metric_value(r, m));
                for (auto& [name, v] : per_test) g.push_back(detail::aggregate_values(std::move(v), opt.aggregation));
            }
            groups.push_back(std::move(g));
        }
        return groups;
    };
    for (const auto& g : observations(Metric::Energy)) rep.observations.push_back(g.size());

    // The three analyses are independent.
    std::array<std::future<MetricAnalysis>, 3> jobs;
    for (std::size_t i = 0; i < kMetrics.size(); ++i) {
        jobs[i] = std::async(std::launch::async, [&, m = kMetrics[i]] {
            const auto groups = observations(m);
            MetricAnalysis a;
            a.anova = stats::anova(groups);
            a.pairs = stats::tukey_hsd(a.anova, opt.alpha);
            return a;
        });
    }
    for (std::size_t i = 0; i < kMetrics.size(); ++i) rep.metrics[to_string(kMetrics[i])] = jobs[i].get();

    const auto proxy = rep.significance(Metric::Ruapi);
    rep.proxy_vs_energy = proxy_eval(proxy, rep.significance(Metric::Energy));
    rep.proxy_vs_power = proxy_eval(proxy, rep.significance(Metric::Power));
    rep.summaries = revision_summaries(revisions);
    return rep;
}

// ---------------------------------------------------------------------------
// Serialization. Non-finite doubles (F, q under zero within-group variance)
// are written as null and read back as +inf.

namespace detail {

inline nlohmann::ordered_json finite_or_null(double v) {
    if (std::isfinite(v)) return v;
    return nullptr;
}

inline double finite_or_inf(const nlohmann::ordered_json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

template <typename T>
nlohmann::ordered_json optional_json(const std::optional<T>& v) {
    if (v) return *v;
    return nullptr;
}

template <typename T>
std::optional<T> optional_from(const nlohmann::ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<T>();
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const ProxyScore& s) {
    return {{"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn}, {"tn", s.tn}, {"accuracy", s.accuracy},
            {"precision", detail::optional_json(s.precision)}, {"recall", detail::optional_json(s.recall)},
            {"f1", detail::optional_json(s.f1)}};
}

inline ProxyScore proxy_from_json(const nlohmann::ordered_json& j) {
    ProxyScore s;
    s.tp = j.at("tp").get<std::size_t>();
    s.fp = j.at("fp").get<std::size_t>();
    s.fn = j.at("fn").get<std::size_t>();
    s.tn = j.at("tn").get<std::size_t>();
    s.accuracy = j.at("accuracy").get<double>();
    s.precision = detail::optional_from<double>(j.at("precision"));
    s.recall = detail::optional_from<double>(j.at("recall"));
    s.f1 = detail::optional_from<double>(j.at("f1"));
    return s;
}

inline nlohmann::ordered_json to_json(const ComparisonReport& r) {
    using nlohmann::ordered_json;
    ordered_json j;
    j["format"] = "apiwatt-comparison-v1";
    j["revisions"] = r.revisions;
    j["aligned_tests"] = r.aligned_tests;
    ordered_json excluded = ordered_json::object();
    for (const auto& [label, tests] : r.excluded_tests) excluded[label] = tests;
    j["excluded_tests"] = excluded;
    j["top_k"] = detail::optional_json(r.top_k);
    j["top_k_truncated"] = r.top_k_truncated;
    j["alpha"] = r.alpha;
    j["observation_unit"] = r.observation_unit;
    j["aggregation"] = r.aggregation;
    j["ruapi_scope"] = r.ruapi_scope;
    j["executions"] = r.executions;
    j["observations"] = r.observations;
    ordered_json metrics = ordered_json::object();
    for (const auto m : kMetrics) {
        const auto& a = r.metric(m);
        ordered_json pairs = ordered_json::array();
        for (const auto& p : a.pairs)
            pairs.push_back({{"a", r.revisions.at(p.group_a)}, {"b", r.revisions.at(p.group_b)},
                             {"mean_diff", p.mean_diff}, {"q", detail::finite_or_null(p.q)}, {"p_adj", p.p_adj},
                             {"significant", p.significant}});
        metrics[to_string(m)] = {
            {"anova",
             {{"status", stats::to_string(a.anova.status)}, {"F", detail::finite_or_null(a.anova.f)},
              {"p", a.anova.p}, {"df_between", a.anova.df_between}, {"df_within", a.anova.df_within},
              {"ss_between", a.anova.ss_between}, {"ss_within", a.anova.ss_within},
              {"ms_between", a.anova.ms_between}, {"ms_within", a.anova.ms_within},
              {"group_means", a.anova.group_means}, {"group_sizes", a.anova.group_sizes}}},
            {"pairs", pairs}};
    }
    j["metrics"] = metrics;
    j["proxy"] = {{"vs_energy", to_json(r.proxy_vs_energy)}, {"vs_power", to_json(r.proxy_vs_power)}};
    ordered_json summaries = ordered_json::array();
    for (const auto& s : r.summaries)
        summaries.push_back({{"revision", s.revision}, {"mean_energy_mj", s.mean_energy_mj},
                             {"mean_power_mw", s.mean_power_mw}, {"sum_ruapi", s.sum_ruapi}, {"n_tests", s.n_tests}});
    j["summaries"] = summaries;
    return j;
}

/// Inverse of to_json(); throws ParseError on any structural mismatch.
inline ComparisonReport report_from_json(const nlohmann::ordered_json& j) {
    try {
        if (j.at("format") != "apiwatt-comparison-v1")
            throw ParseError(ParseError::Kind::Version, 0, "unknown report format");
        ComparisonReport r;
        r.revisions = j.at("revisions").get<std::vector<std::string>>();
        r.aligned_tests = j.at("aligned_tests").get<std::vector<std::string>>();
        for (const auto& [label, tests] : j.at("excluded_tests").items())
            r.excluded_tests[label] = tests.get<std::vector<std::string>>();
        r.top_k = detail::optional_from<std::size_t>(j.at("top_k"));
        r.top_k_truncated = j.at("top_k_truncated").get<bool>();
        r.alpha = j.at("alpha").get<double>();
        r.observation_unit = j.at("observation_unit").get<std::string>();
        r.aggregation = j.at("aggregation").get<std::string>();
        r.ruapi_scope = j.at("ruapi_scope").get<std::string>();
        r.executions = j.at("executions").get<std::size_t>();
        r.observations = j.at("observations").get<std::vector<std::size_t>>();

        std::map<std::string, std::size_t> index;
        for (std::size_t i = 0; i < r.revisions.size(); ++i) index[r.revisions[i]] = i;
        for (const auto m : kMetrics) {
            const auto& jm = j.at("metrics").at(to_string(m));
            const auto& ja = jm.at("anova");
            MetricAnalysis a;
            const auto status = ja.at("status").get<std::string>();
            if (status == "ok") a.anova.status = stats::AnovaResult::Status::Ok;
            else if (status == "constant") a.anova.status = stats::AnovaResult::Status::Constant;
            else if (status == "zero_within_variance") a.anova.status = stats::AnovaResult::Status::ZeroWithinVariance;
            else throw ParseError(ParseError::Kind::Value, 0, "unknown ANOVA status '" + status + "'");
            a.anova.f = detail::finite_or_inf(ja.at("F"));
            a.anova.p = ja.at("p").get<double>();
            a.anova.df_between = ja.at("df_between").get<double>();
            a.anova.df_within = ja.at("df_within").get<double>();
            a.anova.ss_between = ja.at("ss_between").get<double>();
            a.anova.ss_within = ja.at("ss_within").get<double>();
            a.anova.ms_between = ja.at("ms_between").get<double>();
            a.anova.ms_within = ja.at("ms_within").get<double>();
            a.anova.group_means = ja.at("group_means").get<std::vector<double>>();
            a.anova.group_sizes = ja.at("group_sizes").get<std::vector<std::size_t>>();
            for (const auto& jp : jm.at("pairs")) {
                stats::TukeyPair p;
                p.group_a = index.at(jp.at("a").get<std::string>());
                p.group_b = index.at(jp.at("b").get<std::string>());
                p.mean_diff = jp.at("mean_diff").get<double>();
                p.q = detail::finite_or_inf(jp.at("q"));
                p.p_adj = jp.at("p_adj").get<double>();
                p.significant = jp.at("significant").get<bool>();
                a.pairs.push_back(p);
            }
            r.metrics[to_string(m)] = std::move(a);
        }
        r.proxy_vs_energy = proxy_from_json(j.at("proxy").at("vs_energy"));
        r.proxy_vs_power = proxy_from_json(j.at("proxy").at("vs_power"));
        for (const auto& js : j.at("summaries"))
            r.summaries.push_back({js.at("revision").get<std::string>(), js.at("mean_energy_mj").get<double>(),
                                   js.at("mean_power_mw").get<double>(), js.at("sum_ruapi").get<double>(),
                                   js.at("n_tests").get<std::size_t>()});
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ParseError::Kind::Malformed, 0, std::string("corrupt comparison report: ") + e.what());
    } catch (const std::out_of_range& e) {
        throw ParseError(ParseError::Kind::Malformed, 0, std::string("corrupt comparison report: ") + e.what());
    }
}

inline std::string summary_csv(std::span<const RevisionSummary> summaries) {
    std::string out = "revision,mean_energy_mj,mean_power_mw,sum_ruapi\n";
    for (const auto& s : summaries)
        out += s.revision + ',' + detail::format_double(s.mean_energy_mj) + ',' + detail::format_double(s.mean_power_mw) +
               ',' + detail::format_double(s.sum_ruapi) + '\n';
    return out;
}

inline std::string pairs_csv(const ComparisonReport& r, Metric m) {
    std::string out = "revision_a,revision_b,mean_diff,q,p_adj,significant\n";
    for (const auto& p : r.metric(m).pairs)
        out += r.revisions[p.group_a] + ',' + r.revisions[p.group_b] + ',' + detail::format_double(p.mean_diff) + ',' +
               (std::isfinite(p.q) ? detail::format_double(p.q) : std::string("inf")) + ',' +
               detail::format_double(p.p_adj) + ',' + (p.significant ? "true" : "false") + '\n';
    return out;
}

inline std::string proxy_csv(const ComparisonReport& r) {
    auto opt = [](const std::optional<double>& v) { return v ? detail::format_double(*v) : std::string(); };
    std::string out = "target,tp,fp,fn,tn,accuracy,precision,recall,f1\n";
    for (const auto& [name, s] : {std::pair{"energy", &r.proxy_vs_energy}, std::pair{"power", &r.proxy_vs_power}})
        out += std::string(name) + ',' + std::to_string(s->tp) + ',' + std::to_string(s->fp) + ',' +
               std::to_string(s->fn) + ',' + std::to_string(s->tn) + ',' + detail::format_double(s->accuracy) + ',' +
               opt(s->precision) + ',' + opt(s->recall) + ',' + opt(s->f1) + '\n';
    return out;
}

}  // namespace apiwatt
