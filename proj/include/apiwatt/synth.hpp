#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "apiwatt/apimetric.hpp"
#include "apiwatt/callgraph.hpp"
#include "apiwatt/detail/parallel.hpp"
#include "apiwatt/detail/text.hpp"
#include "apiwatt/energy.hpp"
#include "apiwatt/error.hpp"
#include "apiwatt/trace.hpp"

namespace apiwatt::synth {

/// Portable seeded generator. The engine is std::mt19937_64, whose output
/// sequence is fixed by the C++ standard; the uniform and Gaussian
/// conversions are done here (53-bit mantissa fill, Box-Muller) because the
/// standard distributions are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<double>(hi - lo + 1);
        return std::min(hi, lo + static_cast<std::int64_t>(uniform01() * span));
    }

    double normal() {
        if (spare_) {
            const double v = *spare_;
            spare_.reset();
            return v;
        }
        double u1 = uniform01();
        while (u1 <= 0.0) u1 = uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

  private:
    std::mt19937_64 engine_;
    std::optional<double> spare_;
};

/// splitmix64 finalizer; derives independent stream seeds from a base seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    auto mix = [](std::uint64_t z) {
        z += 0x9E3779B97F4A7C15ull;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(mix(seed) ^ a) ^ b) ^ c);
}

struct RevisionSpec {
    std::string label;
    double api_call_multiplier = 1.0;
    double base_power_mw = 800.0;
    double api_cost_mw = 400.0;
    double noise_stddev_mw = 0.0;
};

struct TestShape {
    std::size_t count = 10;
    std::size_t depth = 3;      // frames below the test method
    std::size_t branching = 3;  // max call events issued per frame
    double api_density = 0.5;   // probability that a call slot is an API call
    std::string package = "com.example.lib";
};

struct SynthSpec {
    std::uint64_t seed = 42;
    double rate_hz = 20000.0;
    std::size_t samples_per_test = 5;
    TestShape tests;
    std::vector<RevisionSpec> revisions;

    /// Sampling period in whole microseconds; every timestamp is on this grid.
    std::int64_t period_us() const { return static_cast<std::int64_t>(std::llround(1e6 / rate_hz)); }

    void validate() const {
        if (revisions.empty()) throw ConfigError("synth spec needs at least one revision");
        if (tests.count < 1 || tests.depth < 1 || tests.branching < 1)
            throw ConfigError("synth test count, depth and branching must be >= 1");
        if (!(tests.api_density > 0.0 && tests.api_density <= 1.0))
            throw ConfigError("synth api_density must lie in (0, 1]");
        if (samples_per_test < 1) throw ConfigError("synth samples_per_test must be >= 1");
        if (!(rate_hz > 0.0) || 1e6 / rate_hz != static_cast<double>(period_us()) || period_us() < 1)
            throw ConfigError("synth rate_hz must divide 1e6 so samples fall on whole microseconds");
        if (!apiwatt::detail::valid_atom(tests.package, true)) throw ConfigError("synth package '" + tests.package + "' is invalid");
        std::set<std::string> labels;
        for (const auto& r : revisions) {
            if (r.label.empty() || r.label == "." || r.label == ".." ||
                r.label.find_first_of("/\\") != std::string::npos)
                throw ConfigError("synth revision label '" + r.label + "' is not a valid directory name");
            if (!labels.insert(r.label).second) throw ConfigError("duplicate synth revision label '" + r.label + "'");
            if (!(r.api_call_multiplier > 0.0) || !std::isfinite(r.api_call_multiplier))
                throw ConfigError("revision " + r.label + ": api_call_multiplier must be > 0");
            if (!(r.base_power_mw >= 0.0) || !(r.api_cost_mw >= 0.0) || !(r.noise_stddev_mw >= 0.0))
                throw ConfigError("revision " + r.label + ": power parameters must be >= 0");
        }
    }
};

inline SynthSpec parse_synth_spec(std::string_view text) {
    using nlohmann::json;
    SynthSpec s;
    try {
        const auto j = json::parse(text);
        s.seed = j.value("seed", s.seed);
        s.rate_hz = j.value("rate_hz", s.rate_hz);
        s.samples_per_test = j.value("samples_per_test", s.samples_per_test);
        if (j.contains("tests")) {
            const auto& t = j.at("tests");
            s.tests.count = t.value("count", s.tests.count);
            s.tests.depth = t.value("depth", s.tests.depth);
            s.tests.branching = t.value("branching", s.tests.branching);
            s.tests.api_density = t.value("api_density", s.tests.api_density);
            s.tests.package = t.value("package", s.tests.package);
        }
        for (const auto& r : j.at("revisions")) {
            RevisionSpec rev;
            rev.label = r.at("label").get<std::string>();
            rev.api_call_multiplier = r.value("api_call_multiplier", rev.api_call_multiplier);
            rev.base_power_mw = r.value("base_power_mw", rev.base_power_mw);
            rev.api_cost_mw = r.value("api_cost_mw", rev.api_cost_mw);
            rev.noise_stddev_mw = r.value("noise_stddev_mw", rev.noise_stddev_mw);
            s.revisions.push_back(std::move(rev));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("invalid synth spec: ") + e.what());
    }
    s.validate();
    return s;
}

inline nlohmann::ordered_json to_json(const SynthSpec& s) {
    nlohmann::ordered_json revs = nlohmann::ordered_json::array();
    for (const auto& r : s.revisions)
        revs.push_back({{"label", r.label}, {"api_call_multiplier", r.api_call_multiplier},
                        {"base_power_mw", r.base_power_mw}, {"api_cost_mw", r.api_cost_mw},
                        {"noise_stddev_mw", r.noise_stddev_mw}});
    return {{"seed", s.seed},
            {"rate_hz", s.rate_hz},
            {"samples_per_test", s.samples_per_test},
            {"tests",
             {{"count", s.tests.count}, {"depth", s.tests.depth}, {"branching", s.tests.branching},
              {"api_density", s.tests.api_density}, {"package", s.tests.package}}},
            {"revisions", revs}};
}

namespace detail {

struct ApiMethod {
    const char* package;
    const char* cls;
    const char* method;
    const char* nested;  // internal callee traced below the API call, or nullptr
};

inline constexpr ApiMethod kApiMethods[] = {
    {"java.util", "HashMap", "put", "hash"},
    {"java.util", "ArrayList", "add", "ensureCapacityInternal"},
    {"java.lang", "StringBuilder", "append", nullptr},
    {"java.io", "StringReader", "read", nullptr},
    {"android.util", "Log", "d", "println"},
    {"android.text", "TextUtils", "isEmpty", nullptr},
    {"java.lang.reflect", "Field", "get", nullptr},
    {"android.os", "Bundle", "putString", "unparcel"},
};

inline constexpr const char* kFrameClasses[] = {"Parser", "Writer", "TypeAdapter", "Reflector", "Cache", "Tokenizer"};
inline constexpr const char* kFrameMethods[] = {"read", "write", "resolve", "visit", "lookup", "convert", "next"};
inline constexpr const char* kHelperMethods[] = {"check", "size", "isValid", "peek"};

enum class Kind { Frame, Api, Helper };

/// Revision-independent call skeleton. Durations and gaps are in sampling
/// periods so every event lands on a power sample.
struct SkelNode {
    Kind kind = Kind::Frame;
    MethodId method;
    std::optional<MethodId> nested;  // API internals, pruned from U
    std::int64_t duration = 0;       // leaves only
    std::int64_t lead = 1;           // frames: gap before the first callee
    std::int64_t gap = 1;            // frames: gap between callees
    std::int64_t tail = 1;           // frames: gap after the last callee
    std::vector<SkelNode> children;
};

inline std::string two_digits(std::size_t i) {
    return (i < 10 ? "0" : "") + std::to_string(i);
}

inline MethodId test_method(const TestShape& shape, std::size_t index) {
    return {shape.package, "Case" + two_digits(index) + "Test", "testScenario" + two_digits(index)};
}

inline SkelNode make_api_leaf(Rng& rng) {
    const auto& api = kApiMethods[rng.uniform_int(0, std::size(kApiMethods) - 1)];
    SkelNode n;
    n.kind = Kind::Api;
    n.method = {api.package, api.cls, api.method};
    n.duration = rng.uniform_int(2, 6);
    if (api.nested && n.duration >= 3 && rng.uniform01() < 0.5) n.nested = MethodId{api.package, api.cls, api.nested};
    return n;
}

inline void grow(SkelNode& frame, std::size_t level, const TestShape& shape, Rng& rng) {
    const auto n = rng.uniform_int(1, static_cast<std::int64_t>(shape.branching));
    for (std::int64_t i = 0; i < n; ++i) {
        const double r = rng.uniform01();
        if (r < shape.api_density) {
            frame.children.push_back(make_api_leaf(rng));
        } else if (level + 1 < shape.depth) {
            SkelNode child;
            child.kind = Kind::Frame;
            child.method = {shape.package + ".internal",
                            kFrameClasses[rng.uniform_int(0, std::size(kFrameClasses) - 1)],
                            kFrameMethods[rng.uniform_int(0, std::size(kFrameMethods) - 1)]};
            child.lead = rng.uniform_int(1, 2);
            child.gap = rng.uniform_int(1, 2);
            child.tail = rng.uniform_int(1, 2);
            grow(child, level + 1, shape, rng);
            frame.children.push_back(std::move(child));
        } else {
            SkelNode h;
            h.kind = Kind::Helper;
            h.method = {shape.package + ".util", "Preconditions",
                        kHelperMethods[rng.uniform_int(0, std::size(kHelperMethods) - 1)]};
            h.duration = rng.uniform_int(1, 3);
            frame.children.push_back(std::move(h));
        }
    }
}

// Index path from the root to each API leaf, in pre-order.
using SlotPath = std::vector<std::size_t>;

inline void collect_api_slots(const SkelNode& node, SlotPath& prefix, std::vector<SlotPath>& out) {
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        prefix.push_back(i);
        if (node.children[i].kind == Kind::Api) out.push_back(prefix);
        else if (node.children[i].kind == Kind::Frame) collect_api_slots(node.children[i], prefix, out);
        prefix.pop_back();
    }
}

inline std::vector<SlotPath> api_slots(const SkelNode& root) {
    std::vector<SlotPath> out;
    SlotPath prefix;
    collect_api_slots(root, prefix, out);
    return out;
}

inline SkelNode& parent_of(SkelNode& root, const SlotPath& path) {
    SkelNode* n = &root;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) n = &n->children[path[i]];
    return *n;
}

inline SkelNode base_skeleton(const SynthSpec& spec, std::size_t test_index) {
    Rng rng(mix_seed(spec.seed, 0x7E57, test_index));
    SkelNode root;
    root.kind = Kind::Frame;
    root.method = test_method(spec.tests, test_index);
    root.lead = rng.uniform_int(1, 3);
    root.gap = rng.uniform_int(1, 2);
    root.tail = rng.uniform_int(1, 3);
    grow(root, 0, spec.tests, rng);
    if (api_slots(root).empty()) root.children.push_back(make_api_leaf(rng));
    return root;
}

/// Scales the API calls of a skeleton to round(multiplier * n0). Extra calls
/// repeat existing ones, cycling through them in pre-order, and are appended
/// to the caller of the call they repeat. Reductions drop the last calls in
/// pre-order. Appends and tail removals never shift an earlier path.
inline SkelNode apply_multiplier(SkelNode root, double multiplier) {
    const auto slots = api_slots(root);
    const auto n0 = static_cast<std::int64_t>(slots.size());
    const auto target = static_cast<std::int64_t>(std::llround(multiplier * static_cast<double>(n0)));
    for (std::int64_t j = 0; j < target - n0; ++j) {
        const auto& path = slots[static_cast<std::size_t>(j % n0)];
        auto& parent = parent_of(root, path);
        SkelNode copy = parent.children[path.back()];
        parent.children.push_back(std::move(copy));
    }
    for (std::int64_t j = n0 - 1; j >= target; --j) {
        const auto& path = slots[static_cast<std::size_t>(j)];
        auto& parent = parent_of(root, path);
        parent.children.erase(parent.children.begin() + static_cast<std::ptrdiff_t>(path.back()));
    }
    return root;
}

struct Layout {
    TestTrace trace;
    std::int64_t duration_units = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> api_intervals;  // [start, end) in units
    std::int64_t api_interactions = 0;
};

inline std::int64_t lay_out(const SkelNode& node, std::int64_t t, std::int64_t unit_ns, Layout& out) {
    auto emit = [&](EventKind kind, const MethodId& m, std::int64_t at) {
        out.trace.events.push_back({kind, m, 1, at * unit_ns});
    };
    emit(EventKind::Enter, node.method, t);
    std::int64_t end = t;
    if (node.kind == Kind::Frame) {
        std::int64_t cur = t + node.lead;
        for (std::size_t i = 0; i < node.children.size(); ++i) {
            if (i > 0) cur += node.gap;
            cur = lay_out(node.children[i], cur, unit_ns, out);
        }
        end = cur + node.tail;
    } else {
        end = t + node.duration;
        if (node.nested) {
            emit(EventKind::Enter, *node.nested, t + 1);
            emit(EventKind::Exit, *node.nested, t + 2);
        }
        if (node.kind == Kind::Api) {
            out.api_intervals.emplace_back(t, end);
            ++out.api_interactions;
        }
    }
    emit(EventKind::Exit, node.method, end);
    return end;
}

}  // namespace detail

struct FixtureFile {
    std::string revision;
    std::string test_name;
    std::uint32_t sample_index = 0;
    std::string trace_path;  // relative to the fixture root
    std::string power_path;
    std::int64_t api_interactions = 0;
    std::int64_t duration_ns = 0;
    std::int64_t api_time_ns = 0;
    double noise_free_energy_mj = 0.0;
};

struct PairTruth {
    std::string a;
    std::string b;
    bool api_change = false;     // API interaction totals differ
    bool energy_change = false;  // noise-free energy totals differ
};

struct GroundTruth {
    std::uint64_t seed = 0;
    std::map<std::string, std::int64_t> api_interactions_per_run;  // per revision, one sample of every test
    std::vector<FixtureFile> files;
    std::vector<PairTruth> pairs;  // revision order of the synth spec file, a before b
};

inline constexpr std::string_view kManifestName = "manifest.json";

inline nlohmann::ordered_json to_json(const GroundTruth& g, const SynthSpec& spec) {
    nlohmann::ordered_json j;
    j["format"] = "apiwatt-fixture-v1";
    j["seed"] = g.seed;
    j["spec"] = to_json(spec);
    nlohmann::ordered_json revs = nlohmann::ordered_json::array();
    for (const auto& r : spec.revisions)
        revs.push_back({{"label", r.label}, {"api_interactions_per_run", g.api_interactions_per_run.at(r.label)}});
    j["revisions"] = revs;
    nlohmann::ordered_json files = nlohmann::ordered_json::array();
    for (const auto& f : g.files)
        files.push_back({{"revision", f.revision}, {"test", f.test_name}, {"sample", f.sample_index},
                         {"trace", f.trace_path}, {"power", f.power_path}, {"api_interactions", f.api_interactions},
                         {"duration_ns", f.duration_ns}, {"api_time_ns", f.api_time_ns},
                         {"noise_free_energy_mj", f.noise_free_energy_mj}});
    j["files"] = files;
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (const auto& p : g.pairs)
        pairs.push_back({{"a", p.a}, {"b", p.b}, {"api_change", p.api_change}, {"energy_change", p.energy_change}});
    j["pairs"] = pairs;
    return j;
}

inline GroundTruth ground_truth_from_json(const nlohmann::json& j) {
    try {
        if (j.at("format") != "apiwatt-fixture-v1") throw ParseError(ParseError::Kind::Version, 0, "unknown manifest format");
        GroundTruth g;
        g.seed = j.at("seed").get<std::uint64_t>();
        for (const auto& r : j.at("revisions"))
            g.api_interactions_per_run[r.at("label").get<std::string>()] = r.at("api_interactions_per_run").get<std::int64_t>();
        for (const auto& f : j.at("files"))
            g.files.push_back({f.at("revision").get<std::string>(), f.at("test").get<std::string>(),
                               f.at("sample").get<std::uint32_t>(), f.at("trace").get<std::string>(),
                               f.at("power").get<std::string>(), f.at("api_interactions").get<std::int64_t>(),
                               f.at("duration_ns").get<std::int64_t>(), f.at("api_time_ns").get<std::int64_t>(),
                               f.at("noise_free_energy_mj").get<double>()});
        for (const auto& p : j.at("pairs"))
            g.pairs.push_back({p.at("a").get<std::string>(), p.at("b").get<std::string>(), p.at("api_change").get<bool>(),
                               p.at("energy_change").get<bool>()});
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(ParseError::Kind::Malformed, 0, std::string("corrupt fixture manifest: ") + e.what());
    }
}

inline std::string trace_file_name(const std::string& test, std::uint32_t sample) {
    return test + "." + std::to_string(sample) + ".trace";
}

inline std::string power_file_name(const std::string& test, std::uint32_t sample) {
    return test + "." + std::to_string(sample) + ".power";
}

/// Writes `<out>/<revision>/traces/<test>.<sample>.trace`, the matching
/// `power/` file for every execution, and `<out>/manifest.json`. Output is a
/// pure function of `spec` and does not depend on `jobs`. Power is base +
/// api_cost while an API call is active, plus seeded Gaussian noise, clamped
/// at 0.
inline GroundTruth generate(const SynthSpec& spec, const std::filesystem::path& out, std::size_t jobs = 1) {
    spec.validate();
    std::error_code ec;
    std::filesystem::create_directories(out, ec);
    if (ec || !std::filesystem::is_directory(out)) throw LayoutError("cannot create output directory " + out.string());

    const std::int64_t unit_us = spec.period_us();
    const std::int64_t unit_ns = unit_us * 1000;

    std::vector<detail::SkelNode> skeletons;
    for (std::size_t t = 0; t < spec.tests.count; ++t) skeletons.push_back(detail::base_skeleton(spec, t));

    const auto n_rev = spec.revisions.size();
    const auto n_test = spec.tests.count;
    const auto n_sample = spec.samples_per_test;
    std::vector<FixtureFile> files(n_rev * n_test * n_sample);

    apiwatt::detail::parallel_for(n_rev * n_test, jobs, [&](std::size_t task) {
        const auto r = task / n_test;
        const auto t = task % n_test;
        const auto& rev = spec.revisions[r];
        const auto skel = detail::apply_multiplier(skeletons[t], rev.api_call_multiplier);
        detail::Layout layout;
        layout.trace.test_name = skel.method.full_name();
        layout.duration_units = detail::lay_out(skel, 0, unit_ns, layout);

        std::vector<char> active(static_cast<std::size_t>(layout.duration_units) + 1, 0);
        std::int64_t api_units = 0;
        for (const auto& [a, b] : layout.api_intervals) {
            api_units += b - a;
            for (auto k = a; k < b; ++k) active[static_cast<std::size_t>(k)] = 1;
        }

        const auto rev_dir = out / rev.label;
        for (std::size_t s = 0; s < n_sample; ++s) {
            const auto sample = static_cast<std::uint32_t>(s);
            layout.trace.sample_index = sample;

            PowerProfile profile;
            profile.test_name = layout.trace.test_name;
            profile.sample_index = sample;
            profile.nominal_rate_hz = spec.rate_hz;
            profile.samples.reserve(active.size());
            Rng noise(mix_seed(spec.seed, 0x90153 + r, t, s));
            for (std::size_t k = 0; k < active.size(); ++k) {
                double p = rev.base_power_mw + (active[k] ? rev.api_cost_mw : 0.0);
                if (rev.noise_stddev_mw > 0.0) p += rev.noise_stddev_mw * noise.normal();
                profile.samples.push_back({static_cast<double>(static_cast<std::int64_t>(k) * unit_us), std::max(p, 0.0)});
            }

            auto& f = files[(r * n_test + t) * n_sample + s];
            f.revision = rev.label;
            f.test_name = layout.trace.test_name;
            f.sample_index = sample;
            f.trace_path = rev.label + "/traces/" + trace_file_name(f.test_name, sample);
            f.power_path = rev.label + "/power/" + power_file_name(f.test_name, sample);
            f.api_interactions = layout.api_interactions;
            f.duration_ns = layout.duration_units * unit_ns;
            f.api_time_ns = api_units * unit_ns;
            f.noise_free_energy_mj = (rev.base_power_mw * static_cast<double>(f.duration_ns) +
                                      rev.api_cost_mw * static_cast<double>(f.api_time_ns)) * 1e-9;
            apiwatt::detail::write_file(out / f.trace_path, write_trace(layout.trace));
            apiwatt::detail::write_file(out / f.power_path, write_power(profile));
        }
    });

    GroundTruth g;
    g.seed = spec.seed;
    g.files = std::move(files);
    std::map<std::string, double> energy_per_run;
    for (const auto& f : g.files) {
        if (f.sample_index != 0) continue;
        g.api_interactions_per_run[f.revision] += f.api_interactions;
        energy_per_run[f.revision] += f.noise_free_energy_mj;
    }
    for (std::size_t a = 0; a < n_rev; ++a) {
        for (std::size_t b = a + 1; b < n_rev; ++b) {
            const auto& la = spec.revisions[a].label;
            const auto& lb = spec.revisions[b].label;
            const double ea = energy_per_run[la];
            const double eb = energy_per_run[lb];
            g.pairs.push_back({la, lb, g.api_interactions_per_run[la] != g.api_interactions_per_run[lb],
                               std::fabs(ea - eb) > 1e-9 * std::max(std::fabs(ea), std::fabs(eb))});
        }
    }
    apiwatt::detail::write_file(out / kManifestName, to_json(g, spec).dump(2) + "\n");
    return g;
}

/// Re-reads a fixture and checks it against its manifest. Every problem is
/// one entry; an empty result means the fixture is intact.
inline std::vector<std::string> verify_fixture(const std::filesystem::path& dir, const GroundTruth& truth,
                                               const ApiClassifier& classifier = ApiClassifier::android_platform()) {
    std::vector<std::string> problems;
    std::map<std::string, std::int64_t> per_run;
    std::set<std::string> incomplete;  // a sample-0 file was unreadable, so the total is not comparable
    for (const auto& f : truth.files) {
        const auto trace_path = dir / f.trace_path;
        const auto power_path = dir / f.power_path;
        bool ok = true;
        if (!std::filesystem::is_regular_file(trace_path)) {
            problems.push_back("missing trace file " + f.trace_path);
            ok = false;
        }
        if (!std::filesystem::is_regular_file(power_path)) {
            problems.push_back("missing power file " + f.power_path);
            ok = false;
        }
        if (!ok) {
            if (f.sample_index == 0) incomplete.insert(f.revision);
            continue;
        }
        try {
            const auto trace = parse_trace(apiwatt::detail::read_file(trace_path));
            const auto power = parse_power(apiwatt::detail::read_file(power_path));
            if (trace.test_name != f.test_name || trace.sample_index != f.sample_index)
                problems.push_back(f.trace_path + ": header names " + trace.test_name + " #" +
                                   std::to_string(trace.sample_index));
            else if (power.test_name != f.test_name || power.sample_index != f.sample_index)
                problems.push_back(f.power_path + ": header names " + power.test_name + " #" +
                                   std::to_string(power.sample_index));
            const auto profile = uapi(build_call_trees(trace), classifier);
            if (profile.total_api_interactions != f.api_interactions)
                problems.push_back(f.trace_path + ": " + std::to_string(profile.total_api_interactions) +
                                   " API interactions, manifest says " + std::to_string(f.api_interactions));
            if (f.sample_index == 0) per_run[f.revision] += profile.total_api_interactions;
        } catch (const ParseError& e) {
            problems.push_back(f.trace_path + " / " + f.power_path + ": " + e.what());
            if (f.sample_index == 0) incomplete.insert(f.revision);
        }
    }
    for (const auto& [rev, n] : truth.api_interactions_per_run) {
        const auto it = per_run.find(rev);
        if (it != per_run.end() && !incomplete.contains(rev) && it->second != n)
            problems.push_back("revision " + rev + ": " + std::to_string(it->second) +
                               " API interactions per run, manifest says " + std::to_string(n));
    }
    return problems;
}

}  // namespace apiwatt::synth
