#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apiwatt/callgraph.hpp"
#include "apiwatt/detail/text.hpp"
#include "apiwatt/error.hpp"

namespace apiwatt {

struct PowerSample {
    double t_us = 0.0;      // relative to test start
    double power_mw = 0.0;

    friend bool operator==(const PowerSample&, const PowerSample&) = default;
};

struct PowerProfile {
    std::string test_name;
    std::uint32_t sample_index = 0;
    double nominal_rate_hz = 20000.0;
    std::vector<PowerSample> samples;  // strictly increasing t_us

    friend bool operator==(const PowerProfile&, const PowerProfile&) = default;
};

inline constexpr std::string_view kPowerMagic = "#power ";
inline constexpr std::string_view kPowerVersion = "v1";

/// Parses `#power v1;<test_name>;<sample_index>;<nominal_rate_hz>` followed by
/// `<t_us>;<power_mw>` lines. `#` lines after the header are comments.
inline PowerProfile parse_power(std::string_view text) {
    using PK = ParseError::Kind;
    detail::LineReader reader(text);
    std::string_view line;
    if (!reader.next(line) || !line.starts_with(kPowerMagic))
        throw ParseError(PK::Malformed, 1, "missing '#power' header");
    const auto header = detail::split(line.substr(kPowerMagic.size()), ';');
    if (header.empty() || header[0] != kPowerVersion) {
        if (!header.empty() && header[0].starts_with('v'))
            throw ParseError(PK::Version, 1, "unsupported power format version '" + std::string(header[0]) + "'");
        throw ParseError(PK::Malformed, 1, "malformed power header");
    }
    if (header.size() != 4)
        throw ParseError(PK::Malformed, 1, "power header needs version, test name, sample index and rate");

    PowerProfile profile;
    profile.test_name = std::string(header[1]);
    if (!MethodId::parse(profile.test_name))
        throw ParseError(PK::Malformed, 1, "test name '" + profile.test_name + "' is not of the form package.Class::method");
    const auto sample = detail::parse_unsigned<std::uint32_t>(header[2]);
    if (!sample) throw ParseError(PK::Malformed, 1, "invalid sample index '" + std::string(header[2]) + "'");
    profile.sample_index = *sample;
    const auto rate = detail::parse_decimal(header[3]);
    if (!rate || *rate <= 0.0) throw ParseError(PK::Malformed, 1, "sampling rate must be a positive number");
    profile.nominal_rate_hz = *rate;

    while (reader.next(line)) {
        const auto ln = reader.line_number();
        if (line.starts_with('#')) continue;
        const auto f = detail::split(line, ';');
        if (f.size() != 2) throw ParseError(PK::Malformed, ln, "expected '<t_us>;<power_mw>'");
        const auto t = detail::parse_decimal(f[0]);
        const auto p = detail::parse_decimal(f[1]);
        if (!t || !p) throw ParseError(PK::Malformed, ln, "malformed number");
        if (*p < 0.0) throw ParseError(PK::Value, ln, "negative power " + std::string(f[1]));
        if (!profile.samples.empty() && *t <= profile.samples.back().t_us)
            throw ParseError(PK::NonMonotone, ln, "timestamp " + std::string(f[0]) + " does not increase");
        profile.samples.push_back({*t, *p});
    }
    return profile;
}

inline std::string write_power(const PowerProfile& profile) {
    for (std::size_t i = 0; i < profile.samples.size(); ++i) {
        const auto& s = profile.samples[i];
        if (!std::isfinite(s.t_us) || !std::isfinite(s.power_mw) || s.power_mw < 0.0)
            throw InvariantError("invalid power sample at index " + std::to_string(i));
        if (i > 0 && s.t_us <= profile.samples[i - 1].t_us)
            throw InvariantError("power timestamps must strictly increase (index " + std::to_string(i) + ")");
    }
    std::string out;
    out.reserve(64 + profile.samples.size() * 16);
    out += kPowerMagic;
    out += kPowerVersion;
    out += ';' + profile.test_name + ';' + std::to_string(profile.sample_index) + ';' +
           detail::format_double(profile.nominal_rate_hz) + '\n';
    for (const auto& s : profile.samples) {
        out += detail::format_double(s.t_us);
        out += ';';
        out += detail::format_double(s.power_mw);
        out += '\n';
    }
    return out;
}

/// Trapezoidal energy in mJ over [a_us, b_us], interpolating linearly at the
/// window edges. mW x s = mJ.
inline double integrate(const PowerProfile& profile, double a_us, double b_us) {
    const auto& s = profile.samples;
    if (s.size() < 2) throw RangeError("power profile of " + profile.test_name + " has fewer than 2 samples");
    if (!(a_us <= b_us)) throw RangeError("integration window is reversed");
    if (a_us < s.front().t_us || b_us > s.back().t_us)
        throw RangeError("window [" + detail::format_double(a_us) + ", " + detail::format_double(b_us) +
                         "] us lies outside the sampled range [" + detail::format_double(s.front().t_us) + ", " +
                         detail::format_double(s.back().t_us) + "] us");
    if (a_us == b_us) return 0.0;

    auto value_at = [&](std::size_t k, double t) {
        // k is the segment [s[k], s[k+1]] containing t.
        const auto& l = s[k];
        const auto& r = s[k + 1];
        return l.power_mw + (r.power_mw - l.power_mw) * ((t - l.t_us) / (r.t_us - l.t_us));
    };
    auto segment_of = [&](double t) {
        const auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const PowerSample& p) { return v < p.t_us; });
        auto k = static_cast<std::size_t>(std::distance(s.begin(), it));
        k = k == 0 ? 0 : k - 1;
        return std::min(k, s.size() - 2);
    };

    const auto ka = segment_of(a_us);
    const auto kb = segment_of(b_us);
    double area = 0.0;  // mW * us
    double t_prev = a_us;
    double p_prev = value_at(ka, a_us);
    for (std::size_t k = ka + 1; k <= kb; ++k) {
        area += 0.5 * (p_prev + s[k].power_mw) * (s[k].t_us - t_prev);
        t_prev = s[k].t_us;
        p_prev = s[k].power_mw;
    }
    area += 0.5 * (p_prev + value_at(kb, b_us)) * (b_us - t_prev);
    return area * 1e-6;
}

struct MethodEnergyRecord {
    MethodId method;
    std::uint64_t thread = 0;
    std::size_t depth = 0;
    std::int64_t t_start_ns = 0;
    std::int64_t duration_ns = 0;
    double energy_mj_inclusive = 0.0;
    double energy_mj_exclusive = 0.0;  // inclusive minus the direct callees' inclusive energy
    double avg_power_mw = 0.0;         // 0 for zero-duration calls

    friend bool operator==(const MethodEnergyRecord&, const MethodEnergyRecord&) = default;
};

inline double ns_to_us(std::int64_t ns) { return static_cast<double>(ns) / 1000.0; }

/// Attributes the power stream to call intervals. `clock_offset_us` maps trace
/// time onto the power clock: power_time = trace_time + offset.
inline std::vector<MethodEnergyRecord> attribute(std::span<const MethodInterval> intervals, const PowerProfile& profile,
                                                 double clock_offset_us = 0.0) {
    std::vector<MethodEnergyRecord> out;
    out.reserve(intervals.size());
    for (const auto& iv : intervals) {
        MethodEnergyRecord rec{iv.method, iv.thread, iv.depth, iv.t_start_ns, iv.duration_ns, 0.0, 0.0, 0.0};
        const double a = ns_to_us(iv.t_start_ns) + clock_offset_us;
        const double b = ns_to_us(iv.t_start_ns + iv.duration_ns) + clock_offset_us;
        try {
            rec.energy_mj_inclusive = iv.duration_ns > 0 ? integrate(profile, a, b) : 0.0;
        } catch (const RangeError& e) {
            throw RangeError("cannot attribute " + iv.method.full_name() + ": " + e.what());
        }
        if (iv.duration_ns > 0) rec.avg_power_mw = rec.energy_mj_inclusive / (static_cast<double>(iv.duration_ns) * 1e-9);
        rec.energy_mj_exclusive = rec.energy_mj_inclusive;
        out.push_back(std::move(rec));
    }
    for (std::size_t i = 0; i < intervals.size(); ++i)
        if (intervals[i].parent) out[*intervals[i].parent].energy_mj_exclusive -= out[i].energy_mj_inclusive;
    // Power is non-negative, so a negative residue is rounding only.
    for (auto& rec : out) rec.energy_mj_exclusive = std::max(rec.energy_mj_exclusive, 0.0);
    return out;
}

struct TestEnergyRecord {
    std::string test_name;
    std::string revision;
    double energy_mj = 0.0;
    double avg_power_mw = 0.0;
    double duration_ms = 0.0;
    std::size_t n_samples_averaged = 1;

    friend bool operator==(const TestEnergyRecord&, const TestEnergyRecord&) = default;
};

/// Energy of one test execution over the span of its top-level frames. An
/// execution without call events is charged the whole profile.
inline TestEnergyRecord test_energy(const CallTree& tree, const PowerProfile& profile, std::string revision,
                                    double clock_offset_us = 0.0) {
    TestEnergyRecord rec;
    rec.test_name = tree.test_name;
    rec.revision = std::move(revision);
    double a = 0.0;
    double b = 0.0;
    if (tree.roots.empty()) {
        if (profile.samples.size() < 2) throw RangeError("power profile of " + profile.test_name + " has fewer than 2 samples");
        a = profile.samples.front().t_us;
        b = profile.samples.back().t_us;
    } else {
        std::int64_t start = tree.roots.front().t_start_ns;
        std::int64_t end = tree.roots.front().t_end_ns();
        for (const auto& r : tree.roots) {
            start = std::min(start, r.t_start_ns);
            end = std::max(end, r.t_end_ns());
        }
        a = ns_to_us(start) + clock_offset_us;
        b = ns_to_us(end) + clock_offset_us;
    }
    rec.energy_mj = integrate(profile, a, b);
    rec.duration_ms = (b - a) / 1000.0;
    rec.avg_power_mw = rec.duration_ms > 0.0 ? rec.energy_mj / (rec.duration_ms / 1000.0) : 0.0;
    return rec;
}

enum class Aggregation { Mean, Median };

namespace detail {

inline double aggregate_values(std::vector<double> v, Aggregation how) {
    if (how == Aggregation::Mean) {
        double sum = 0.0;
        for (double x : v) sum += x;
        return sum / static_cast<double>(v.size());
    }
    std::sort(v.begin(), v.end());
    const auto n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace detail

/// Collapses the repeated executions of one test in one revision.
inline TestEnergyRecord aggregate_samples(std::span<const TestEnergyRecord> records,
                                          Aggregation how = Aggregation::Mean) {
    if (records.empty()) throw InvariantError("aggregate_samples needs at least one record");
    const auto& first = records.front();
    std::vector<double> energy;
    std::vector<double> power;
    std::vector<double> duration;
    for (const auto& r : records) {
        if (r.test_name != first.test_name)
            throw InvariantError("cannot aggregate different tests: " + first.test_name + " and " + r.test_name);
        if (r.revision != first.revision)
            throw InvariantError("cannot aggregate different revisions: " + first.revision + " and " + r.revision);
        energy.push_back(r.energy_mj);
        power.push_back(r.avg_power_mw);
        duration.push_back(r.duration_ms);
    }
    TestEnergyRecord out;
    out.test_name = first.test_name;
    out.revision = first.revision;
    out.energy_mj = detail::aggregate_values(std::move(energy), how);
    out.avg_power_mw = detail::aggregate_values(std::move(power), how);
    out.duration_ms = detail::aggregate_values(std::move(duration), how);
    out.n_samples_averaged = records.size();
    return out;
}

}  // namespace apiwatt
