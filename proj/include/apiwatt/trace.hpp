#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "apiwatt/detail/text.hpp"
#include "apiwatt/error.hpp"

namespace apiwatt {

namespace detail {

// Bytes that may never appear in a trace identifier: ASCII control and
// space, DEL, the field separator and the `::` rendering separator.
inline bool identifier_byte_ok(unsigned char c) {
    return c > 0x20 && c != 0x7F && c != ';' && c != ':';
}

inline bool valid_atom(std::string_view s, bool allow_dots) {
    if (s.empty() || !valid_utf8(s)) return false;
    for (char ch : s) {
        const auto c = static_cast<unsigned char>(ch);
        if (!identifier_byte_ok(c)) return false;
        if (c == '.' && !allow_dots) return false;
    }
    if (allow_dots) {
        for (auto seg : split(s, '.'))
            if (seg.empty()) return false;
    }
    return true;
}

}  // namespace detail

/// Fully qualified method, rendered canonically as `package.class::method`.
struct MethodId {
    std::string package;
    std::string cls;
    std::string method;

    std::string full_name() const { return package + "." + cls + "::" + method; }

    bool valid() const {
        return detail::valid_atom(package, true) && detail::valid_atom(cls, false) &&
               detail::valid_atom(method, false);
    }

    /// Inverse of full_name(); nullopt when `name` is not canonical.
    static std::optional<MethodId> parse(std::string_view name) {
        const auto sep = name.find("::");
        if (sep == std::string_view::npos) return std::nullopt;
        const auto qualified = name.substr(0, sep);
        const auto dot = qualified.rfind('.');
        if (dot == std::string_view::npos) return std::nullopt;
        MethodId id{std::string(qualified.substr(0, dot)), std::string(qualified.substr(dot + 1)),
                    std::string(name.substr(sep + 2))};
        if (!id.valid()) return std::nullopt;
        return id;
    }

    friend bool operator==(const MethodId&, const MethodId&) = default;
    friend auto operator<=>(const MethodId& a, const MethodId& b) {
        return std::tie(a.package, a.cls, a.method) <=> std::tie(b.package, b.cls, b.method);
    }
};

enum class EventKind { Enter, Exit };

struct TraceEvent {
    EventKind kind = EventKind::Enter;
    MethodId method;
    std::uint64_t thread = 0;
    std::int64_t t_ns = 0;

    friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

/// One execution (test, sample_index) of a unit test.
struct TestTrace {
    std::string test_name;
    std::uint32_t sample_index = 0;
    std::vector<TraceEvent> events;

    friend bool operator==(const TestTrace&, const TestTrace&) = default;
};

struct TraceViolation {
    enum class Kind { BadTestName, BadIdentifier, NegativeTime, NonMonotone, ExitWithoutEnter, MismatchedExit, Unclosed };

    static constexpr std::size_t kHeader = static_cast<std::size_t>(-1);

    Kind kind;
    std::size_t event_index;  // kHeader for header-level problems
    std::string message;
};

/// Lists every invariant violation; an empty result means `trace` is valid.
inline std::vector<TraceViolation> validate_trace(const TestTrace& trace) {
    using K = TraceViolation::Kind;
    std::vector<TraceViolation> out;
    if (!MethodId::parse(trace.test_name))
        out.push_back({K::BadTestName, TraceViolation::kHeader,
                       "test name '" + trace.test_name + "' is not of the form package.Class::method"});

    struct ThreadState {
        std::int64_t last_t = 0;
        bool seen = false;
        std::vector<std::size_t> open;  // indices of unmatched Enter events
    };
    std::map<std::uint64_t, ThreadState> threads;

    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const auto& ev = trace.events[i];
        const auto at = "event " + std::to_string(i) + ": ";
        if (!ev.method.valid())
            out.push_back({K::BadIdentifier, i, at + "invalid method identifier '" + ev.method.full_name() + "'"});
        if (ev.t_ns < 0) out.push_back({K::NegativeTime, i, at + "negative timestamp"});

        auto& st = threads[ev.thread];
        if (st.seen && ev.t_ns < st.last_t)
            out.push_back({K::NonMonotone, i,
                           at + "timestamp " + std::to_string(ev.t_ns) + " precedes " + std::to_string(st.last_t) +
                               " on thread " + std::to_string(ev.thread)});
        st.seen = true;
        st.last_t = std::max(st.last_t, ev.t_ns);

        if (ev.kind == EventKind::Enter) {
            st.open.push_back(i);
        } else if (st.open.empty()) {
            out.push_back({K::ExitWithoutEnter, i,
                           at + "exit of " + ev.method.full_name() + " without matching enter on thread " +
                               std::to_string(ev.thread)});
        } else if (trace.events[st.open.back()].method != ev.method) {
            out.push_back({K::MismatchedExit, i,
                           at + "exit of " + ev.method.full_name() + " while " +
                               trace.events[st.open.back()].method.full_name() + " is the innermost open frame"});
            st.open.pop_back();
        } else {
            st.open.pop_back();
        }
    }
    for (const auto& [tid, st] : threads) {
        for (auto idx : st.open)
            out.push_back({K::Unclosed, idx,
                           "event " + std::to_string(idx) + ": enter of " + trace.events[idx].method.full_name() +
                               " on thread " + std::to_string(tid) + " is never exited"});
    }
    return out;
}

inline constexpr std::string_view kTraceMagic = "#trace ";
inline constexpr std::string_view kTraceVersion = "v1";

/// Parses the line-oriented trace format:
///
///     #trace v1;<test_name>;<sample_index>
///     <E|X>;<thread>;<t_ns>;<package>;<class>;<method>
///
/// Lines starting with `#` after the header are comments. The result always
/// satisfies validate_trace(); every failure names the offending line.
inline TestTrace parse_trace(std::string_view text) {
    using PK = ParseError::Kind;
    detail::LineReader reader(text);
    std::string_view line;
    if (!reader.next(line) || !line.starts_with(kTraceMagic))
        throw ParseError(PK::Malformed, 1, "missing '#trace' header");

    const auto header = detail::split(line.substr(kTraceMagic.size()), ';');
    if (header.empty() || header[0] != kTraceVersion) {
        if (!header.empty() && header[0].starts_with('v'))
            throw ParseError(PK::Version, 1, "unsupported trace format version '" + std::string(header[0]) + "'");
        throw ParseError(PK::Malformed, 1, "malformed trace header");
    }
    if (header.size() != 3) throw ParseError(PK::Malformed, 1, "trace header needs version, test name and sample index");

    TestTrace trace;
    trace.test_name = std::string(header[1]);
    if (!MethodId::parse(trace.test_name))
        throw ParseError(PK::Malformed, 1, "test name '" + trace.test_name + "' is not of the form package.Class::method");
    const auto sample = detail::parse_unsigned<std::uint32_t>(header[2]);
    if (!sample) throw ParseError(PK::Malformed, 1, "invalid sample index '" + std::string(header[2]) + "'");
    trace.sample_index = *sample;

    std::vector<std::size_t> line_of_event;
    while (reader.next(line)) {
        const auto ln = reader.line_number();
        if (line.starts_with('#')) continue;
        const auto f = detail::split(line, ';');
        if (f.size() != 6) throw ParseError(PK::Malformed, ln, "expected 6 ';'-separated fields, got " + std::to_string(f.size()));

        TraceEvent ev;
        if (f[0] == "E")
            ev.kind = EventKind::Enter;
        else if (f[0] == "X")
            ev.kind = EventKind::Exit;
        else
            throw ParseError(PK::Malformed, ln, "event kind must be E or X");

        const auto thread = detail::parse_unsigned<std::uint64_t>(f[1]);
        if (!thread) throw ParseError(PK::Malformed, ln, "invalid thread id '" + std::string(f[1]) + "'");
        const auto t = detail::parse_unsigned<std::int64_t>(f[2]);
        if (!t) throw ParseError(PK::Malformed, ln, "invalid timestamp '" + std::string(f[2]) + "'");
        ev.thread = *thread;
        ev.t_ns = *t;
        ev.method = MethodId{std::string(f[3]), std::string(f[4]), std::string(f[5])};
        if (!ev.method.valid()) throw ParseError(PK::Malformed, ln, "invalid method identifier");

        trace.events.push_back(std::move(ev));
        line_of_event.push_back(ln);
    }

    // Structural checks are shared with validate_trace; report the violation
    // that occurs earliest in the file.
    auto violations = validate_trace(trace);
    if (!violations.empty()) {
        const auto first = std::min_element(violations.begin(), violations.end(), [](const auto& a, const auto& b) {
            return a.event_index < b.event_index;
        });
        const auto kind = first->kind == TraceViolation::Kind::NonMonotone ? PK::NonMonotone : PK::Nesting;
        throw ParseError(kind, line_of_event[first->event_index], first->message);
    }
    return trace;
}

/// Canonical text; parse_trace(write_trace(t)) == t for every valid t.
inline std::string write_trace(const TestTrace& trace) {
    if (auto v = validate_trace(trace); !v.empty()) throw InvariantError("cannot write invalid trace: " + v.front().message);
    std::string out;
    out.reserve(64 + trace.events.size() * 64);
    out += kTraceMagic;
    out += kTraceVersion;
    out += ';';
    out += trace.test_name;
    out += ';';
    out += std::to_string(trace.sample_index);
    out += '\n';
    for (const auto& ev : trace.events) {
        out += ev.kind == EventKind::Enter ? 'E' : 'X';
        out += ';';
        out += std::to_string(ev.thread);
        out += ';';
        out += std::to_string(ev.t_ns);
        out += ';';
        out += ev.method.package;
        out += ';';
        out += ev.method.cls;
        out += ';';
        out += ev.method.method;
        out += '\n';
    }
    return out;
}

}  // namespace apiwatt
