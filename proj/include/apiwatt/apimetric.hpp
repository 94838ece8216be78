#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "apiwatt/callgraph.hpp"
#include "apiwatt/error.hpp"

namespace apiwatt {

struct ApiRule {
    std::string prefix;  // matched against MethodId::full_name(), e.g. "android." or "java.util."
    std::string label;

    friend bool operator==(const ApiRule&, const ApiRule&) = default;
};

/// Decides which call events are platform-API interactions. The longest
/// matching prefix wins, so narrower groups can be carved out of broad ones.
class ApiClassifier {
  public:
    ApiClassifier() = default;

    explicit ApiClassifier(std::vector<ApiRule> rules) : rules_(std::move(rules)) {
        std::set<std::string_view> seen;
        for (const auto& r : rules_) {
            if (r.prefix.empty()) throw ConfigError("API rule with empty prefix");
            if (r.label.empty()) throw ConfigError("API rule '" + r.prefix + "' has an empty label");
            if (!seen.insert(r.prefix).second) throw ConfigError("duplicate API prefix '" + r.prefix + "'");
        }
        // Longest first; equal lengths cannot both match a name.
        by_length_.resize(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i) by_length_[i] = i;
        std::stable_sort(by_length_.begin(), by_length_.end(), [this](std::size_t a, std::size_t b) {
            return rules_[a].prefix.size() > rules_[b].prefix.size();
        });
    }

    static ApiClassifier android_platform() {
        return ApiClassifier({{"android.", "android"}, {"java.", "java"}, {"javax.", "javax"}, {"dalvik.", "dalvik"}});
    }

    const std::vector<ApiRule>& rules() const noexcept { return rules_; }

    const ApiRule* match(const MethodId& method) const {
        const auto name = method.full_name();
        for (auto idx : by_length_)
            if (std::string_view(name).starts_with(rules_[idx].prefix)) return &rules_[idx];
        return nullptr;
    }

  private:
    std::vector<ApiRule> rules_;
    std::vector<std::size_t> by_length_;
};

inline std::optional<std::string> classify(const MethodId& method, const ApiClassifier& classifier) {
    if (const auto* rule = classifier.match(method)) return rule->label;
    return std::nullopt;
}

struct UapiProfile {
    std::string test_name;
    std::uint32_t sample_index = 0;
    std::int64_t root_uapi = 0;                 // summed over all roots
    std::vector<std::int64_t> node_values;      // pre-order, see for_each_node(); 0 inside pruned API subtrees
    std::int64_t total_api_interactions = 0;    // N contribution of this execution
    std::map<std::string, std::int64_t> api_distribution;
    std::map<MethodId, std::int64_t> method_values;  // U summed over each method's unpruned call events
};

/// API utilization over a call tree:
///
///   U(n) = 1                     if n is an API call (its callees are not traced further)
///   U(n) = 0                     if n's subtree holds no API call
///   U(n) = 1 + sum_c U(c)        otherwise, over every call event c issued by n
inline UapiProfile uapi(const CallTree& tree, const ApiClassifier& classifier) {
    struct Flat {
        const CallNode* node;
        std::optional<std::size_t> parent;
        const ApiRule* rule;  // non-null for an API call
        bool pruned;          // nested below an API call
    };
    std::vector<Flat> flat;
    {
        struct Item {
            const CallNode* node;
            std::optional<std::size_t> parent;
            bool pruned;
        };
        std::vector<Item> stack;
        for (const auto& root : tree.roots) {
            stack.push_back({&root, std::nullopt, false});
            while (!stack.empty()) {
                const auto item = stack.back();
                stack.pop_back();
                const auto self = flat.size();
                const ApiRule* rule = item.pruned ? nullptr : classifier.match(item.node->method);
                flat.push_back({item.node, item.parent, rule, item.pruned});
                const bool prune_children = item.pruned || rule != nullptr;
                const auto& kids = item.node->children;
                for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({&*it, self, prune_children});
            }
        }
    }

    UapiProfile out;
    out.test_name = tree.test_name;
    out.sample_index = tree.sample_index;
    out.node_values.assign(flat.size(), 0);
    std::vector<std::int64_t> child_sum(flat.size(), 0);
    std::vector<char> has_api(flat.size(), 0);

    // Reverse pre-order visits every descendant before its ancestor.
    for (std::size_t i = flat.size(); i-- > 0;) {
        const auto& f = flat[i];
        std::int64_t value = 0;
        if (f.pruned) {
            value = 0;
        } else if (f.rule) {
            value = 1;
            has_api[i] = 1;
            ++out.total_api_interactions;
            ++out.api_distribution[f.rule->label];
        } else if (has_api[i]) {
            value = 1 + child_sum[i];
        }
        out.node_values[i] = value;
        if (!f.pruned) out.method_values[f.node->method] += value;
        if (f.parent) {
            child_sum[*f.parent] += value;
            has_api[*f.parent] |= has_api[i];
        } else {
            out.root_uapi += value;
        }
    }
    return out;
}

inline std::map<std::string, std::int64_t> api_distribution(const CallTree& tree, const ApiClassifier& classifier) {
    return uapi(tree, classifier).api_distribution;
}

/// U normalized by the API-interaction base N: value = U / (N + 1).
struct RUapiValue {
    std::int64_t numerator = 0;
    std::int64_t n_base = 0;
    double value = 0.0;

    friend bool operator==(const RUapiValue&, const RUapiValue&) = default;
};

inline RUapiValue ruapi(std::int64_t u, std::int64_t n_base) {
    if (n_base < 0) throw InvariantError("API-interaction base N must be non-negative, got " + std::to_string(n_base));
    if (u < 0) throw InvariantError("U must be non-negative, got " + std::to_string(u));
    return {u, n_base, static_cast<double>(u) / static_cast<double>(n_base + 1)};
}

inline RUapiValue ruapi(const UapiProfile& profile, std::int64_t n_base) { return ruapi(profile.root_uapi, n_base); }

}  // namespace apiwatt
