#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apiwatt/error.hpp"
#include "apiwatt/trace.hpp"

namespace apiwatt {

/// One call event: a vertex occurrence of the dynamic call graph. The link
/// to each child is an edge.
struct CallNode {
    MethodId method;
    std::uint64_t thread = 0;
    std::int64_t t_start_ns = 0;
    std::int64_t duration_ns = 0;
    std::vector<CallNode> children;  // in call order

    std::int64_t t_end_ns() const { return t_start_ns + duration_ns; }

    friend bool operator==(const CallNode&, const CallNode&) = default;
};

/// Per-test call forest. Every top-level frame of every thread is a root;
/// roots are ordered by their enter event.
struct CallTree {
    std::string test_name;
    std::uint32_t sample_index = 0;
    std::vector<CallNode> roots;

    friend bool operator==(const CallTree&, const CallTree&) = default;
};

struct MethodInterval {
    MethodId method;
    std::uint64_t thread = 0;
    std::int64_t t_start_ns = 0;
    std::int64_t duration_ns = 0;
    std::size_t depth = 0;
    std::optional<std::size_t> parent;  // index into the same interval sequence
    std::size_t preorder = 0;           // position in for_each_node() order

    friend bool operator==(const MethodInterval&, const MethodInterval&) = default;
};

inline CallTree build_call_trees(const TestTrace& trace) {
    if (auto v = validate_trace(trace); !v.empty())
        throw InvariantError("cannot build call tree for " + trace.test_name + ": " + v.front().message);

    struct PerThread {
        std::vector<CallNode> roots;
        std::vector<std::size_t> root_enter;  // enter event index of each root
        std::vector<CallNode*> stack;
    };
    std::map<std::uint64_t, PerThread> threads;

    for (std::size_t i = 0; i < trace.events.size(); ++i) {
        const auto& ev = trace.events[i];
        auto& th = threads[ev.thread];
        if (ev.kind == EventKind::Enter) {
            CallNode node{ev.method, ev.thread, ev.t_ns, 0, {}};
            // Pushing into a vector that owns no open frame keeps the stack
            // pointers valid: open ancestors live in their parents' vectors.
            if (th.stack.empty()) {
                th.roots.push_back(std::move(node));
                th.root_enter.push_back(i);
                th.stack.push_back(&th.roots.back());
            } else {
                auto& kids = th.stack.back()->children;
                kids.push_back(std::move(node));
                th.stack.push_back(&kids.back());
            }
        } else {
            CallNode* open = th.stack.back();
            open->duration_ns = ev.t_ns - open->t_start_ns;
            th.stack.pop_back();
        }
    }

    std::vector<std::pair<std::size_t, CallNode*>> ordered;
    for (auto& [tid, th] : threads)
        for (std::size_t r = 0; r < th.roots.size(); ++r) ordered.emplace_back(th.root_enter[r], &th.roots[r]);
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    CallTree tree{trace.test_name, trace.sample_index, {}};
    tree.roots.reserve(ordered.size());
    for (auto& [idx, node] : ordered) tree.roots.push_back(std::move(*node));
    return tree;
}

/// ad(v): the call events issued directly by `node`. Repeated calls to the
/// same method appear once per call.
inline std::span<const CallNode> adjacency(const CallNode& node) noexcept { return node.children; }

inline std::size_t subtree_size(const CallNode& node) {
    std::size_t n = 1;
    for (const auto& c : node.children) n += subtree_size(c);
    return n;
}

inline std::size_t node_count(const CallTree& tree) {
    std::size_t n = 0;
    for (const auto& r : tree.roots) n += subtree_size(r);
    return n;
}

/// Visits nodes in pre-order (= enter order within a thread) with depth.
template <typename Visitor>
void for_each_node(const CallTree& tree, Visitor&& visit) {
    struct Item {
        const CallNode* node;
        std::size_t depth;
    };
    std::vector<Item> stack;
    for (const auto& root : tree.roots) {
        stack.push_back({&root, 0});
        while (!stack.empty()) {
            const auto item = stack.back();
            stack.pop_back();
            visit(*item.node, item.depth);
            const auto& kids = item.node->children;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({&*it, item.depth + 1});
        }
    }
}

/// One interval per node, ordered by start time. Ties keep enter order, so a
/// parent always precedes a child that starts at the same instant.
inline std::vector<MethodInterval> method_intervals(const CallTree& tree) {
    std::vector<MethodInterval> pre;
    std::vector<std::optional<std::size_t>> parents;

    struct Item {
        const CallNode* node;
        std::size_t depth;
        std::optional<std::size_t> parent;
    };
    std::vector<Item> stack;
    for (const auto& root : tree.roots) {
        stack.push_back({&root, 0, std::nullopt});
        while (!stack.empty()) {
            const auto item = stack.back();
            stack.pop_back();
            const auto self = pre.size();
            pre.push_back({item.node->method, item.node->thread, item.node->t_start_ns, item.node->duration_ns,
                           item.depth, item.parent, self});
            const auto& kids = item.node->children;
            for (auto it = kids.rbegin(); it != kids.rend(); ++it) stack.push_back({&*it, item.depth + 1, self});
        }
    }

    std::vector<std::size_t> order(pre.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pre[a].t_start_ns < pre[b].t_start_ns; });
    std::vector<std::size_t> new_index(pre.size());
    for (std::size_t i = 0; i < order.size(); ++i) new_index[order[i]] = i;

    std::vector<MethodInterval> out;
    out.reserve(pre.size());
    for (auto idx : order) {
        auto iv = pre[idx];
        if (iv.parent) iv.parent = new_index[*iv.parent];
        out.push_back(std::move(iv));
    }
    return out;
}

}  // namespace apiwatt
