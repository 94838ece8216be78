#include <catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "apiwatt/apimetric.hpp"
#include "apiwatt/callgraph.hpp"
#include "support/oracles.hpp"

using namespace apiwatt;
using Catch::Approx;

namespace {

CallNode node(MethodId m, std::vector<CallNode> kids = {}) {
    CallNode n;
    n.method = std::move(m);
    n.thread = 1;
    n.children = std::move(kids);
    return n;
}

CallTree tree_of(CallNode root) {
    CallTree t;
    t.test_name = "com.example.FooTest::testBar";
    t.roots.push_back(std::move(root));
    return t;
}

const MethodId kRoot{"com.example", "FooTest", "testBar"};
const MethodId kHelper{"com.example", "Helper", "work"};
const MethodId kApi1{"java.util", "HashMap", "put"};
const MethodId kApi2{"android.util", "Log", "d"};

}  // namespace

TEST_CASE("classify") {
    const auto c = ApiClassifier::android_platform();
    CHECK(classify({"java.util", "LinkedHashMap", "put"}, c) == "java");
    CHECK_FALSE(classify({"com.google.gson", "Gson", "toJson"}, ApiClassifier({{"android.", "android"}, {"java.", "java"}})));
    CHECK_FALSE(classify({"javafoo", "Bar", "m"}, c));  // prefix is matched with its dot

    const ApiClassifier nested({{"java.", "java"}, {"java.util.", "collections"}});
    CHECK(classify({"java.util", "X", "m"}, nested) == "collections");
    CHECK(classify({"java.io", "X", "m"}, nested) == "java");
}

TEST_CASE("classifier rules are validated") {
    CHECK_THROWS_AS(ApiClassifier(std::vector<ApiRule>{{"", "x"}}), ConfigError);
    CHECK_THROWS_AS(ApiClassifier(std::vector<ApiRule>{{"java.", ""}}), ConfigError);
    CHECK_THROWS_AS(ApiClassifier(std::vector<ApiRule>{{"java.", "a"}, {"java.", "b"}}), ConfigError);
    CHECK(ApiClassifier(std::vector<ApiRule>{}).rules().empty());
}

TEST_CASE("U on hand-evaluated trees") {
    const auto c = ApiClassifier::android_platform();

    auto p = uapi(tree_of(node(kRoot)), c);
    CHECK(p.root_uapi == 0);
    CHECK(p.total_api_interactions == 0);

    p = uapi(tree_of(node(kRoot, {node(kApi1)})), c);
    CHECK(p.root_uapi == 2);
    CHECK(p.node_values == std::vector<std::int64_t>{2, 1});

    p = uapi(tree_of(node(kRoot, {node(kApi1), node(kHelper, {node(kApi2)})})), c);
    CHECK(p.root_uapi == 4);
    CHECK(p.total_api_interactions == 2);
    CHECK(p.node_values == std::vector<std::int64_t>{4, 1, 2, 1});  // root, api1, helper, api2
    CHECK(ruapi(p, p.total_api_interactions).value == Approx(4.0 / 3.0));
    CHECK(p.method_values.at(kHelper) == 2);
}

TEST_CASE("API subtrees are pruned") {
    const auto c = ApiClassifier::android_platform();
    const auto p = uapi(tree_of(node(kRoot, {node(kApi1, {node(kApi2), node(kHelper, {node(kApi2)})})})), c);
    CHECK(p.root_uapi == 2);
    CHECK(p.total_api_interactions == 1);
    CHECK(p.api_distribution == std::map<std::string, std::int64_t>{{"java", 1}});
    CHECK(p.node_values == std::vector<std::int64_t>{2, 1, 0, 0, 0});
}

TEST_CASE("helper without API below contributes nothing") {
    const auto c = ApiClassifier::android_platform();
    const auto p = uapi(tree_of(node(kRoot, {node(kHelper, {node(kHelper)}), node(kApi1)})), c);
    CHECK(p.root_uapi == 2);
    CHECK(p.node_values == std::vector<std::int64_t>{2, 0, 0, 1});
}

TEST_CASE("roots of several threads are summed") {
    const auto c = ApiClassifier::android_platform();
    CallTree t = tree_of(node(kRoot, {node(kApi1)}));
    auto second = node(kHelper, {node(kApi2), node(kApi2)});
    second.thread = 2;
    t.roots.push_back(second);
    const auto p = uapi(t, c);
    CHECK(p.root_uapi == 2 + 3);
    CHECK(p.total_api_interactions == 3);
}

TEST_CASE("ruapi") {
    CHECK(ruapi(0, 17).value == 0.0);
    CHECK(ruapi(4, 2).value == Approx(1.3333).epsilon(1e-4));
    CHECK(ruapi(2, 1).value == 1.0);
    CHECK(ruapi(3, 0).value == 3.0);
    const auto v = ruapi(5, 9);
    CHECK(v.numerator == 5);
    CHECK(v.n_base == 9);
    CHECK_THROWS_AS(ruapi(1, -1), InvariantError);
    CHECK_THROWS_AS(ruapi(-1, 1), InvariantError);
}

TEST_CASE("api_distribution") {
    const auto c = ApiClassifier::android_platform();
    CHECK(api_distribution(tree_of(node(kRoot, {node(kHelper)})), c).empty());
    const auto d = api_distribution(
        tree_of(node(kRoot, {node(kApi1), node({"java.lang", "String", "trim"}), node(kApi2)})), c);
    CHECK(d == std::map<std::string, std::int64_t>{{"android", 1}, {"java", 2}});
}

TEST_CASE("brute-force oracle agreement and metric laws on random trees") {
    const auto c = ApiClassifier::android_platform();
    std::mt19937_64 rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double p_api = (i % 5) * 0.1;  // includes API-free trees
        auto t = oracle::random_tree(rng, {200, 8, p_api});
        const auto p = uapi(t, c);
        REQUIRE(p.root_uapi == oracle::brute_u(t));
        REQUIRE(p.total_api_interactions == oracle::brute_api_count(t.roots[0]));

        std::int64_t dist = 0;
        for (const auto& [label, n] : p.api_distribution) dist += n;
        CHECK(dist == p.total_api_interactions);
        CHECK((p.root_uapi == 0) == !oracle::contains_api(t.roots[0]));

        CHECK(p.node_values == oracle::brute_node_values(t));

        // Adding an API leaf under any node outside an API subtree raises U.
        std::vector<CallNode*> hosts;
        auto collect = [&](auto&& self, CallNode& n) -> void {
            if (oracle::is_api(n.method)) return;
            hosts.push_back(&n);
            for (auto& ch : n.children) self(self, ch);
        };
        collect(collect, t.roots[0]);
        auto* host = hosts[std::uniform_int_distribution<std::size_t>(0, hosts.size() - 1)(rng)];
        host->children.push_back(node(kApi2));
        CHECK(uapi(t, c).root_uapi > p.root_uapi);
    }
}

TEST_CASE("rU ordering equals U ordering for a fixed N") {
    std::vector<std::int64_t> us = {7, 0, 3, 12, 3, 1};
    std::vector<double> rs;
    for (auto u : us) rs.push_back(ruapi(u, 40).value);
    for (std::size_t i = 0; i < us.size(); ++i)
        for (std::size_t j = 0; j < us.size(); ++j) CHECK((us[i] < us[j]) == (rs[i] < rs[j]));
}
