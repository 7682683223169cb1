#pragma once

#include <string>
#include <vector>

#include "qslab/protocol/transcript.hpp"
#include "qslab/reduction.hpp"

namespace qslab {

// Binary decision tree whose inner nodes evaluate query matrices over one
// shared input domain; answer 0 walks left, 1 walks right.
struct ProtocolTree {
    struct Node {
        int query = -1;  // index into queries, -1 marks a leaf
        int left = -1;
        int right = -1;
        int leaf_value = -1;

        bool is_leaf() const { return query < 0; }
    };

    std::vector<Node> nodes;  // nodes[0] is the root
    std::vector<BitMatrix> queries;

    static ProtocolTree single_query(BitMatrix q, int left_leaf = 0, int right_leaf = 1) {
        ProtocolTree t;
        t.queries.push_back(std::move(q));
        t.nodes.push_back({0, 1, 2, -1});
        t.nodes.push_back({-1, -1, -1, left_leaf});
        t.nodes.push_back({-1, -1, -1, right_leaf});
        return t;
    }
};

namespace detail {

inline int validate_tree_from(const ProtocolTree& t, int node, std::vector<char>& visited, int depth) {
    if (node < 0 || node >= static_cast<int>(t.nodes.size())) throw domain_error("tree child index out of range");
    if (visited[node]) throw domain_error("tree node reachable twice");
    visited[node] = 1;
    const auto& n = t.nodes[node];
    if (n.is_leaf()) {
        if (n.leaf_value != 0 && n.leaf_value != 1) throw domain_error("leaf output must be 0 or 1");
        return depth;
    }
    if (n.query >= static_cast<int>(t.queries.size())) throw domain_error("tree query index out of range");
    const BitMatrix& q = t.queries[n.query];
    const BitMatrix& root_q = t.queries[t.nodes[0].query];
    if (q.rows() != root_q.rows() || q.cols() != root_q.cols()) {
        throw domain_error("tree queries must share one input domain");
    }
    const int l = validate_tree_from(t, n.left, visited, depth + 1);
    const int r = validate_tree_from(t, n.right, visited, depth + 1);
    return std::max(l, r);
}

}  // namespace detail

// Height of a well-formed tree; throws on malformed trees.
inline int validate_tree(const ProtocolTree& t) {
    if (t.nodes.empty()) throw domain_error("tree has no nodes");
    std::vector<char> visited(t.nodes.size(), 0);
    return detail::validate_tree_from(t, 0, visited, 0);
}

struct TreeRun {
    int output = 0;
    Transcript transcript;
};

// Walks the tree on one input pair; the transcript grows by one entry per
// inner node on the path.
inline TreeRun eval_protocol(const ProtocolTree& t, std::size_t x, std::size_t y) {
    validate_tree(t);
    if (!t.nodes[0].is_leaf()) {
        const BitMatrix& domain = t.queries[t.nodes[0].query];
        if (x >= domain.rows() || y >= domain.cols()) throw domain_error("input outside the tree's domain");
    }
    TreeRun run;
    int node = 0;
    while (!t.nodes[node].is_leaf()) {
        const auto& n = t.nodes[node];
        const int answer = t.queries[n.query].get(x, y) ? 1 : 0;
        run.transcript.entries.push_back(
            {"Q" + std::to_string(n.query), "node " + std::to_string(node), answer, 0, 0});
        node = answer ? n.right : n.left;
    }
    run.output = t.nodes[node].leaf_value;
    return run;
}

// Rewrites the tree as one boolean combination of all its node queries: the
// combiner replays the walk using the precomputed answers. Query i is the
// i-th inner node in preorder.
inline ReductionWitness flatten_protocol(const ProtocolTree& t) {
    const int height = validate_tree(t);
    if (height > 16) throw budget_error("tree height exceeds the flattening budget of 16");
    std::vector<int> inner_order(t.nodes.size(), -1);
    std::vector<int> preorder;
    auto walk = [&](auto&& self, int node) -> void {
        if (t.nodes[node].is_leaf()) return;
        inner_order[node] = static_cast<int>(preorder.size());
        preorder.push_back(node);
        self(self, t.nodes[node].left);
        self(self, t.nodes[node].right);
    };
    walk(walk, 0);
    const int c = static_cast<int>(preorder.size());
    if (c > 20) throw budget_error("tree has too many inner nodes to tabulate");

    ReductionWitness w;
    for (int node : preorder) w.queries.push_back(t.queries[t.nodes[node].query]);
    w.f.arity = c;
    w.f.table.resize(std::size_t{1} << c);
    for (std::uint32_t answers = 0; answers < (std::uint32_t{1} << c); ++answers) {
        int node = 0;
        while (!t.nodes[node].is_leaf()) {
            const int bit = (answers >> inner_order[node]) & 1u;
            node = bit ? t.nodes[node].right : t.nodes[node].left;
        }
        w.f.table[answers] = static_cast<std::uint8_t>(t.nodes[node].leaf_value);
    }
    return w;
}

}  // namespace qslab
