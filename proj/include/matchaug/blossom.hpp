#pragma once

#include <vector>

namespace matchaug {

// Maximum-cardinality matching in a general graph (blossom contraction).
// Returns the mate array (-1 for exposed nodes). Deterministic: greedy
// initialization and BFS both scan adjacency lists in insertion order.
class BlossomMatcher {
public:
    explicit BlossomMatcher(int node_count) : n_(node_count), adj_(node_count) {}

    void add_edge(int u, int v) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
    }

    const std::vector<int>& solve();
    int matched_pairs() const { return matched_pairs_; }

private:
    bool find_augmenting_path(int root);
    int lowest_common_base(int a, int b);
    void mark_path(int v, int b, int child);

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> mate_, parent_, base_, queue_;
    std::vector<char> used_, blossom_;
    int matched_pairs_ = 0;
};

}  // namespace matchaug
