#include "matchaug/blossom.hpp"

#include <algorithm>

namespace matchaug {

const std::vector<int>& BlossomMatcher::solve() {
    mate_.assign(n_, -1);
    matched_pairs_ = 0;
    for (int v = 0; v < n_; ++v) {
        if (mate_[v] != -1) continue;
        for (int to : adj_[v]) {
            if (mate_[to] == -1) {
                mate_[v] = to;
                mate_[to] = v;
                ++matched_pairs_;
                break;
            }
        }
    }
    for (int v = 0; v < n_; ++v)
        if (mate_[v] == -1 && find_augmenting_path(v)) ++matched_pairs_;
    return mate_;
}

void BlossomMatcher::mark_path(int v, int b, int child) {
    while (base_[v] != b) {
        blossom_[base_[v]] = 1;
        blossom_[base_[mate_[v]]] = 1;
        parent_[v] = child;
        child = mate_[v];
        v = parent_[mate_[v]];
    }
}

int BlossomMatcher::lowest_common_base(int a, int b) {
    std::vector<char> seen(n_, 0);
    int v = a;
    for (;;) {
        v = base_[v];
        seen[v] = 1;
        if (mate_[v] == -1) break;
        v = parent_[mate_[v]];
    }
    v = b;
    for (;;) {
        v = base_[v];
        if (seen[v]) return v;
        v = parent_[mate_[v]];
    }
}

bool BlossomMatcher::find_augmenting_path(int root) {
    used_.assign(n_, 0);
    parent_.assign(n_, -1);
    base_.resize(n_);
    for (int i = 0; i < n_; ++i) base_[i] = i;
    queue_.clear();
    queue_.push_back(root);
    used_[root] = 1;
    for (size_t head = 0; head < queue_.size(); ++head) {
        int v = queue_[head];
        for (int to : adj_[v]) {
            if (base_[v] == base_[to] || mate_[v] == to) continue;
            if (to == root || (mate_[to] != -1 && parent_[mate_[to]] != -1)) {
                int cur_base = lowest_common_base(v, to);
                blossom_.assign(n_, 0);
                mark_path(v, cur_base, to);
                mark_path(to, cur_base, v);
                for (int i = 0; i < n_; ++i) {
                    if (blossom_[base_[i]]) {
                        base_[i] = cur_base;
                        if (!used_[i]) {
                            used_[i] = 1;
                            queue_.push_back(i);
                        }
                    }
                }
            } else if (parent_[to] == -1) {
                parent_[to] = v;
                if (mate_[to] == -1) {
                    // Augment along the alternating path ending at `to`.
                    int u = to;
                    while (u != -1) {
                        int pv = parent_[u];
                        int ppv = mate_[pv];
                        mate_[u] = pv;
                        mate_[pv] = u;
                        u = ppv;
                    }
                    return true;
                }
                used_[mate_[to]] = 1;
                queue_.push_back(mate_[to]);
            }
        }
    }
    return false;
}

}  // namespace matchaug
