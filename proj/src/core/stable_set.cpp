#include "core/stable_set.hpp"

#include <algorithm>
#include <numeric>

namespace exg {

namespace {

class Solver {
public:
    explicit Solver(const ExclusivityGraph& g)
        : n_(g.vertex_count()), words_((n_ + 63) / 64) {
        order_.resize(static_cast<std::size_t>(n_));
        std::iota(order_.begin(), order_.end(), 0);
        std::sort(order_.begin(), order_.end(), [&](int a, int b) {
            if (g.weight(a) != g.weight(b)) return g.weight(a) > g.weight(b);
            if (g.degree(a) != g.degree(b)) return g.degree(a) > g.degree(b);
            return a < b;
        });
        std::vector<int> slot(static_cast<std::size_t>(n_));
        for (int i = 0; i < n_; ++i) slot[static_cast<std::size_t>(order_[static_cast<std::size_t>(i)])] = i;
        weight_.resize(static_cast<std::size_t>(n_));
        adj_.assign(static_cast<std::size_t>(n_) * words_, 0);
        for (int i = 0; i < n_; ++i) {
            int v = order_[static_cast<std::size_t>(i)];
            weight_[static_cast<std::size_t>(i)] = g.weight(v);
            const std::uint64_t* r = g.row(v);
            for (int w = 0; w < g.words_per_row(); ++w) {
                std::uint64_t bits = r[w];
                while (bits) {
                    int u = w * 64 + __builtin_ctzll(bits);
                    bits &= bits - 1;
                    int j = slot[static_cast<std::size_t>(u)];
                    adj_[static_cast<std::size_t>(i) * words_ + (j >> 6)] |= 1ULL << (j & 63);
                }
            }
        }
        candidates_.assign(static_cast<std::size_t>(n_ + 1) * words_, 0);
        clique_common_.assign(static_cast<std::size_t>(n_) * words_, 0);
        current_.reserve(static_cast<std::size_t>(n_));
    }

    StableSetResult run() {
        StableSetResult res;
        if (n_ == 0) return res;
        std::uint64_t* root = slot_ptr(0);
        for (int v = 0; v < n_; ++v) root[v >> 6] |= 1ULL << (v & 63);
        search(root, 0.0, 0);
        res.value = best_;
        res.nodes_expanded = nodes_;
        res.vertices.reserve(best_set_.size());
        for (int i : best_set_) res.vertices.push_back(order_[static_cast<std::size_t>(i)]);
        std::sort(res.vertices.begin(), res.vertices.end());
        return res;
    }

private:
    std::uint64_t* slot_ptr(int depth) {
        return candidates_.data() + static_cast<std::size_t>(depth) * words_;
    }

    const std::uint64_t* neighbors(int v) const {
        return adj_.data() + static_cast<std::size_t>(v) * words_;
    }

    // Greedy clique cover of the candidate set. Vertices arrive in descending
    // weight order, so the vertex that opens a clique carries its maximum and
    // the bound is the sum of opener weights. Gives up (returning the partial
    // sum) once the bound can no longer trigger a prune.
    double cover_bound(const std::uint64_t* cand, double needed) {
        int cliques = 0;
        double bound = 0.0;
        for (int w = 0; w < words_; ++w) {
            std::uint64_t bits = cand[w];
            while (bits) {
                int v = w * 64 + __builtin_ctzll(bits);
                bits &= bits - 1;
                bool placed = false;
                for (int k = 0; k < cliques; ++k) {
                    std::uint64_t* common = clique_common_.data() + static_cast<std::size_t>(k) * words_;
                    if ((common[v >> 6] >> (v & 63)) & 1ULL) {
                        for (int t = 0; t < words_; ++t) common[t] &= neighbors(v)[t];
                        placed = true;
                        break;
                    }
                }
                if (!placed) {
                    std::uint64_t* common = clique_common_.data() + static_cast<std::size_t>(cliques) * words_;
                    std::copy(neighbors(v), neighbors(v) + words_, common);
                    bound += weight_[static_cast<std::size_t>(v)];
                    cliques++;
                    if (bound > needed) return bound;
                }
            }
        }
        return bound;
    }

    void search(std::uint64_t* cand, double current_weight, int depth) {
        nodes_++;
        if (current_weight > best_) {
            best_ = current_weight;
            best_set_ = current_;
        }
        for (;;) {
            int v = -1;
            for (int w = 0; w < words_; ++w) {
                if (cand[w]) {
                    v = w * 64 + __builtin_ctzll(cand[w]);
                    break;
                }
            }
            if (v < 0) return;
            double needed = best_ - current_weight;
            if (cover_bound(cand, needed) <= needed) return;
            cand[v >> 6] &= ~(1ULL << (v & 63));
            std::uint64_t* child = slot_ptr(depth + 1);
            const std::uint64_t* nb = neighbors(v);
            for (int w = 0; w < words_; ++w) child[w] = cand[w] & ~nb[w];
            current_.push_back(v);
            search(child, current_weight + weight_[static_cast<std::size_t>(v)], depth + 1);
            current_.pop_back();
        }
    }

    int n_;
    int words_;
    std::vector<int> order_;
    std::vector<double> weight_;
    std::vector<std::uint64_t> adj_;
    std::vector<std::uint64_t> candidates_;
    std::vector<std::uint64_t> clique_common_;
    std::vector<int> current_;
    std::vector<int> best_set_;
    double best_ = -1.0;
    std::uint64_t nodes_ = 0;
};

} // namespace

StableSetResult max_stable_set(const ExclusivityGraph& g) {
    Solver solver(g);
    return solver.run();
}

} // namespace exg
