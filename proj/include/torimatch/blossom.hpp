#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace torimatch {

struct PerfectMatching {
    // Node index pairs (i < j), sorted by first element, covering 0..n-1.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
    long long total_weight = 0;
};

namespace detail {

/// Primal-dual maximum-weight general matching, the classic O(n^3) blossom
/// scheme: grow alternating forests from free vertices, shrink odd cycles
/// into blossom pseudo-nodes, adjust dual labels when the forest is stuck.
/// Vertices are 1..n internally; ids n+1..2n are blossoms. Deterministic.
class MaxWeightMatcher {
  public:
    explicit MaxWeightMatcher(int n) : n_(n), n_x_(n) {
        int m = 2 * n + 1;
        g_.assign(std::size_t(m) * m, Arc{});
        lab_.assign(m, 0);
        match_.assign(m, 0);
        slack_.assign(m, 0);
        st_.assign(m, 0);
        pa_.assign(m, 0);
        s_.assign(m, 0);
        vis_.assign(m, 0);
        flower_.assign(m, {});
        flower_from_.assign(std::size_t(m) * (n + 1), 0);
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= n; ++v)
                arc(u, v) = Arc{u, v, 0};
    }

    /// u, v in 1..n. Weights must be positive (0 means "no edge").
    void add_edge(int u, int v, long long w) {
        arc(u, v).w = w;
        arc(v, u).w = w;
    }

    /// Runs the solver; afterwards mate(u) gives the partner of u (0 if
    /// unmatched). Returns the total weight of the matching found.
    long long solve() {
        std::fill(match_.begin(), match_.end(), 0);
        n_x_ = n_;
        for (int u = 0; u <= n_; ++u) {
            st_[u] = u;
            flower_[u].clear();
        }
        long long w_max = 0;
        for (int u = 1; u <= n_; ++u)
            for (int v = 1; v <= n_; ++v) {
                flower_from(u, v) = (u == v ? u : 0);
                w_max = std::max(w_max, arc(u, v).w);
            }
        for (int u = 1; u <= n_; ++u)
            lab_[u] = w_max;
        while (grow_forest()) {
        }
        long long total = 0;
        for (int u = 1; u <= n_; ++u)
            if (match_[u] && match_[u] < u)
                total += arc(u, match_[u]).w;
        return total;
    }

    int mate(int u) const { return match_[u]; }

  private:
    static constexpr long long kInf = std::numeric_limits<long long>::max() / 4;

    struct Arc {
        int u = 0, v = 0;
        long long w = 0;
    };

    int n_, n_x_;
    std::vector<Arc> g_;
    std::vector<long long> lab_;
    std::vector<int> match_, slack_, st_, pa_, s_, vis_;
    std::vector<std::vector<int>> flower_;
    std::vector<int> flower_from_;
    std::deque<int> q_;
    int timestamp_ = 0;

    Arc &arc(int u, int v) { return g_[std::size_t(u) * (2 * n_ + 1) + v]; }
    const Arc &arc(int u, int v) const { return g_[std::size_t(u) * (2 * n_ + 1) + v]; }
    int &flower_from(int b, int x) { return flower_from_[std::size_t(b) * (n_ + 1) + x]; }

    long long e_delta(const Arc &e) const { return lab_[e.u] + lab_[e.v] - arc(e.u, e.v).w * 2; }

    void update_slack(int u, int x) {
        if (!slack_[x] || e_delta(arc(u, x)) < e_delta(arc(slack_[x], x)))
            slack_[x] = u;
    }

    void set_slack(int x) {
        slack_[x] = 0;
        for (int u = 1; u <= n_; ++u)
            if (arc(u, x).w > 0 && st_[u] != x && s_[st_[u]] == 0)
                update_slack(u, x);
    }

    void q_push(int x) {
        if (x <= n_) {
            q_.push_back(x);
        } else {
            for (int y : flower_[x])
                q_push(y);
        }
    }

    void set_st(int x, int b) {
        st_[x] = b;
        if (x > n_)
            for (int y : flower_[x])
                set_st(y, b);
    }

    /// Position of sub-blossom xr inside b's cycle, made even by flipping
    /// the cycle's direction if needed (so the base-to-xr path alternates
    /// correctly).
    int get_pr(int b, int xr) {
        auto &f = flower_[b];
        int pr = int(std::find(f.begin(), f.end(), xr) - f.begin());
        if (pr % 2 == 1) {
            std::reverse(f.begin() + 1, f.end());
            return int(f.size()) - pr;
        }
        return pr;
    }

    void set_match(int u, int v) {
        match_[u] = arc(u, v).v;
        if (u > n_) {
            Arc e = arc(u, v);
            int xr = flower_from(u, e.u);
            int pr = get_pr(u, xr);
            for (int i = 0; i < pr; ++i)
                set_match(flower_[u][i], flower_[u][i ^ 1]);
            set_match(xr, v);
            std::rotate(flower_[u].begin(), flower_[u].begin() + pr, flower_[u].end());
        }
    }

    void augment(int u, int v) {
        for (;;) {
            int xnv = st_[match_[u]];
            set_match(u, v);
            if (!xnv)
                return;
            set_match(xnv, st_[pa_[xnv]]);
            u = st_[pa_[xnv]];
            v = xnv;
        }
    }

    int get_lca(int u, int v) {
        for (++timestamp_; u || v; std::swap(u, v)) {
            if (u == 0)
                continue;
            if (vis_[u] == timestamp_)
                return u;
            vis_[u] = timestamp_;
            u = st_[match_[u]];
            if (u)
                u = st_[pa_[u]];
        }
        return 0;
    }

    void add_blossom(int u, int lca, int v) {
        int b = n_ + 1;
        while (b <= n_x_ && st_[b])
            ++b;
        if (b > n_x_)
            ++n_x_;
        lab_[b] = 0;
        s_[b] = 0;
        match_[b] = match_[lca];
        flower_[b].clear();
        flower_[b].push_back(lca);
        for (int x = u, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        std::reverse(flower_[b].begin() + 1, flower_[b].end());
        for (int x = v, y; x != lca; x = st_[pa_[y]]) {
            flower_[b].push_back(x);
            flower_[b].push_back(y = st_[match_[x]]);
            q_push(y);
        }
        set_st(b, b);
        for (int x = 1; x <= n_x_; ++x) {
            arc(b, x).w = 0;
            arc(x, b).w = 0;
        }
        for (int x = 1; x <= n_; ++x)
            flower_from(b, x) = 0;
        for (int xs : flower_[b]) {
            for (int x = 1; x <= n_x_; ++x)
                if (arc(b, x).w == 0 || e_delta(arc(xs, x)) < e_delta(arc(b, x))) {
                    arc(b, x) = arc(xs, x);
                    arc(x, b) = arc(x, xs);
                }
            for (int x = 1; x <= n_; ++x)
                if (flower_from(xs, x))
                    flower_from(b, x) = xs;
        }
        set_slack(b);
    }

    void expand_blossom(int b) {
        for (int xs : flower_[b])
            set_st(xs, xs);
        int xr = flower_from(b, arc(b, pa_[b]).u);
        int pr = get_pr(b, xr);
        for (int i = 0; i < pr; i += 2) {
            int xs = flower_[b][i];
            int xns = flower_[b][i + 1];
            pa_[xs] = arc(xns, xs).u;
            s_[xs] = 1;
            s_[xns] = 0;
            slack_[xs] = 0;
            set_slack(xns);
            q_push(xns);
        }
        s_[xr] = 1;
        pa_[xr] = pa_[b];
        for (std::size_t i = pr + 1; i < flower_[b].size(); ++i) {
            int xs = flower_[b][int(i)];
            s_[xs] = -1;
            set_slack(xs);
        }
        st_[b] = 0;
    }

    bool on_found_edge(const Arc &e) {
        int u = st_[e.u];
        int v = st_[e.v];
        if (s_[v] == -1) {
            pa_[v] = e.u;
            s_[v] = 1;
            int nu = st_[match_[v]];
            slack_[v] = 0;
            slack_[nu] = 0;
            s_[nu] = 0;
            q_push(nu);
        } else if (s_[v] == 0) {
            int lca = get_lca(u, v);
            if (!lca) {
                augment(u, v);
                augment(v, u);
                return true;
            }
            add_blossom(u, lca, v);
        }
        return false;
    }

    /// One phase: grow the forest until an augmenting path is found (true)
    /// or the duals prove no augmentation can help (false).
    bool grow_forest() {
        std::fill(s_.begin(), s_.begin() + n_x_ + 1, -1);
        std::fill(slack_.begin(), slack_.begin() + n_x_ + 1, 0);
        q_.clear();
        for (int x = 1; x <= n_x_; ++x)
            if (st_[x] == x && !match_[x]) {
                pa_[x] = 0;
                s_[x] = 0;
                q_push(x);
            }
        if (q_.empty())
            return false;
        for (;;) {
            while (!q_.empty()) {
                int u = q_.front();
                q_.pop_front();
                if (s_[st_[u]] == 1)
                    continue;
                for (int v = 1; v <= n_; ++v)
                    if (arc(u, v).w > 0 && st_[u] != st_[v]) {
                        if (e_delta(arc(u, v)) == 0) {
                            if (on_found_edge(arc(u, v)))
                                return true;
                        } else {
                            update_slack(u, st_[v]);
                        }
                    }
            }
            long long d = kInf;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1)
                    d = std::min(d, lab_[b] / 2);
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x]) {
                    if (s_[x] == -1)
                        d = std::min(d, e_delta(arc(slack_[x], x)));
                    else if (s_[x] == 0)
                        d = std::min(d, e_delta(arc(slack_[x], x)) / 2);
                }
            for (int u = 1; u <= n_; ++u) {
                if (s_[st_[u]] == 0) {
                    if (lab_[u] <= d)
                        return false;
                    lab_[u] -= d;
                } else if (s_[st_[u]] == 1) {
                    lab_[u] += d;
                }
            }
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b) {
                    if (s_[b] == 0)
                        lab_[b] += d * 2;
                    else if (s_[b] == 1)
                        lab_[b] -= d * 2;
                }
            q_.clear();
            for (int x = 1; x <= n_x_; ++x)
                if (st_[x] == x && slack_[x] && st_[slack_[x]] != x &&
                    e_delta(arc(slack_[x], x)) == 0)
                    if (on_found_edge(arc(slack_[x], x)))
                        return true;
            for (int b = n_ + 1; b <= n_x_; ++b)
                if (st_[b] == b && s_[b] == 1 && lab_[b] == 0)
                    expand_blossom(b);
        }
    }
};

}  // namespace detail

/// Exact minimum-weight perfect matching on the complete graph over n nodes
/// (n even) with non-negative integer weights given as a flat n*n matrix.
/// Implemented by negating weights against (max+1) and running the
/// maximum-weight matcher: with all transformed weights positive, a maximum
/// matching on an even complete graph is necessarily perfect.
inline PerfectMatching min_weight_perfect_matching(int n, const std::vector<long long> &w) {
    if (n < 0 || n % 2 != 0)
        throw std::invalid_argument("perfect matching needs an even node count, got " +
                                    std::to_string(n));
    if (w.size() != std::size_t(n) * n)
        throw std::invalid_argument("weight matrix must be n*n");
    PerfectMatching out;
    if (n == 0)
        return out;
    long long w_max = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            long long wij = w[std::size_t(i) * n + j];
            if (wij < 0)
                throw std::invalid_argument("matching weights must be non-negative");
            w_max = std::max(w_max, wij);
        }
    detail::MaxWeightMatcher matcher(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            matcher.add_edge(i + 1, j + 1, w_max + 1 - w[std::size_t(i) * n + j]);
    matcher.solve();
    for (int u = 1; u <= n; ++u) {
        int v = matcher.mate(u);
        if (v == 0)
            throw std::runtime_error("matcher failed to produce a perfect matching");
        if (u < v) {
            out.pairs.emplace_back(u - 1, v - 1);
            out.total_weight += w[std::size_t(u - 1) * n + (v - 1)];
        }
    }
    return out;
}

}  // namespace torimatch
