#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "torimatch/blossom.hpp"
#include "torimatch/tiling.hpp"

namespace torimatch {

/// Edges whose traversal cost is zero when measuring distances (they are
/// known to be corrupted, so paths may use them for free). Sorted ids.
struct ErasureSet {
    std::vector<edge_index> erased;

    static ErasureSet from_edges(std::vector<edge_index> ids, std::uint32_t n_edges) {
        std::sort(ids.begin(), ids.end());
        ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
        if (!ids.empty() && ids.back() >= n_edges)
            throw std::invalid_argument("erasure: edge id out of range");
        return ErasureSet{std::move(ids)};
    }

    std::vector<std::uint8_t> mask(std::uint32_t n_edges) const {
        std::vector<std::uint8_t> m(n_edges, 0);
        for (edge_index e : erased) {
            if (e >= n_edges)
                throw std::invalid_argument("erasure: edge id out of range");
            m[e] = 1;
        }
        return m;
    }
};

inline constexpr std::int32_t kUnreached = std::numeric_limits<std::int32_t>::max();

/// Distances from one source where erased edges cost 0 and all others 1,
/// plus a predecessor edge per vertex for path recovery. Predecessors are
/// assigned at relaxation time from already-settled vertices, which keeps
/// the predecessor graph acyclic even inside zero-cost erased clusters and
/// makes recovered paths deterministic.
struct ShortestPaths {
    std::vector<std::int32_t> dist;
    std::vector<std::int32_t> pred_edge;  // -1 at the source
};

namespace detail {

inline ShortestPaths zero_one_bfs(const Tiling &t, vertex_index source,
                                  const std::vector<std::uint8_t> &erased) {
    ShortestPaths sp;
    sp.dist.assign(t.n_vertices, kUnreached);
    sp.pred_edge.assign(t.n_vertices, -1);
    sp.dist[source] = 0;
    std::deque<std::pair<vertex_index, std::int32_t>> dq;
    dq.emplace_back(source, 0);
    while (!dq.empty()) {
        auto [v, dv] = dq.front();
        dq.pop_front();
        if (dv != sp.dist[v])
            continue;  // stale entry
        for (std::uint32_t k = t.adj_offset[v]; k < t.adj_offset[v + 1]; ++k) {
            vertex_index u = t.adj_vertex[k];
            edge_index e = t.adj_edge[k];
            std::int32_t w = erased[e] ? 0 : 1;
            if (dv + w < sp.dist[u]) {
                sp.dist[u] = dv + w;
                sp.pred_edge[u] = std::int32_t(e);
                if (w == 0)
                    dq.emplace_front(u, dv);
                else
                    dq.emplace_back(u, dv + 1);
            }
        }
    }
    return sp;
}

}  // namespace detail

/// Single-source distances with erased edges free of charge.
inline ShortestPaths e_shortest_paths(const Tiling &t, vertex_index source,
                                      const ErasureSet &erasure) {
    if (source >= t.n_vertices)
        throw std::invalid_argument("e_shortest_paths: source vertex out of range");
    return detail::zero_one_bfs(t, source, erasure.mask(t.n_edges()));
}

/// Edge list of one shortest path from the sweep's source to `target`,
/// reconstructed from the predecessor chain. Sorted by edge id.
inline std::vector<edge_index> recover_path(const Tiling &t, const ShortestPaths &sp,
                                            vertex_index target) {
    if (target >= t.n_vertices)
        throw std::invalid_argument("recover_path: target vertex out of range");
    if (sp.dist[target] == kUnreached)
        throw std::invalid_argument("recover_path: target is unreachable");
    std::vector<edge_index> path;
    vertex_index v = target;
    while (sp.pred_edge[v] >= 0) {
        edge_index e = edge_index(sp.pred_edge[v]);
        path.push_back(e);
        v = t.edges[e].a == v ? t.edges[e].b : t.edges[e].a;
    }
    std::sort(path.begin(), path.end());
    return path;
}

/// Complete graph over the violated checks of one syndrome half: node i is
/// syndrome vertex nodes[i], weights are pairwise distances (erased edges
/// free), and the per-node sweeps are kept for geodesic recovery.
struct DistanceGraph {
    std::vector<vertex_index> nodes;
    std::vector<std::int32_t> weight;  // n*n, symmetric, zero diagonal
    std::vector<ShortestPaths> sweeps;

    std::size_t n() const { return nodes.size(); }
    std::int32_t w(std::size_t i, std::size_t j) const { return weight[i * nodes.size() + j]; }
};

inline DistanceGraph build_distance_graph(const Tiling &t, const std::vector<vertex_index> &s,
                                          const ErasureSet &erasure) {
    if (s.size() % 2 != 0)
        throw std::invalid_argument("syndrome has odd weight, cannot be matched");
    if (!std::is_sorted(s.begin(), s.end()) ||
        std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("syndrome vertices must be sorted and unique");
    if (!s.empty() && s.back() >= t.n_vertices)
        throw std::invalid_argument("syndrome vertex out of range");

    DistanceGraph k;
    k.nodes = s;
    std::size_t n = s.size();
    k.weight.assign(n * n, 0);
    k.sweeps.reserve(n);
    auto mask = erasure.mask(t.n_edges());
    for (std::size_t i = 0; i < n; ++i)
        k.sweeps.push_back(detail::zero_one_bfs(t, s[i], mask));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            k.weight[i * n + j] = k.sweeps[i].dist[s[j]];
    return k;
}

/// Geodesic between matched nodes i and j of the distance graph.
inline std::vector<edge_index> geodesic(const Tiling &t, const DistanceGraph &k, std::size_t i,
                                        std::size_t j) {
    return recover_path(t, k.sweeps.at(i), k.nodes.at(j));
}

/// Minimum-weight perfect matching of the distance graph via the blossom
/// matcher.
inline PerfectMatching mwpm(const DistanceGraph &k) {
    std::size_t n = k.n();
    std::vector<long long> w(n * n);
    for (std::size_t i = 0; i < n * n; ++i) {
        if (k.weight[i] == kUnreached)
            throw std::invalid_argument("mwpm: distance graph has unreachable node pairs");
        w[i] = k.weight[i];
    }
    return min_weight_perfect_matching(int(n), w);
}

namespace detail {

inline void bruteforce_rec(int n, const std::vector<long long> &w, std::uint32_t &used,
                           std::vector<std::pair<std::uint32_t, std::uint32_t>> &current,
                           long long current_weight, PerfectMatching &best, bool &have_best) {
    int i = 0;
    while (i < n && (used >> i & 1))
        ++i;
    if (i == n) {
        // Enumeration emits matchings in lexicographic pair order, so on
        // ties the lexicographically smallest solution is kept.
        if (!have_best || current_weight < best.total_weight) {
            best.pairs = current;
            best.total_weight = current_weight;
            have_best = true;
        }
        return;
    }
    used |= 1u << i;
    for (int j = i + 1; j < n; ++j) {
        if (used >> j & 1)
            continue;
        used |= 1u << j;
        current.emplace_back(i, j);
        bruteforce_rec(n, w, used, current, current_weight + w[std::size_t(i) * n + j], best,
                       have_best);
        current.pop_back();
        used &= ~(1u << j);
    }
    used &= ~(1u << i);
}

}  // namespace detail

/// Reference minimum-weight perfect matching by exhaustive enumeration of
/// all (n-1)!! pairings. Ties resolve to the lexicographically smallest
/// pair list. Only intended as an oracle; n is capped at 12.
inline PerfectMatching perfect_matching_bruteforce(int n, const std::vector<long long> &w) {
    if (n < 0 || n % 2 != 0)
        throw std::invalid_argument("perfect matching needs an even node count, got " +
                                    std::to_string(n));
    if (n > 12)
        throw std::invalid_argument("bruteforce matcher is capped at 12 nodes, got " +
                                    std::to_string(n));
    if (w.size() != std::size_t(n) * n)
        throw std::invalid_argument("weight matrix must be n*n");
    PerfectMatching best;
    if (n == 0)
        return best;
    std::uint32_t used = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> current;
    bool have_best = false;
    detail::bruteforce_rec(n, w, used, current, 0, best, have_best);
    return best;
}

/// Adapters running the matchers on a distance graph.
inline PerfectMatching mwpm_bruteforce(const DistanceGraph &k) {
    std::size_t n = k.n();
    std::vector<long long> w(k.weight.begin(), k.weight.end());
    return perfect_matching_bruteforce(int(n), w);
}

}  // namespace torimatch
