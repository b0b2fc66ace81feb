#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "torimatch/matching.hpp"
#include "torimatch/noise.hpp"
#include "torimatch/syndrome.hpp"
#include "torimatch/tiling.hpp"

namespace torimatch {

namespace detail {

struct PmaOutcome {
    std::vector<edge_index> chain;
    long long matched_weight = 0;
};

/// Perfect-matching decoding of one syndrome half: build the complete
/// distance graph over the violated checks (erased edges cost nothing),
/// match it at minimum weight, and take the symmetric difference of the
/// matched geodesics.
inline PmaOutcome pma(const Tiling &graph, const std::vector<vertex_index> &s,
                      const ErasureSet &erasure) {
    DistanceGraph k = build_distance_graph(graph, s, erasure);
    PerfectMatching m = mwpm(k);
    std::vector<std::uint8_t> toggle(graph.n_edges(), 0);
    for (auto [i, j] : m.pairs)
        for (edge_index e : geodesic(graph, k, i, j))
            toggle[e] ^= 1;
    PmaOutcome out;
    out.matched_weight = m.total_weight;
    for (edge_index e = 0; e < graph.n_edges(); ++e)
        if (toggle[e])
            out.chain.push_back(e);
    return out;
}

}  // namespace detail

/// Matching decoder on a single lattice: returns a chain whose boundary is
/// exactly `s`, of minimum total length among matchings of geodesics.
inline std::vector<edge_index> decode_pma(const Tiling &graph,
                                          const std::vector<vertex_index> &s) {
    return detail::pma(graph, s, ErasureSet{}).chain;
}

/// Erasure-aware variant: edges in `erasure` cost nothing, so the returned
/// chain minimizes the number of edges used outside the erased set.
inline std::vector<edge_index> decode_erasure_pma(const Tiling &graph,
                                                  const std::vector<vertex_index> &s,
                                                  const ErasureSet &erasure) {
    return detail::pma(graph, s, erasure).chain;
}

struct DecodeResult {
    PauliErrorPair estimate;
    ErasureSet erasure;           // erasure handed to the Z step (empty if none)
    long long weight_x = 0;       // matched weight of the X step (dual lattice)
    long long weight_z = 0;       // matched weight of the Z step (primal lattice)
};

/// Uncorrelated CSS decoding: the X support is matched on the dual lattice
/// from the plaquette syndrome, the Z support on the primal lattice from
/// the site syndrome, each half on its own.
inline DecodeResult decode_standard(const Tiling &primal, const Tiling &dual_tiling,
                                    const SyndromePair &s) {
    DecodeResult r;
    detail::PmaOutcome x = detail::pma(dual_tiling, s.s_z, ErasureSet{});
    detail::PmaOutcome z = detail::pma(primal, s.s_x, ErasureSet{});
    r.estimate.ex = std::move(x.chain);
    r.estimate.ez = std::move(z.chain);
    r.weight_x = x.matched_weight;
    r.weight_z = z.matched_weight;
    return r;
}

/// Correlated decoding: first match the X support on the dual, then hand
/// that support to the Z step as an erasure (edge ids carry over through
/// the one-to-one primal/dual edge correspondence). Since a Y error flips
/// both halves of an edge, suspected-X edges are likely Z locations too and
/// Z paths may use them for free.
inline DecodeResult decode_correlated(const Tiling &primal, const Tiling &dual_tiling,
                                      const SyndromePair &s) {
    DecodeResult r;
    detail::PmaOutcome x = detail::pma(dual_tiling, s.s_z, ErasureSet{});
    r.erasure = ErasureSet::from_edges(x.chain, primal.n_edges());
    detail::PmaOutcome z = detail::pma(primal, s.s_x, r.erasure);
    r.estimate.ex = std::move(x.chain);
    r.estimate.ez = std::move(z.chain);
    r.weight_x = x.matched_weight;
    r.weight_z = z.matched_weight;
    return r;
}

}  // namespace torimatch
