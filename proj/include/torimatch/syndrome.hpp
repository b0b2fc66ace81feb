#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "torimatch/noise.hpp"
#include "torimatch/tiling.hpp"

namespace torimatch {

/// Vertices of `t` incident to an odd number of chain edges (the mod-2
/// boundary of the 1-chain). Sorted by vertex id.
inline std::vector<vertex_index> boundary(const Tiling &t, const std::vector<edge_index> &chain) {
    std::vector<std::uint8_t> odd(t.n_vertices, 0);
    for (edge_index e : chain) {
        if (e >= t.n_edges())
            throw std::invalid_argument("boundary: edge id " + std::to_string(e) +
                                        " out of range");
        odd[t.edges[e].a] ^= 1;
        odd[t.edges[e].b] ^= 1;
    }
    std::vector<vertex_index> out;
    for (vertex_index v = 0; v < t.n_vertices; ++v)
        if (odd[v])
            out.push_back(v);
    return out;
}

/// Violated checks of a Pauli error. Site checks live on primal vertices
/// and are flipped by the Z support; plaquette checks live on faces (dual
/// vertices) and are flipped by the X support.
struct SyndromePair {
    std::vector<vertex_index> s_x;  // violated site checks, primal vertex ids
    std::vector<vertex_index> s_z;  // violated plaquette checks, face ids

    bool operator==(const SyndromePair &other) const = default;
};

inline SyndromePair syndrome(const Tiling &primal, const Tiling &dual_tiling,
                             const PauliErrorPair &e) {
    return SyndromePair{boundary(primal, e.ez), boundary(dual_tiling, e.ex)};
}

/// Convenience overload that reads the plaquette syndrome straight off the
/// primal face incidence instead of requiring a prebuilt dual.
inline SyndromePair syndrome(const Tiling &primal, const PauliErrorPair &e) {
    auto pair = detail::edge_face_pairs(primal);
    std::vector<std::uint8_t> odd(primal.n_faces(), 0);
    for (edge_index x : e.ex) {
        if (x >= primal.n_edges())
            throw std::invalid_argument("syndrome: edge id out of range");
        odd[pair[x][0]] ^= 1;
        odd[pair[x][1]] ^= 1;
    }
    SyndromePair s;
    s.s_x = boundary(primal, e.ez);
    for (face_index f = 0; f < primal.n_faces(); ++f)
        if (odd[f])
            s.s_z.push_back(f);
    return s;
}

/// Sorted symmetric difference of two sorted edge lists.
inline std::vector<edge_index> symmetric_difference(const std::vector<edge_index> &a,
                                                    const std::vector<edge_index> &b) {
    std::vector<edge_index> out;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() || ib != b.end()) {
        if (ib == b.end() || (ia != a.end() && *ia < *ib)) {
            out.push_back(*ia++);
        } else if (ia == a.end() || *ib < *ia) {
            out.push_back(*ib++);
        } else {
            ++ia;
            ++ib;
        }
    }
    return out;
}

/// Parity (0/1) of the intersection size of two sorted lists.
inline std::uint8_t intersection_parity(const std::vector<edge_index> &a,
                                        const std::vector<edge_index> &b) {
    std::uint8_t parity = 0;
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia < *ib)
            ++ia;
        else if (*ib < *ia)
            ++ib;
        else {
            parity ^= 1;
            ++ia;
            ++ib;
        }
    }
    return parity;
}

/// Seam cocycles used to classify residual cycles: Z chains live on the
/// primal tiling and are classified against its cuts, X chains against the
/// dual's cuts.
struct HomologyBasis {
    HomologyCuts primal;
    HomologyCuts dual;
};

inline HomologyBasis homology_basis(const Tiling &primal, const DualView &d) {
    return HomologyBasis{homology_cuts(primal), homology_cuts(d.tiling)};
}

/// Winding parities of the residual error truth xor estimate. A decoder
/// succeeds exactly when the class is trivial: the residual is then a
/// product of checks and acts as the identity on the encoded qubits.
struct HomologyClass {
    std::array<std::uint8_t, 2> z_bits{};  // Z residual winding around x / y
    std::array<std::uint8_t, 2> x_bits{};  // X residual winding around x / y

    bool trivial() const { return !z_bits[0] && !z_bits[1] && !x_bits[0] && !x_bits[1]; }
};

/// Classifies the residual of an estimate against the true error. Requires
/// both residual halves to be cycles, i.e. the estimate must reproduce the
/// truth's syndrome; otherwise throws std::invalid_argument.
inline HomologyClass residual_class(const Tiling &primal, const HomologyBasis &basis,
                                    const PauliErrorPair &truth,
                                    const PauliErrorPair &estimate) {
    std::vector<edge_index> r_z = symmetric_difference(truth.ez, estimate.ez);
    std::vector<edge_index> r_x = symmetric_difference(truth.ex, estimate.ex);

    if (!boundary(primal, r_z).empty())
        throw std::invalid_argument(
            "residual_class: estimate does not reproduce the site syndrome");
    auto pair = detail::edge_face_pairs(primal);
    std::vector<std::uint8_t> odd(primal.n_faces(), 0);
    for (edge_index x : r_x) {
        odd[pair[x][0]] ^= 1;
        odd[pair[x][1]] ^= 1;
    }
    for (face_index f = 0; f < primal.n_faces(); ++f)
        if (odd[f])
            throw std::invalid_argument(
                "residual_class: estimate does not reproduce the plaquette syndrome");

    HomologyClass c;
    c.z_bits = {intersection_parity(r_z, basis.primal.cut_x),
                intersection_parity(r_z, basis.primal.cut_y)};
    c.x_bits = {intersection_parity(r_x, basis.dual.cut_x),
                intersection_parity(r_x, basis.dual.cut_y)};
    return c;
}

}  // namespace torimatch
