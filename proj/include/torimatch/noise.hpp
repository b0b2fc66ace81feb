#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "torimatch/rng.hpp"
#include "torimatch/tiling.hpp"

namespace torimatch {

enum class Pauli : std::uint8_t { I, X, Y, Z };

inline char pauli_char(Pauli q) {
    switch (q) {
        case Pauli::I: return 'I';
        case Pauli::X: return 'X';
        case Pauli::Y: return 'Y';
        case Pauli::Z: return 'Z';
    }
    throw std::invalid_argument("bad Pauli value");
}

inline Pauli pauli_from_char(char c) {
    switch (c) {
        case 'I': return Pauli::I;
        case 'X': return Pauli::X;
        case 'Y': return Pauli::Y;
        case 'Z': return Pauli::Z;
    }
    throw std::invalid_argument(std::string("bad Pauli letter '") + c + "'");
}

/// Derived rates of the depolarizing channel with total error rate p
/// (each of X, Y, Z occurs with probability p/3).
///   marginal_rate    = 2p/3            chance that a given half is flipped
///                                      (e.g. X support present: X or Y)
///   conditional_rate = (p/3)/(1-2p/3)  chance of a Z flip given that the X
///                                      half of the same edge is clean
struct DepolarizingParams {
    double p;
    double marginal_rate;
    double conditional_rate;

    explicit DepolarizingParams(double p_) : p(p_) {
        if (!(p >= 0.0 && p < 0.75))
            throw std::domain_error("depolarizing rate must lie in [0, 3/4), got " +
                                    std::to_string(p_));
        marginal_rate = 2.0 * p / 3.0;
        conditional_rate = (p / 3.0) / (1.0 - 2.0 * p / 3.0);
    }
};

/// Outcome probabilities of one edge of the depolarizing channel, split by
/// whether the edge's X half is flipped. Given an X flip, the Z half is a
/// coin toss; given no X flip, a Z flip keeps probability mass p/3 out of
/// the remaining 1-2p/3.
struct ConditionalProbs {
    double z_given_x;
    double i_given_x;
    double z_given_no_x;
    double i_given_no_x;
};

inline ConditionalProbs conditional_probabilities(double p) {
    DepolarizingParams d(p);
    return ConditionalProbs{0.5, 0.5, d.conditional_rate, (1.0 - p) / (1.0 - 2.0 * p / 3.0)};
}

/// A Pauli error on the edges of a tiling, stored as its two binary halves:
/// ex is the X support (edges carrying X or Y, read on the dual lattice)
/// and ez the Z support (edges carrying Z or Y, read on the primal). Both
/// lists are sorted and duplicate-free; an edge in both carries Y.
struct PauliErrorPair {
    std::vector<edge_index> ex;
    std::vector<edge_index> ez;

    bool operator==(const PauliErrorPair &other) const = default;
};

inline Pauli pauli_at(const PauliErrorPair &e, edge_index i) {
    bool x = std::binary_search(e.ex.begin(), e.ex.end(), i);
    bool z = std::binary_search(e.ez.begin(), e.ez.end(), i);
    if (x && z)
        return Pauli::Y;
    if (x)
        return Pauli::X;
    if (z)
        return Pauli::Z;
    return Pauli::I;
}

/// Number of edges carrying a non-identity Pauli (Y counts once).
inline std::size_t pauli_weight(const PauliErrorPair &e) {
    std::size_t both = 0;
    auto it = e.ez.begin();
    for (edge_index x : e.ex) {
        it = std::lower_bound(it, e.ez.end(), x);
        if (it != e.ez.end() && *it == x)
            ++both;
    }
    return e.ex.size() + e.ez.size() - both;
}

/// Draws one depolarizing error: each edge independently gets X, Y or Z
/// with probability p/3 each. Edges are visited in index order with one
/// uniform draw per edge, so results are reproducible for a fixed rng state.
inline PauliErrorPair sample_depolarizing(const Tiling &t, double p, std::mt19937_64 &rng) {
    DepolarizingParams check(p);  // validate the rate
    (void)check;
    PauliErrorPair e;
    double third = p / 3.0;
    for (edge_index i = 0; i < t.n_edges(); ++i) {
        double u = uniform_unit(rng);
        if (u >= p)
            continue;
        if (u < third) {
            e.ex.push_back(i);  // X
        } else if (u < 2.0 * third) {
            e.ex.push_back(i);  // Y
            e.ez.push_back(i);
        } else {
            e.ez.push_back(i);  // Z
        }
    }
    return e;
}

/// Writes `edge_id,pauli` rows, edges in increasing id order.
inline void write_error_csv(std::ostream &out, const PauliErrorPair &e) {
    out << "edge_id,pauli\n";
    auto ix = e.ex.begin();
    auto iz = e.ez.begin();
    while (ix != e.ex.end() || iz != e.ez.end()) {
        bool take_x = iz == e.ez.end() || (ix != e.ex.end() && *ix <= *iz);
        bool take_z = ix == e.ex.end() || (iz != e.ez.end() && *iz <= *ix);
        edge_index id = take_x ? *ix : *iz;
        out << id << ',' << pauli_char(take_x && take_z ? Pauli::Y : take_x ? Pauli::X : Pauli::Z)
            << '\n';
        if (take_x)
            ++ix;
        if (take_z)
            ++iz;
    }
}

/// Parses `edge_id,pauli` rows. Ids must be unique and below n_edges, and
/// the pauli column must be X, Y or Z.
inline PauliErrorPair read_error_csv(std::istream &in, std::uint32_t n_edges) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("error csv: missing header");
    if (line == "edge_id,pauli\r")
        line.pop_back();
    if (line != "edge_id,pauli")
        throw std::invalid_argument("error csv: expected header 'edge_id,pauli', got '" + line +
                                    "'");
    PauliErrorPair e;
    std::vector<edge_index> seen;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::size_t comma = line.find(',');
        if (comma == std::string::npos || comma + 2 != line.size())
            throw std::invalid_argument("error csv: malformed row '" + line + "'");
        unsigned long id;
        try {
            std::size_t used = 0;
            id = std::stoul(line.substr(0, comma), &used);
            if (used != comma)
                throw std::invalid_argument("trailing junk");
        } catch (const std::exception &) {
            throw std::invalid_argument("error csv: bad edge id in row '" + line + "'");
        }
        if (id >= n_edges)
            throw std::invalid_argument("error csv: edge id " + std::to_string(id) +
                                        " out of range (" + std::to_string(n_edges) + " edges)");
        Pauli q = pauli_from_char(line[comma + 1]);
        if (q == Pauli::I)
            throw std::invalid_argument("error csv: identity rows are not stored");
        seen.push_back(edge_index(id));
        if (q == Pauli::X || q == Pauli::Y)
            e.ex.push_back(edge_index(id));
        if (q == Pauli::Z || q == Pauli::Y)
            e.ez.push_back(edge_index(id));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("error csv: duplicate edge id");
    std::sort(e.ex.begin(), e.ex.end());
    std::sort(e.ez.begin(), e.ez.end());
    return e;
}

}  // namespace torimatch
