#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace torimatch {

using vertex_index = std::uint32_t;
using edge_index = std::uint32_t;
using face_index = std::uint32_t;

enum class Family { square, triangular };

inline const char *family_name(Family f) {
    return f == Family::square ? "square" : "triangular";
}

/// One undirected edge of a torus tiling. The wrap flags record whether the
/// edge crosses the horizontal / vertical seam of the fundamental domain;
/// the set of all wrap_x (resp. wrap_y) edges forms a cocycle that detects
/// the x (resp. y) winding parity of any cycle.
struct Edge {
    vertex_index a = 0, b = 0;
    bool wrap_x = false, wrap_y = false;
};

/// Vertex positions are stored as integer multiples of 1/12 of a lattice
/// unit so that face centroids of both tilings and of their duals land on
/// exact integers. Coordinates live on a torus of period 12*size.
inline constexpr int kCoordScale = 12;

/// A 2-cell embedding of a graph on the torus: vertices, undirected edges,
/// and faces given as closed boundary walks (lists of edge ids). Instances
/// are immutable after construction and safe to share across threads.
struct Tiling {
    Family family = Family::square;
    int size = 0;  // L for the square family, m for the triangular family
    std::uint32_t n_vertices = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<edge_index>> faces;
    std::vector<std::array<int, 2>> vertex_pos;  // kCoordScale units per step

    // Incidence lists in CSR form, derived from `edges` by finalize().
    std::vector<std::uint32_t> adj_offset;
    std::vector<vertex_index> adj_vertex;
    std::vector<edge_index> adj_edge;

    std::uint32_t n_edges() const { return std::uint32_t(edges.size()); }
    std::uint32_t n_faces() const { return std::uint32_t(faces.size()); }
    int period() const { return kCoordScale * size; }

    /// Builds the CSR incidence lists. Builders call this; call it yourself
    /// only if you assembled the fields by hand.
    void finalize() {
        adj_offset.assign(n_vertices + 1, 0);
        for (const Edge &e : edges) {
            ++adj_offset[e.a + 1];
            ++adj_offset[e.b + 1];
        }
        for (std::uint32_t v = 0; v < n_vertices; ++v)
            adj_offset[v + 1] += adj_offset[v];
        adj_vertex.assign(adj_offset.back(), 0);
        adj_edge.assign(adj_offset.back(), 0);
        std::vector<std::uint32_t> cursor(adj_offset.begin(), adj_offset.end() - 1);
        for (edge_index i = 0; i < n_edges(); ++i) {
            const Edge &e = edges[i];
            adj_vertex[cursor[e.a]] = e.b;
            adj_edge[cursor[e.a]++] = i;
            adj_vertex[cursor[e.b]] = e.a;
            adj_edge[cursor[e.b]++] = i;
        }
    }
};

namespace detail {

inline int floor_mod(int a, int p) {
    int r = a % p;
    return r < 0 ? r + p : r;
}

/// Shortest representative of a displacement on a circle of circumference p,
/// in (-p/2, p/2].
inline int shortest_rep(int d, int p) {
    int r = floor_mod(d, p);
    return 2 * r > p ? r - p : r;
}

}  // namespace detail

/// Coordinate helpers for the square torus with L^2 vertices. Vertex (x,y)
/// has id y*L+x; h(x,y) joins (x,y)-(x+1,y) and v(x,y) joins (x,y)-(x,y+1).
/// Face (x,y) is the unit square with lower-left corner (x,y). All inputs
/// are reduced mod L, so e.g. h(-1,0) == h(L-1,0).
struct SquareIndex {
    int L;

    explicit SquareIndex(int L_) : L(L_) {}

    vertex_index vertex(int x, int y) const {
        return vertex_index(detail::floor_mod(y, L) * L + detail::floor_mod(x, L));
    }
    edge_index h(int x, int y) const {
        return edge_index(detail::floor_mod(y, L) * L + detail::floor_mod(x, L));
    }
    edge_index v(int x, int y) const {
        return edge_index(L * L + detail::floor_mod(y, L) * L + detail::floor_mod(x, L));
    }
    face_index face(int x, int y) const {
        return face_index(detail::floor_mod(y, L) * L + detail::floor_mod(x, L));
    }

    std::array<int, 2> vertex_coords(vertex_index v) const { return {int(v) % L, int(v) / L}; }

    struct EdgeCoords {
        bool horizontal;
        int x, y;
    };
    EdgeCoords edge_coords(edge_index e) const {
        int id = int(e);
        bool horizontal = id < L * L;
        if (!horizontal)
            id -= L * L;
        return {horizontal, id % L, id / L};
    }
};

/// Coordinate helpers for the triangular torus with m^2 vertices. Vertex
/// (x,y) has id y*m+x. The three edge families from (x,y) are
///   a(x,y): (x,y)-(x+1,y)     ids [0, m^2)
///   b(x,y): (x,y)-(x,y+1)     ids [m^2, 2m^2)
///   c(x,y): (x,y)-(x+1,y-1)   ids [2m^2, 3m^2)
/// Each unit cell carries two triangles:
///   face_down(x,y) = {a(x,y), b(x+1,y-1), c(x,y)}   ids [0, m^2)
///   face_up(x,y)   = {c(x,y), a(x,y-1), b(x,y-1)}   ids [m^2, 2m^2)
struct TriangularIndex {
    int m;

    explicit TriangularIndex(int m_) : m(m_) {}

    vertex_index vertex(int x, int y) const {
        return vertex_index(detail::floor_mod(y, m) * m + detail::floor_mod(x, m));
    }
    edge_index a(int x, int y) const {
        return edge_index(detail::floor_mod(y, m) * m + detail::floor_mod(x, m));
    }
    edge_index b(int x, int y) const {
        return edge_index(m * m + detail::floor_mod(y, m) * m + detail::floor_mod(x, m));
    }
    edge_index c(int x, int y) const {
        return edge_index(2 * m * m + detail::floor_mod(y, m) * m + detail::floor_mod(x, m));
    }
    face_index face_down(int x, int y) const {
        return face_index(detail::floor_mod(y, m) * m + detail::floor_mod(x, m));
    }
    face_index face_up(int x, int y) const {
        return face_index(m * m + detail::floor_mod(y, m) * m + detail::floor_mod(x, m));
    }

    std::array<int, 2> vertex_coords(vertex_index v) const { return {int(v) % m, int(v) / m}; }

    struct EdgeCoords {
        char kind;  // 'a', 'b' or 'c'
        int x, y;
    };
    EdgeCoords edge_coords(edge_index e) const {
        int id = int(e);
        char kind = 'a';
        if (id >= 2 * m * m) {
            kind = 'c';
            id -= 2 * m * m;
        } else if (id >= m * m) {
            kind = 'b';
            id -= m * m;
        }
        return {kind, id % m, id / m};
    }
};

/// Square torus tiling: L^2 vertices, 2L^2 edges, L^2 square faces.
/// wrap_x is set on h(L-1,y), wrap_y on v(x,L-1).
inline Tiling build_square_torus(int L) {
    if (L < 3)
        throw std::invalid_argument("square torus requires L >= 3, got " + std::to_string(L));
    Tiling t;
    t.family = Family::square;
    t.size = L;
    t.n_vertices = std::uint32_t(L) * L;
    SquareIndex ix(L);

    t.vertex_pos.resize(t.n_vertices);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            t.vertex_pos[ix.vertex(x, y)] = {kCoordScale * x, kCoordScale * y};

    t.edges.resize(2 * std::size_t(L) * L);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) {
            t.edges[ix.h(x, y)] = Edge{ix.vertex(x, y), ix.vertex(x + 1, y), x == L - 1, false};
            t.edges[ix.v(x, y)] = Edge{ix.vertex(x, y), ix.vertex(x, y + 1), false, y == L - 1};
        }

    t.faces.resize(std::size_t(L) * L);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x)
            t.faces[ix.face(x, y)] = {ix.h(x, y), ix.v(x + 1, y), ix.h(x, y + 1), ix.v(x, y)};

    t.finalize();
    return t;
}

/// Triangular torus tiling: m^2 vertices, 3m^2 edges, 2m^2 triangle faces.
/// Its dual is a hexagonal tiling. wrap_x is set on a(m-1,y) and c(m-1,y),
/// wrap_y on b(x,m-1) and c(x,0).
inline Tiling build_triangular_torus(int m) {
    if (m < 3)
        throw std::invalid_argument("triangular torus requires m >= 3, got " + std::to_string(m));
    Tiling t;
    t.family = Family::triangular;
    t.size = m;
    t.n_vertices = std::uint32_t(m) * m;
    TriangularIndex ix(m);

    t.vertex_pos.resize(t.n_vertices);
    for (int y = 0; y < m; ++y)
        for (int x = 0; x < m; ++x)
            t.vertex_pos[ix.vertex(x, y)] = {kCoordScale * x, kCoordScale * y};

    t.edges.resize(3 * std::size_t(m) * m);
    for (int y = 0; y < m; ++y)
        for (int x = 0; x < m; ++x) {
            t.edges[ix.a(x, y)] = Edge{ix.vertex(x, y), ix.vertex(x + 1, y), x == m - 1, false};
            t.edges[ix.b(x, y)] = Edge{ix.vertex(x, y), ix.vertex(x, y + 1), false, y == m - 1};
            t.edges[ix.c(x, y)] =
                Edge{ix.vertex(x, y), ix.vertex(x + 1, y - 1), x == m - 1, y == 0};
        }

    t.faces.resize(2 * std::size_t(m) * m);
    for (int y = 0; y < m; ++y)
        for (int x = 0; x < m; ++x) {
            t.faces[ix.face_down(x, y)] = {ix.a(x, y), ix.b(x + 1, y - 1), ix.c(x, y)};
            t.faces[ix.face_up(x, y)] = {ix.c(x, y), ix.a(x, y - 1), ix.b(x, y - 1)};
        }

    t.finalize();
    return t;
}

namespace detail {

/// The two faces adjacent to each edge, in face-id order of discovery.
/// Throws if some edge does not lie on exactly two faces.
inline std::vector<std::array<face_index, 2>> edge_face_pairs(const Tiling &t) {
    std::vector<std::array<face_index, 2>> pair(t.n_edges());
    std::vector<int> count(t.n_edges(), 0);
    for (face_index f = 0; f < t.n_faces(); ++f)
        for (edge_index e : t.faces[f]) {
            if (e >= t.n_edges())
                throw std::invalid_argument("face walk references edge id out of range");
            if (count[e] < 2)
                pair[e][count[e]] = f;
            ++count[e];
        }
    for (edge_index e = 0; e < t.n_edges(); ++e)
        if (count[e] != 2)
            throw std::invalid_argument("edge " + std::to_string(e) + " lies on " +
                                        std::to_string(count[e]) + " faces, expected 2");
    return pair;
}

/// Vertex shared by two distinct edges of a face walk. Throws if the edges
/// share zero or two endpoints (the walk would be ambiguous).
inline vertex_index walk_corner(const Edge &e, const Edge &f) {
    bool aa = e.a == f.a || e.a == f.b;
    bool bb = e.b == f.a || e.b == f.b;
    if (aa == bb)
        throw std::invalid_argument("consecutive face-walk edges must share exactly one vertex");
    return aa ? e.a : e.b;
}

/// Centroid of a face, computed by lifting the walk's corner vertices to a
/// common fundamental domain. Exact for both families and their duals
/// thanks to the 1/12 coordinate grid; throws if the centroid is not an
/// integer point.
inline std::array<int, 2> face_center(const Tiling &t, face_index f) {
    const auto &walk = t.faces[f];
    std::size_t k = walk.size();
    std::vector<vertex_index> corners(k);
    for (std::size_t i = 0; i < k; ++i)
        corners[i] = walk_corner(t.edges[walk[i]], t.edges[walk[(i + 1) % k]]);

    int P = t.period();
    std::array<long, 2> lifted{}, sum{};
    for (int c = 0; c < 2; ++c)
        lifted[c] = sum[c] = t.vertex_pos[corners[0]][c];
    for (std::size_t i = 1; i < k; ++i)
        for (int c = 0; c < 2; ++c) {
            int canon = t.vertex_pos[corners[i]][c];
            lifted[c] += shortest_rep(canon - int(lifted[c] % P), P);
            sum[c] += lifted[c];
        }
    std::array<int, 2> center;
    for (int c = 0; c < 2; ++c) {
        if (sum[c] % long(k) != 0)
            throw std::invalid_argument("face centroid does not land on the coordinate grid");
        center[c] = floor_mod(int(sum[c] / long(k)), P);
    }
    return center;
}

/// True iff the segment from canonical coordinate a (in [0,P)) with
/// displacement d crosses the seam between coordinate P-1 and 0.
inline bool crosses_seam(int a, int d, int p) {
    int b = a + d;
    return b < 0 || b >= p;
}

/// Comparator ordering integer direction vectors counterclockwise starting
/// from the positive x axis. Exact (no floating point).
inline bool ccw_less(const std::array<int, 2> &u, const std::array<int, 2> &v) {
    auto half = [](const std::array<int, 2> &d) {
        return (d[1] < 0 || (d[1] == 0 && d[0] < 0)) ? 1 : 0;
    };
    int hu = half(u), hv = half(v);
    if (hu != hv)
        return hu < hv;
    long cross = long(u[0]) * v[1] - long(u[1]) * v[0];
    return cross > 0;
}

}  // namespace detail

/// Dual tiling of `t`. Dual vertex i is face i of `t`; dual edge i crosses
/// primal edge i (the identity is the edge bijection used everywhere); dual
/// face j is the star of primal vertex j. Wrap flags on dual edges mark
/// actual seam crossings of the segment joining the two face centroids, so
/// they form seam cocycles exactly like the primal flags.
struct DualView {
    Tiling tiling;
};

inline DualView dual(const Tiling &t) {
    auto pair = detail::edge_face_pairs(t);

    Tiling d;
    d.family = t.family;
    d.size = t.size;
    d.n_vertices = t.n_faces();
    d.vertex_pos.resize(t.n_faces());
    for (face_index f = 0; f < t.n_faces(); ++f)
        d.vertex_pos[f] = detail::face_center(t, f);

    int P = t.period();
    d.edges.resize(t.n_edges());
    for (edge_index i = 0; i < t.n_edges(); ++i) {
        auto [f, g] = pair[i];
        if (f == g)
            throw std::invalid_argument("edge " + std::to_string(i) +
                                        " has the same face on both sides");
        Edge e;
        e.a = f;
        e.b = g;
        for (int c = 0; c < 2; ++c) {
            int a1 = d.vertex_pos[f][c];
            int step = detail::shortest_rep(d.vertex_pos[g][c] - a1, P);
            bool wrap = detail::crosses_seam(a1, step, P);
            (c == 0 ? e.wrap_x : e.wrap_y) = wrap;
        }
        d.edges[i] = e;
    }

    // Dual faces: incident edges of each primal vertex in counterclockwise
    // order around it.
    d.faces.resize(t.n_vertices);
    for (vertex_index v = 0; v < t.n_vertices; ++v) {
        std::vector<std::pair<std::array<int, 2>, edge_index>> spokes;
        for (std::uint32_t k = t.adj_offset[v]; k < t.adj_offset[v + 1]; ++k) {
            vertex_index u = t.adj_vertex[k];
            std::array<int, 2> dir;
            for (int c = 0; c < 2; ++c)
                dir[c] = detail::shortest_rep(t.vertex_pos[u][c] - t.vertex_pos[v][c], P);
            spokes.emplace_back(dir, t.adj_edge[k]);
        }
        std::sort(spokes.begin(), spokes.end(), [](const auto &x, const auto &y) {
            return detail::ccw_less(x.first, y.first);
        });
        auto &walk = d.faces[v];
        walk.reserve(spokes.size());
        for (const auto &[dir, e] : spokes)
            walk.push_back(e);
    }

    d.finalize();
    return DualView{std::move(d)};
}

/// The two seam cocycles of a tiling: all edges with wrap_x set, and all
/// edges with wrap_y set, each sorted by edge id. A cycle's winding parity
/// around the x (resp. y) direction of the torus equals the parity of its
/// intersection with cut_x (resp. cut_y).
struct HomologyCuts {
    std::vector<edge_index> cut_x, cut_y;
};

inline HomologyCuts homology_cuts(const Tiling &t) {
    HomologyCuts cuts;
    for (edge_index i = 0; i < t.n_edges(); ++i) {
        if (t.edges[i].wrap_x)
            cuts.cut_x.push_back(i);
        if (t.edges[i].wrap_y)
            cuts.cut_y.push_back(i);
    }
    return cuts;
}

enum class TilingDefect {
    none,
    bad_size,
    bad_vertex_data,
    bad_edge,
    duplicate_edge,
    bad_face,
    open_walk,
    edge_face_count,
    euler_characteristic,
    boundary_parity,
    cut_parity,
};

struct ValidationReport {
    TilingDefect defect = TilingDefect::none;
    std::string message;
    bool ok() const { return defect == TilingDefect::none; }
};

/// Checks the structural invariants of a tiling and reports the first
/// violation found. Never throws; a well-formed tiling yields ok().
inline ValidationReport validate(const Tiling &t) {
    auto fail = [](TilingDefect d, std::string msg) {
        return ValidationReport{d, std::move(msg)};
    };
    if (t.size < 3)
        return fail(TilingDefect::bad_size, "size must be at least 3");
    if (t.n_vertices == 0 || t.vertex_pos.size() != t.n_vertices)
        return fail(TilingDefect::bad_vertex_data, "vertex positions do not match vertex count");

    std::vector<std::pair<vertex_index, vertex_index>> seen;
    seen.reserve(t.edges.size());
    for (edge_index i = 0; i < t.n_edges(); ++i) {
        const Edge &e = t.edges[i];
        if (e.a >= t.n_vertices || e.b >= t.n_vertices)
            return fail(TilingDefect::bad_edge,
                        "edge " + std::to_string(i) + " references a vertex out of range");
        if (e.a == e.b)
            return fail(TilingDefect::bad_edge, "edge " + std::to_string(i) + " is a loop");
        seen.emplace_back(std::min(e.a, e.b), std::max(e.a, e.b));
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return fail(TilingDefect::duplicate_edge, "two edges join the same vertex pair");

    std::vector<int> on_faces(t.n_edges(), 0);
    for (face_index f = 0; f < t.n_faces(); ++f) {
        const auto &walk = t.faces[f];
        if (walk.size() < 3)
            return fail(TilingDefect::bad_face,
                        "face " + std::to_string(f) + " has fewer than 3 edges");
        for (edge_index e : walk) {
            if (e >= t.n_edges())
                return fail(TilingDefect::bad_face,
                            "face " + std::to_string(f) + " references an edge out of range");
            ++on_faces[e];
        }
        // Boundary-of-boundary: every vertex must be touched an even number
        // of times by the walk's edge endpoints.
        std::vector<vertex_index> touched;
        touched.reserve(2 * walk.size());
        int wraps_x = 0, wraps_y = 0;
        for (std::size_t i = 0; i < walk.size(); ++i) {
            const Edge &e = t.edges[walk[i]];
            const Edge &next = t.edges[walk[(i + 1) % walk.size()]];
            bool share = e.a == next.a || e.a == next.b || e.b == next.a || e.b == next.b;
            if (!share)
                return fail(TilingDefect::open_walk,
                            "face " + std::to_string(f) + " is not a closed edge walk");
            touched.push_back(e.a);
            touched.push_back(e.b);
            wraps_x += e.wrap_x ? 1 : 0;
            wraps_y += e.wrap_y ? 1 : 0;
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t i = 0; i < touched.size();) {
            std::size_t j = i;
            while (j < touched.size() && touched[j] == touched[i])
                ++j;
            if ((j - i) % 2 != 0)
                return fail(TilingDefect::boundary_parity,
                            "face " + std::to_string(f) + " touches vertex " +
                                std::to_string(touched[i]) + " an odd number of times");
            i = j;
        }
        // Faces are contractible, so they must cross each seam an even
        // number of times.
        if (wraps_x % 2 != 0 || wraps_y % 2 != 0)
            return fail(TilingDefect::cut_parity,
                        "face " + std::to_string(f) + " crosses a seam an odd number of times");
    }
    for (edge_index e = 0; e < t.n_edges(); ++e)
        if (on_faces[e] != 2)
            return fail(TilingDefect::edge_face_count,
                        "edge " + std::to_string(e) + " lies on " + std::to_string(on_faces[e]) +
                            " faces, expected 2");

    long euler = long(t.n_vertices) - long(t.n_edges()) + long(t.n_faces());
    if (euler != 0)
        return fail(TilingDefect::euler_characteristic,
                    "V - E + F = " + std::to_string(euler) + ", expected 0 on a torus");
    return {};
}

/// Writes `edge_id,va,vb,wrap_x,wrap_y` rows for every edge.
inline void write_tiling_csv(std::ostream &out, const Tiling &t) {
    out << "edge_id,va,vb,wrap_x,wrap_y\n";
    for (edge_index i = 0; i < t.n_edges(); ++i) {
        const Edge &e = t.edges[i];
        out << i << ',' << e.a << ',' << e.b << ',' << int(e.wrap_x) << ',' << int(e.wrap_y)
            << '\n';
    }
}

}  // namespace torimatch
