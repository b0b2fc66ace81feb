#include "torimatch/tiling.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace torimatch;

namespace {

std::vector<int> degrees(const Tiling &t) {
    std::vector<int> deg(t.n_vertices);
    for (std::uint32_t v = 0; v < t.n_vertices; ++v)
        deg[v] = int(t.adj_offset[v + 1] - t.adj_offset[v]);
    return deg;
}

}  // namespace

TEST(SquareTorus, CountsAndValidation) {
    for (int L : {3, 5, 8}) {
        Tiling t = build_square_torus(L);
        EXPECT_EQ(t.n_vertices, std::uint32_t(L * L));
        EXPECT_EQ(t.n_edges(), std::uint32_t(2 * L * L));
        EXPECT_EQ(t.n_faces(), std::uint32_t(L * L));
        auto report = validate(t);
        EXPECT_TRUE(report.ok()) << report.message;
        for (int d : degrees(t))
            EXPECT_EQ(d, 4);
        for (const auto &walk : t.faces)
            EXPECT_EQ(walk.size(), 4u);
    }
}

TEST(TriangularTorus, CountsAndValidation) {
    for (int m : {3, 4, 8}) {
        Tiling t = build_triangular_torus(m);
        EXPECT_EQ(t.n_vertices, std::uint32_t(m * m));
        EXPECT_EQ(t.n_edges(), std::uint32_t(3 * m * m));
        EXPECT_EQ(t.n_faces(), std::uint32_t(2 * m * m));
        auto report = validate(t);
        EXPECT_TRUE(report.ok()) << report.message;
        for (int d : degrees(t))
            EXPECT_EQ(d, 6);
        for (const auto &walk : t.faces)
            EXPECT_EQ(walk.size(), 3u);
    }
}

TEST(Builders, RejectSizesBelowThree) {
    EXPECT_THROW(build_square_torus(2), std::invalid_argument);
    EXPECT_THROW(build_square_torus(0), std::invalid_argument);
    EXPECT_THROW(build_square_torus(-4), std::invalid_argument);
    EXPECT_THROW(build_triangular_torus(2), std::invalid_argument);
    EXPECT_THROW(build_triangular_torus(1), std::invalid_argument);
}

TEST(SquareTorus, HomologyCutContents) {
    int L = 4;
    Tiling t = build_square_torus(L);
    SquareIndex ix(L);
    auto cuts = homology_cuts(t);
    std::vector<edge_index> want_x, want_y;
    for (int y = 0; y < L; ++y)
        want_x.push_back(ix.h(L - 1, y));
    for (int x = 0; x < L; ++x)
        want_y.push_back(ix.v(x, L - 1));
    std::sort(want_x.begin(), want_x.end());
    std::sort(want_y.begin(), want_y.end());
    EXPECT_EQ(cuts.cut_x, want_x);
    EXPECT_EQ(cuts.cut_y, want_y);
}

TEST(TriangularTorus, HomologyCutContents) {
    int m = 4;
    Tiling t = build_triangular_torus(m);
    TriangularIndex ix(m);
    auto cuts = homology_cuts(t);
    std::vector<edge_index> want_x, want_y;
    for (int y = 0; y < m; ++y) {
        want_x.push_back(ix.a(m - 1, y));
        want_x.push_back(ix.c(m - 1, y));
    }
    for (int x = 0; x < m; ++x) {
        want_y.push_back(ix.b(x, m - 1));
        want_y.push_back(ix.c(x, 0));
    }
    std::sort(want_x.begin(), want_x.end());
    std::sort(want_y.begin(), want_y.end());
    EXPECT_EQ(cuts.cut_x, want_x);
    EXPECT_EQ(cuts.cut_y, want_y);
    EXPECT_EQ(cuts.cut_x.size(), std::size_t(2 * m));
    EXPECT_EQ(cuts.cut_y.size(), std::size_t(2 * m));
}

TEST(Dual, SquareDualCountsAndCuts) {
    int L = 4;
    Tiling t = build_square_torus(L);
    DualView d = dual(t);
    EXPECT_EQ(d.tiling.n_vertices, t.n_faces());
    EXPECT_EQ(d.tiling.n_edges(), t.n_edges());
    EXPECT_EQ(d.tiling.n_faces(), t.n_vertices);
    auto report = validate(d.tiling);
    EXPECT_TRUE(report.ok()) << report.message;

    // The dual seam cocycles sit one half-step off the primal ones: the
    // x cut collects the duals of v(0,y), the y cut the duals of h(x,0).
    SquareIndex ix(L);
    auto cuts = homology_cuts(d.tiling);
    std::vector<edge_index> want_x, want_y;
    for (int y = 0; y < L; ++y)
        want_x.push_back(ix.v(0, y));
    for (int x = 0; x < L; ++x)
        want_y.push_back(ix.h(x, 0));
    std::sort(want_x.begin(), want_x.end());
    std::sort(want_y.begin(), want_y.end());
    EXPECT_EQ(cuts.cut_x, want_x);
    EXPECT_EQ(cuts.cut_y, want_y);
}

TEST(Dual, TriangularDualIsHexagonal) {
    int m = 4;
    Tiling t = build_triangular_torus(m);
    DualView d = dual(t);
    EXPECT_EQ(d.tiling.n_vertices, std::uint32_t(2 * m * m));
    EXPECT_EQ(d.tiling.n_edges(), std::uint32_t(3 * m * m));
    EXPECT_EQ(d.tiling.n_faces(), std::uint32_t(m * m));
    auto report = validate(d.tiling);
    EXPECT_TRUE(report.ok()) << report.message;
    for (int deg : degrees(d.tiling))
        EXPECT_EQ(deg, 3);
    for (const auto &walk : d.tiling.faces)
        EXPECT_EQ(walk.size(), 6u);

    TriangularIndex ix(m);
    auto cuts = homology_cuts(d.tiling);
    std::vector<edge_index> want_x, want_y;
    for (int y = 0; y < m; ++y)
        want_x.push_back(ix.b(0, y));
    for (int x = 0; x < m; ++x)
        want_y.push_back(ix.a(x, 0));
    std::sort(want_x.begin(), want_x.end());
    std::sort(want_y.begin(), want_y.end());
    EXPECT_EQ(cuts.cut_x, want_x);
    EXPECT_EQ(cuts.cut_y, want_y);
}

TEST(Dual, SquareTorusIsSelfDual) {
    // Shifting the dual lattice by half a unit in both directions maps it
    // back onto the primal: dual vertex f(x,y) -> vertex (x+1,y+1), dual of
    // h(x,y) -> v(x+1,y), dual of v(x,y) -> h(x,y+1).
    int L = 5;
    Tiling t = build_square_torus(L);
    Tiling d = dual(t).tiling;
    SquareIndex ix(L);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) {
            auto check = [&](edge_index dual_e, edge_index primal_e) {
                vertex_index ma = d.edges[dual_e].a, mb = d.edges[dual_e].b;
                auto [ax, ay] = ix.vertex_coords(ma);
                auto [bx, by] = ix.vertex_coords(mb);
                std::set<vertex_index> got = {ix.vertex(ax + 1, ay + 1),
                                                  ix.vertex(bx + 1, by + 1)};
                std::set<vertex_index> want = {t.edges[primal_e].a, t.edges[primal_e].b};
                EXPECT_EQ(got, want);
            };
            check(ix.h(x, y), ix.v(x + 1, y));
            check(ix.v(x, y), ix.h(x, y + 1));
        }
}

TEST(Dual, DualOfDualRestoresOriginal) {
    for (auto t : {build_square_torus(4), build_triangular_torus(4)}) {
        Tiling dd = dual(dual(t).tiling).tiling;
        ASSERT_EQ(dd.n_vertices, t.n_vertices);
        ASSERT_EQ(dd.n_edges(), t.n_edges());
        ASSERT_EQ(dd.n_faces(), t.n_faces());
        EXPECT_EQ(dd.vertex_pos, t.vertex_pos);
        for (edge_index i = 0; i < t.n_edges(); ++i) {
            std::set<vertex_index> got = {dd.edges[i].a, dd.edges[i].b};
            std::set<vertex_index> want = {t.edges[i].a, t.edges[i].b};
            EXPECT_EQ(got, want) << "edge " << i;
            EXPECT_EQ(dd.edges[i].wrap_x, t.edges[i].wrap_x) << "edge " << i;
            EXPECT_EQ(dd.edges[i].wrap_y, t.edges[i].wrap_y) << "edge " << i;
        }
        for (face_index f = 0; f < t.n_faces(); ++f) {
            std::multiset<edge_index> got(dd.faces[f].begin(), dd.faces[f].end());
            std::multiset<edge_index> want(t.faces[f].begin(), t.faces[f].end());
            EXPECT_EQ(got, want) << "face " << f;
        }
    }
}

TEST(Dual, CutsAreNonEmptyEverywhere) {
    for (auto t : {build_square_torus(3), build_square_torus(6),
                   build_triangular_torus(3), build_triangular_torus(5)}) {
        auto primal = homology_cuts(t);
        EXPECT_FALSE(primal.cut_x.empty());
        EXPECT_FALSE(primal.cut_y.empty());
        auto dual_cuts = homology_cuts(dual(t).tiling);
        EXPECT_FALSE(dual_cuts.cut_x.empty());
        EXPECT_FALSE(dual_cuts.cut_y.empty());
    }
}

TEST(Validate, DetectsBrokenTilings) {
    Tiling good = build_square_torus(3);
    EXPECT_TRUE(validate(good).ok());

    {
        Tiling t = good;
        t.size = 2;
        EXPECT_EQ(validate(t).defect, TilingDefect::bad_size);
    }
    {
        Tiling t = good;
        t.edges[0].b = t.edges[0].a;  // loop
        EXPECT_EQ(validate(t).defect, TilingDefect::bad_edge);
    }
    {
        Tiling t = good;
        t.edges[0].a = t.n_vertices + 7;
        EXPECT_EQ(validate(t).defect, TilingDefect::bad_edge);
    }
    {
        Tiling t = good;
        t.edges[1] = t.edges[0];  // same vertex pair twice
        auto d = validate(t).defect;
        EXPECT_EQ(d, TilingDefect::duplicate_edge);
    }
    {
        Tiling t = good;
        t.faces.pop_back();  // some edge now lies on fewer than 2 faces
        auto d = validate(t).defect;
        EXPECT_TRUE(d == TilingDefect::edge_face_count ||
                    d == TilingDefect::euler_characteristic);
    }
    {
        Tiling t = good;
        t.faces[0].pop_back();  // walk no longer closed
        auto d = validate(t).defect;
        EXPECT_TRUE(d == TilingDefect::open_walk || d == TilingDefect::boundary_parity ||
                    d == TilingDefect::edge_face_count);
    }
    {
        Tiling t = good;
        t.edges[0].wrap_x = !t.edges[0].wrap_x;  // seam cocycle broken
        EXPECT_EQ(validate(t).defect, TilingDefect::cut_parity);
    }
}

TEST(Dual, RejectsEdgesNotOnTwoFaces) {
    Tiling t = build_square_torus(3);
    t.faces.pop_back();
    EXPECT_THROW(dual(t), std::invalid_argument);
}

TEST(IndexHelpers, RoundTrip) {
    SquareIndex sq(5);
    EXPECT_EQ(sq.h(-1, 0), sq.h(4, 0));
    EXPECT_EQ(sq.v(2, -1), sq.v(2, 4));
    auto ec = sq.edge_coords(sq.v(3, 2));
    EXPECT_FALSE(ec.horizontal);
    EXPECT_EQ(ec.x, 3);
    EXPECT_EQ(ec.y, 2);
    auto vc = sq.vertex_coords(sq.vertex(4, 1));
    EXPECT_EQ(vc[0], 4);
    EXPECT_EQ(vc[1], 1);

    TriangularIndex tr(4);
    EXPECT_EQ(tr.c(4, -1), tr.c(0, 3));
    auto tc = tr.edge_coords(tr.c(1, 2));
    EXPECT_EQ(tc.kind, 'c');
    EXPECT_EQ(tc.x, 1);
    EXPECT_EQ(tc.y, 2);
    EXPECT_EQ(tr.edge_coords(tr.b(0, 0)).kind, 'b');
    EXPECT_EQ(tr.edge_coords(tr.a(3, 3)).kind, 'a');
}

TEST(TilingCsv, DumpFormat) {
    Tiling t = build_square_torus(3);
    std::ostringstream out;
    write_tiling_csv(out, t);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "edge_id,va,vb,wrap_x,wrap_y");
    std::getline(in, line);
    EXPECT_EQ(line, "0,0,1,0,0");  // h(0,0)
    int rows = 1;
    while (std::getline(in, line))
        ++rows;
    EXPECT_EQ(rows, int(t.n_edges()));
}
