#include "torimatch/syndrome.hpp"

#include <gtest/gtest.h>

using namespace torimatch;

TEST(Boundary, SingleEdgeAndPath) {
    Tiling t = build_square_torus(4);
    SquareIndex ix(4);
    auto b1 = boundary(t, {ix.h(1, 1)});
    EXPECT_EQ(b1, (std::vector<vertex_index>{ix.vertex(1, 1), ix.vertex(2, 1)}));
    // Two edges sharing vertex (2,1): only the outer endpoints remain.
    auto b2 = boundary(t, {ix.h(1, 1), ix.v(2, 1)});
    std::vector<vertex_index> want = {ix.vertex(1, 1), ix.vertex(2, 2)};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(b2, want);
}

TEST(Boundary, CyclesAreBoundaryless) {
    Tiling t = build_square_torus(5);
    SquareIndex ix(5);
    std::vector<edge_index> row;
    for (int x = 0; x < 5; ++x)
        row.push_back(ix.h(x, 2));
    EXPECT_TRUE(boundary(t, row).empty());
    for (const auto &walk : t.faces)
        EXPECT_TRUE(boundary(t, walk).empty());
}

TEST(Boundary, RejectsOutOfRangeIds) {
    Tiling t = build_square_torus(3);
    EXPECT_THROW(boundary(t, {t.n_edges()}), std::invalid_argument);
}

TEST(Syndrome, SingleErrorsFlipAdjacentChecks) {
    Tiling t = build_square_torus(5);
    DualView d = dual(t);
    SquareIndex ix(5);

    PauliErrorPair z_err;
    z_err.ez = {ix.v(2, 3)};
    SyndromePair sz = syndrome(t, d.tiling, z_err);
    EXPECT_EQ(sz.s_x, (std::vector<vertex_index>{ix.vertex(2, 3), ix.vertex(2, 4)}));
    EXPECT_TRUE(sz.s_z.empty());

    PauliErrorPair x_err;
    x_err.ex = {ix.v(2, 3)};
    SyndromePair sx = syndrome(t, d.tiling, x_err);
    EXPECT_TRUE(sx.s_x.empty());
    // v(2,3) separates faces (1,3) and (2,3).
    std::vector<vertex_index> want = {ix.face(1, 3), ix.face(2, 3)};
    std::sort(want.begin(), want.end());
    EXPECT_EQ(sx.s_z, want);

    PauliErrorPair y_err;
    y_err.ex = y_err.ez = {ix.v(2, 3)};
    SyndromePair sy = syndrome(t, d.tiling, y_err);
    EXPECT_EQ(sy.s_x, sz.s_x);
    EXPECT_EQ(sy.s_z, sx.s_z);
}

TEST(Syndrome, ConvenienceOverloadMatchesDualForm) {
    for (auto t : {build_square_torus(6), build_triangular_torus(5)}) {
        DualView d = dual(t);
        std::mt19937_64 rng(31);
        for (int k = 0; k < 25; ++k) {
            PauliErrorPair e = sample_depolarizing(t, 0.2, rng);
            EXPECT_EQ(syndrome(t, d.tiling, e), syndrome(t, e));
        }
    }
}

TEST(Syndrome, WorkedExampleOnFiveByFive) {
    // Z on h(2,4), Y on v(2,3), X on v(1,2), Y on v(3,1), Z on v(3,0):
    // the violated site checks sit at (3,0), (3,2), (2,3) and (3,4).
    Tiling t = build_square_torus(5);
    SquareIndex ix(5);
    PauliErrorPair e;
    e.ez = {ix.h(2, 4), ix.v(2, 3), ix.v(3, 1), ix.v(3, 0)};
    e.ex = {ix.v(2, 3), ix.v(1, 2), ix.v(3, 1)};
    std::sort(e.ez.begin(), e.ez.end());
    std::sort(e.ex.begin(), e.ex.end());

    SyndromePair s = syndrome(t, e);
    std::vector<vertex_index> want_x = {ix.vertex(3, 0), ix.vertex(3, 2), ix.vertex(2, 3),
                                        ix.vertex(3, 4)};
    std::sort(want_x.begin(), want_x.end());
    EXPECT_EQ(s.s_x, want_x);

    std::vector<vertex_index> want_z = {ix.face(1, 3), ix.face(2, 3), ix.face(0, 2),
                                        ix.face(1, 2), ix.face(2, 1), ix.face(3, 1)};
    std::sort(want_z.begin(), want_z.end());
    EXPECT_EQ(s.s_z, want_z);
}

TEST(SymmetricDifference, Basics) {
    EXPECT_EQ(symmetric_difference({1, 3, 5}, {3, 4}), (std::vector<edge_index>{1, 4, 5}));
    EXPECT_EQ(symmetric_difference({}, {2}), (std::vector<edge_index>{2}));
    EXPECT_EQ(symmetric_difference({2, 7}, {2, 7}), (std::vector<edge_index>{}));
}

TEST(IntersectionParity, Basics) {
    EXPECT_EQ(intersection_parity({1, 2, 3}, {2, 3, 9}), 0);
    EXPECT_EQ(intersection_parity({1, 2, 3}, {3, 9}), 1);
    EXPECT_EQ(intersection_parity({}, {1}), 0);
}

TEST(ResidualClass, ExactEstimateIsTrivial) {
    Tiling t = build_triangular_torus(4);
    DualView d = dual(t);
    HomologyBasis basis = homology_basis(t, d);
    std::mt19937_64 rng(5);
    PauliErrorPair e = sample_depolarizing(t, 0.25, rng);
    HomologyClass c = residual_class(t, basis, e, e);
    EXPECT_TRUE(c.trivial());
}

TEST(ResidualClass, DetectsWindingCycles) {
    int L = 5;
    Tiling t = build_square_torus(L);
    DualView d = dual(t);
    HomologyBasis basis = homology_basis(t, d);
    SquareIndex ix(L);
    PauliErrorPair truth;  // no error

    {
        PauliErrorPair est;  // Z loop winding in x: a row of horizontal edges
        for (int x = 0; x < L; ++x)
            est.ez.push_back(ix.h(x, 0));
        std::sort(est.ez.begin(), est.ez.end());
        HomologyClass c = residual_class(t, basis, truth, est);
        EXPECT_EQ(c.z_bits, (std::array<std::uint8_t, 2>{1, 0}));
        EXPECT_EQ(c.x_bits, (std::array<std::uint8_t, 2>{0, 0}));
        EXPECT_FALSE(c.trivial());
    }
    {
        PauliErrorPair est;  // Z loop winding in y: a column of vertical edges
        for (int y = 0; y < L; ++y)
            est.ez.push_back(ix.v(2, y));
        std::sort(est.ez.begin(), est.ez.end());
        HomologyClass c = residual_class(t, basis, truth, est);
        EXPECT_EQ(c.z_bits, (std::array<std::uint8_t, 2>{0, 1}));
    }
    {
        PauliErrorPair est;  // X loop on the dual winding in x: a row of
        for (int x = 0; x < L; ++x)  // vertical primal edges
            est.ex.push_back(ix.v(x, 1));
        std::sort(est.ex.begin(), est.ex.end());
        HomologyClass c = residual_class(t, basis, truth, est);
        EXPECT_EQ(c.z_bits, (std::array<std::uint8_t, 2>{0, 0}));
        EXPECT_EQ(c.x_bits, (std::array<std::uint8_t, 2>{1, 0}));
    }
    {
        PauliErrorPair est;  // X loop on the dual winding in y
        for (int y = 0; y < L; ++y)
            est.ex.push_back(ix.h(1, y));
        std::sort(est.ex.begin(), est.ex.end());
        HomologyClass c = residual_class(t, basis, truth, est);
        EXPECT_EQ(c.x_bits, (std::array<std::uint8_t, 2>{0, 1}));
    }
    {
        PauliErrorPair est;  // product of checks: one face's Z boundary plus
        est.ez = t.faces[7];  // one star's X coboundary
        std::sort(est.ez.begin(), est.ez.end());
        for (std::uint32_t k = t.adj_offset[11]; k < t.adj_offset[12]; ++k)
            est.ex.push_back(t.adj_edge[k]);
        std::sort(est.ex.begin(), est.ex.end());
        HomologyClass c = residual_class(t, basis, truth, est);
        EXPECT_TRUE(c.trivial());
    }
}

TEST(ResidualClass, RejectsSyndromeMismatch) {
    Tiling t = build_square_torus(4);
    HomologyBasis basis = homology_basis(t, dual(t));
    PauliErrorPair truth;
    truth.ez = {0};
    PauliErrorPair est;
    EXPECT_THROW(residual_class(t, basis, truth, est), std::invalid_argument);
    PauliErrorPair xerr;
    xerr.ex = {0};
    EXPECT_THROW(residual_class(t, basis, xerr, est), std::invalid_argument);
}
