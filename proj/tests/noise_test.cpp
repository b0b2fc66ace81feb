#include "torimatch/noise.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

using namespace torimatch;

TEST(DepolarizingParams, DerivedRates) {
    DepolarizingParams d(0.15);
    EXPECT_NEAR(d.marginal_rate, 0.1, 1e-15);
    EXPECT_NEAR(d.conditional_rate, 1.0 / 18.0, 1e-15);
    DepolarizingParams zero(0.0);
    EXPECT_EQ(zero.marginal_rate, 0.0);
    EXPECT_EQ(zero.conditional_rate, 0.0);
}

TEST(DepolarizingParams, RejectsOutOfDomainRates) {
    EXPECT_THROW(DepolarizingParams(-0.01), std::domain_error);
    EXPECT_THROW(DepolarizingParams(0.75), std::domain_error);
    EXPECT_THROW(DepolarizingParams(1.2), std::domain_error);
    EXPECT_NO_THROW(DepolarizingParams(0.7499));
}

TEST(ConditionalProbs, MatchesClosedForms) {
    // At p = 0.6 the no-X branch has exact thirds: (p/3)/(1-2p/3) = 1/3.
    ConditionalProbs c = conditional_probabilities(0.6);
    EXPECT_NEAR(c.z_given_no_x, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(c.i_given_no_x, 2.0 / 3.0, 1e-12);
    EXPECT_EQ(c.z_given_x, 0.5);
    EXPECT_EQ(c.i_given_x, 0.5);
    for (double p : {0.0, 0.1, 0.3, 0.5, 0.7}) {
        ConditionalProbs probs = conditional_probabilities(p);
        EXPECT_NEAR(probs.z_given_x + probs.i_given_x, 1.0, 1e-12);
        EXPECT_NEAR(probs.z_given_no_x + probs.i_given_no_x, 1.0, 1e-12);
    }
}

TEST(SampleDepolarizing, MarginalStatistics) {
    Tiling t = build_square_torus(8);
    double p = 0.12;
    int trials = 4000;
    std::mt19937_64 rng(12345);
    long n_x = 0, n_y = 0, n_z = 0;
    for (int k = 0; k < trials; ++k) {
        PauliErrorPair e = sample_depolarizing(t, p, rng);
        std::size_t both = e.ex.size() + e.ez.size() - pauli_weight(e);
        n_y += long(both);
        n_x += long(e.ex.size() - both);
        n_z += long(e.ez.size() - both);
    }
    double draws = double(trials) * t.n_edges();
    double mean = draws * p / 3.0;
    double sigma = std::sqrt(draws * (p / 3.0) * (1.0 - p / 3.0));
    EXPECT_NEAR(double(n_x), mean, 5.0 * sigma);
    EXPECT_NEAR(double(n_y), mean, 5.0 * sigma);
    EXPECT_NEAR(double(n_z), mean, 5.0 * sigma);
}

TEST(SampleDepolarizing, SortedUniqueInRange) {
    Tiling t = build_triangular_torus(6);
    std::mt19937_64 rng(7);
    for (int k = 0; k < 50; ++k) {
        PauliErrorPair e = sample_depolarizing(t, 0.4, rng);
        EXPECT_TRUE(std::is_sorted(e.ex.begin(), e.ex.end()));
        EXPECT_TRUE(std::is_sorted(e.ez.begin(), e.ez.end()));
        EXPECT_TRUE(std::adjacent_find(e.ex.begin(), e.ex.end()) == e.ex.end());
        EXPECT_TRUE(std::adjacent_find(e.ez.begin(), e.ez.end()) == e.ez.end());
        if (!e.ex.empty()) {
            EXPECT_LT(e.ex.back(), t.n_edges());
        }
        if (!e.ez.empty()) {
            EXPECT_LT(e.ez.back(), t.n_edges());
        }
    }
}

TEST(SampleDepolarizing, SeedReproducibility) {
    Tiling t = build_square_torus(10);
    std::mt19937_64 a(99), b(99), c(100);
    PauliErrorPair ea = sample_depolarizing(t, 0.2, a);
    PauliErrorPair eb = sample_depolarizing(t, 0.2, b);
    PauliErrorPair ec = sample_depolarizing(t, 0.2, c);
    EXPECT_EQ(ea, eb);
    EXPECT_NE(ea, ec);
}

TEST(SampleDepolarizing, ZeroRateIsClean) {
    Tiling t = build_square_torus(4);
    std::mt19937_64 rng(1);
    PauliErrorPair e = sample_depolarizing(t, 0.0, rng);
    EXPECT_TRUE(e.ex.empty());
    EXPECT_TRUE(e.ez.empty());
    EXPECT_EQ(pauli_weight(e), 0u);
}

TEST(PauliErrorPair, WeightCountsYOnce) {
    PauliErrorPair e;
    e.ex = {1, 5};
    e.ez = {5, 7};
    EXPECT_EQ(pauli_weight(e), 3u);
    EXPECT_EQ(pauli_at(e, 1), Pauli::X);
    EXPECT_EQ(pauli_at(e, 5), Pauli::Y);
    EXPECT_EQ(pauli_at(e, 7), Pauli::Z);
    EXPECT_EQ(pauli_at(e, 2), Pauli::I);
}

TEST(ErrorCsv, RoundTrip) {
    Tiling t = build_triangular_torus(5);
    std::mt19937_64 rng(42);
    PauliErrorPair e = sample_depolarizing(t, 0.3, rng);
    std::ostringstream out;
    write_error_csv(out, e);
    std::istringstream in(out.str());
    PauliErrorPair back = read_error_csv(in, t.n_edges());
    EXPECT_EQ(e, back);
}

TEST(ErrorCsv, WriterFormat) {
    PauliErrorPair e;
    e.ex = {2, 9};
    e.ez = {4, 9};
    std::ostringstream out;
    write_error_csv(out, e);
    EXPECT_EQ(out.str(), "edge_id,pauli\n2,X\n4,Z\n9,Y\n");
}

TEST(ErrorCsv, RejectsMalformedInput) {
    auto parse = [](const std::string &text, std::uint32_t n_edges) {
        std::istringstream in(text);
        return read_error_csv(in, n_edges);
    };
    EXPECT_THROW(parse("", 10), std::invalid_argument);
    EXPECT_THROW(parse("edge,pauli\n", 10), std::invalid_argument);
    EXPECT_THROW(parse("edge_id,pauli\n3,Q\n", 10), std::invalid_argument);
    EXPECT_THROW(parse("edge_id,pauli\n3,I\n", 10), std::invalid_argument);
    EXPECT_THROW(parse("edge_id,pauli\n12,X\n", 10), std::invalid_argument);
    EXPECT_THROW(parse("edge_id,pauli\n3,X\n3,Z\n", 10), std::invalid_argument);
    EXPECT_THROW(parse("edge_id,pauli\nfoo,X\n", 10), std::invalid_argument);
    EXPECT_NO_THROW(parse("edge_id,pauli\n3,X\n", 10));
    EXPECT_NO_THROW(parse("edge_id,pauli\r\n3,Y\r\n", 10));
}
