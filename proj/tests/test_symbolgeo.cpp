#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fracutm/checks.hpp"
#include "fracutm/symbolgeo.hpp"

using namespace fracutm;

TEST(PrincipalPower, SpotValues) {
    cplx I(0.0, 1.0);
    EXPECT_LE(std::abs(principal_power(I, 2.0) - cplx(-1.0)), 1e-15);
    for (double a : {0.3, 1.0, 2.2, 2.9}) EXPECT_LE(std::abs(principal_power(1.0, a) - 1.0), 1e-15);
    cplx k = std::polar(2.0, M_PI / 3);
    // oracle: exp(alpha (ln r + i theta))
    cplx ref = std::exp(1.5 * cplx(std::log(2.0), M_PI / 3));
    EXPECT_LE(std::abs(principal_power(k, 1.5) - ref), 1e-14);
    EXPECT_NEAR(principal_power(k, 1.5).imag(), 2.8284271, 1e-7);
    EXPECT_NEAR(principal_power(k, 1.5).real(), 0.0, 1e-14);
}

TEST(PrincipalPower, BranchConsistency) { EXPECT_LE(checks::branch_consistency_error(), 1e-12); }

TEST(Symbol, MonomialValues) {
    auto w2 = FractionalSymbol::monomial(1.0, 2.0);
    EXPECT_LE(std::abs(w2(1.0) - 1.0), 1e-15);
    auto w22 = FractionalSymbol::monomial(1.0, 2.2);
    cplx ref = -std::exp(cplx(0.0, 1.1 * M_PI));
    EXPECT_LE(std::abs(w22(1.0) - ref), 1e-14);
    EXPECT_NEAR(w22(1.0).real(), 0.9511, 1e-4);
    EXPECT_NEAR(w22(1.0).imag(), 0.3090, 1e-4);
}

TEST(Symbol, MultiTermIntegerPowers) {
    FractionalSymbol w({{1.0, 1.0}, {1.0, 2.0}});
    EXPECT_LE(std::abs(w(cplx(0.0, 1.0)) - cplx(-1.0, 1.0)), 1e-15);
}

TEST(Symbol, RejectsBadTerms) {
    EXPECT_THROW(FractionalSymbol({}), DomainError);
    EXPECT_THROW(FractionalSymbol({{1.0, -1.0}}), DomainError);
}

TEST(Admissibility, MonomialTable) {
    EXPECT_EQ(checks::admissibility_mismatches(), 0);
    EXPECT_TRUE(monomial_admissible(2.0));
    EXPECT_FALSE(monomial_admissible(0.5));
    EXPECT_TRUE(monomial_admissible(5.5));
    EXPECT_FALSE(monomial_admissible(3.5));
}

TEST(Admissibility, SamplingAgreesWithIntervals) {
    for (double a : {0.5, 1.2, 2.0, 2.2, 2.9, 3.5, 4.5, 5.5}) {
        auto v = check_real_axis_admissible(FractionalSymbol::monomial(1.0, a), 400);
        EXPECT_EQ(v.admissible, monomial_admissible(a)) << "alpha " << a;
    }
}

TEST(Regions, SectorValues) {
    auto s2 = dplus_sectors(2.0);
    ASSERT_EQ(s2.sectors.size(), 1u);
    EXPECT_NEAR(s2.sectors[0].first, M_PI / 4, 1e-15);
    EXPECT_NEAR(s2.sectors[0].second, 3 * M_PI / 4, 1e-15);
    EXPECT_TRUE(dplus_sectors(1.4).empty());
    auto s22 = dplus_sectors(2.2);
    ASSERT_EQ(s22.sectors.size(), 1u);
    EXPECT_NEAR(s22.sectors[0].first, 0.5712, 1e-4);
    EXPECT_NEAR(s22.sectors[0].second, 2.5704, 1e-4);
    EXPECT_THROW(dplus_sectors(2.6), DomainError);
    EXPECT_THROW(dplus_sectors(1.0), DomainError);
}

TEST(Regions, IndicatorSpotValues) {
    auto w2 = FractionalSymbol::monomial(1.0, 2.0);
    EXPECT_TRUE(dplus_indicator(w2, cplx(0.0, 1.0)));
    EXPECT_FALSE(dplus_indicator(w2, cplx(1.0, 0.0)));
    EXPECT_FALSE(dplus_indicator(FractionalSymbol::monomial(1.0, 2.2), std::polar(1.0, M_PI / 8)));
}

TEST(Regions, AgreeWithIndicator) {
    for (double a : {1.6, 2.0, 2.2, 2.4}) EXPECT_EQ(checks::region_disagreements(a), 0) << a;
}

TEST(Regions, EmptyForSmallAlpha) {
    for (double a : {1.1, 1.3, 1.5}) EXPECT_EQ(checks::region_hits(a), 0) << a;
}

TEST(Regions, SectorEdgesAreGammaRays) {
    for (double a : {1.6, 2.0, 2.2, 2.4}) {
        auto [t1, t2] = gamma_ray_angles(a);
        auto s = dplus_sectors(a).sectors.at(0);
        EXPECT_NEAR(s.first, t2, 1e-14);
        EXPECT_NEAR(s.second, t1, 1e-14);
    }
}

TEST(Contour, ExactRayAngles) {
    auto [a1, a2] = gamma_ray_angles(2.0);
    EXPECT_NEAR(a1, 3 * M_PI / 4, 1e-15);
    EXPECT_NEAR(a2, M_PI / 4, 1e-15);
    auto [b1, b2] = gamma_ray_angles(2.2);
    EXPECT_NEAR(b1, 2.5704, 1e-4);
    EXPECT_NEAR(b2, 0.5712, 1e-4);
}

TEST(Contour, NodesLieInDecayRegion) {
    for (double a : {1.6, 2.0, 2.2, 2.3}) {
        auto w = FractionalSymbol::monomial(1.0, a);
        auto c = gamma_contour(a, 30.0, 0.1, 300);
        ASSERT_GT(c.size(), 0u);
        for (std::size_t i = 0; i < c.size(); ++i) {
            EXPECT_GT(c.nodes[i].imag(), 0.0);
            EXPECT_GT(w(c.nodes[i]).real(), 0.0);
        }
    }
}

TEST(Contour, OrientationDescendingThenAscending) {
    auto c = gamma_contour(2.0, 10.0, 0.05, 60);
    auto [t1, t2] = gamma_ray_angles(2.0);
    // descending ray: dk points toward the origin, so the weights point along -e^{i theta}
    for (std::size_t i = 0; i < c.size(); ++i) {
        double th = c.ray_of[i] == 0 ? t1 + 0.05 : t2 - 0.05;
        cplx dir = std::polar(1.0, th) * (c.ray_of[i] == 0 ? -1.0 : 1.0);
        EXPECT_GT((c.weights[i] * std::conj(dir)).real(), 0.0);
        EXPECT_NEAR(std::arg(c.nodes[i]), th, 1e-12);
    }
}

TEST(Contour, RejectsBadRotation) {
    EXPECT_THROW(gamma_contour(2.0, 10.0, 0.5, 60), GeometryError);
    EXPECT_THROW(gamma_contour(1.4, 10.0, 0.05, 60), GeometryError);
}

TEST(Nu, Candidates) {
    auto n2 = nu_candidates(2.0);
    ASSERT_EQ(n2.size(), 1u);
    EXPECT_LE(std::abs(n2[0].factor + 1.0), 1e-15);
    auto [r1, r2] = nu_rotated_angles(2.0);
    EXPECT_NEAR(r1, -M_PI / 4, 1e-15);
    EXPECT_NEAR(r2, -3 * M_PI / 4, 1e-15);
    auto [s1, s2] = nu_rotated_angles(2.2);
    EXPECT_NEAR(s1, -0.2856, 1e-4);
    EXPECT_NEAR(s2, -2.2848, 1e-4);
    EXPECT_LE(std::abs(nu_candidates(2.2).at(0).factor - std::polar(1.0, -2 * M_PI / 2.2)), 1e-15);
    EXPECT_TRUE(nu_candidates(1.3).empty());
    EXPECT_TRUE(nu_candidates(2.4).empty());
}

TEST(Nu, PreservesSymbol) {
    for (double a : {2.0, 2.2}) {
        EXPECT_LE(checks::nu_preservation_error(a), 1e-12);
        EXPECT_LE(checks::per_ray_nu_preservation_error(a), 1e-12);
    }
}

TEST(Nu, WindowMatchesGeometry) { EXPECT_EQ(checks::nu_window_mismatches(), 0); }

TEST(Nu, SingleFactorBreaksBranchOnLeftRay) {
    // on the descending ray the single factor lands on the other sheet of (ik)^alpha
    const double a = 2.2;
    auto w = FractionalSymbol::monomial(1.0, a);
    cplx k = std::polar(1.0, gamma_ray_angles(a).first + 0.05);
    cplx nk = nu_candidates(a).at(0)(k);
    EXPECT_GT(std::abs(w(nk) - w(k)), 0.1);
    EXPECT_LE(std::abs(w(branch_consistent_nu(a, 0) * k) - w(k)), 1e-13);
}

TEST(PrincipalPower, CutHandling) {
    EXPECT_THROW(principal_power(cplx(-2.0, 0.0), 0.5), BranchCutError);
    EXPECT_LE(std::abs(principal_power(cplx(-2.0, 0.0), 3.0) - cplx(-8.0)), 1e-14);
    EXPECT_EQ(principal_power(0.0, 1.5), cplx(0.0));
    EXPECT_THROW(principal_power(0.0, 0.0), DomainError);
    EXPECT_THROW(FractionalSymbol::monomial(1.0, 2.2)(cplx(0.0, 1.0)), BranchCutError);
}
