#include <doctest.h>

#include <cmath>
#include <random>

#include "crystal/distribution.hpp"
#include "crystal/presets.hpp"

using namespace crystal;

namespace {

RealVector vec(std::initializer_list<double> v)
{
    RealVector r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) r[i++] = x;
    return r;
}

double mass_near(const LatticeDistribution& d, const RealVector& p, double tol = 1e-12)
{
    for (std::size_t i = 0; i < d.size(); ++i)
        if ((d.points[i] - p).norm() <= tol) return d.masses[i];
    return 0.0;
}

}  // namespace

TEST_CASE("two-point line law")
{
    const auto spec = presets::line_two_point(0.25, 0.75, 1.3);
    const auto d = shintani_distribution(spec, vec({1.3}));
    REQUIRE(d.size() == 2);
    CHECK(mass_near(d, vec({1})) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(mass_near(d, vec({-1})) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(std::abs(d.total - 1.0) < 1e-12);

    // cos t at alpha = beta = 1/2
    const auto half = presets::line_two_point(0.5, 0.5, 0.4);
    for (double t : {0.0, 0.7, 2.5}) {
        CHECK(std::abs(characteristic_function(half, vec({0.4}), vec({t})) - std::cos(t)) < 1e-12);
    }
}

TEST_CASE("Poisson law on the line")
{
    const double rate = 1.7;
    const double sigma = 0.9;
    const auto spec = presets::line_poisson(rate, sigma);
    const auto d = shintani_distribution(spec, vec({sigma}), TruncationPolicy{40});
    double fact = 1.0;
    for (int k = 0; k <= 15; ++k) {
        if (k > 0) fact *= k;
        const double expected = std::exp(-rate) * std::pow(rate, k) / fact;
        CHECK(mass_near(d, vec({static_cast<double>(k)}), 1e-9) == doctest::Approx(expected).epsilon(1e-12));
    }
    CHECK(d.total <= 1.0 + 1e-12);
    CHECK(d.deficit() < 1e-12);

    // exp(rate (e^{it} - 1))
    for (double t : {0.3, 1.0, 2.0}) {
        const Complex expected = std::exp(rate * (std::exp(Complex{0.0, t}) - 1.0));
        CHECK(std::abs(characteristic_function(spec, vec({sigma}), vec({t}), TruncationPolicy{40}) - expected) < 1e-12);
    }
}

TEST_CASE("truncated law reports a conservative deficit")
{
    const auto spec = presets::line_poisson(3.0, 0.0);
    const auto d = shintani_distribution(spec, vec({0.0}), TruncationPolicy{6});
    // exact mass beyond k = 6 for Poisson(3)
    double kept = 0.0;
    double fact = 1.0;
    for (int k = 0; k <= 6; ++k) {
        if (k > 0) fact *= k;
        kept += std::exp(-3.0) * std::pow(3.0, k) / fact;
    }
    CHECK(d.total <= 1.0);
    CHECK(d.deficit() >= 1.0 - kept - 1e-12);
}

TEST_CASE("hexagonal kernel at x")
{
    const auto walk = presets::finite_walk("hexagonal", {1, std::vector<double>{0.2, 0.3, 0.5}, std::nullopt});
    const auto& law = walk.kernels[0]->law;
    CHECK(mass_near(law, vec({1.0 / 3, 2.0 / 3})) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(mass_near(law, vec({1.0 / 3, -1.0 / 3})) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(mass_near(law, vec({-2.0 / 3, -1.0 / 3})) == doctest::Approx(0.5).epsilon(1e-14));
    REQUIRE(law.lattice_points);
    for (const auto& lp : *law.lattice_points) CHECK(lp.base_vertex == 1);
}

TEST_CASE("finite-support round trip on random inputs")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(-3.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 3);
        const int m = 1 + static_cast<int>(rng() % 6);
        std::vector<RealVector> pts;
        std::vector<double> w;
        double sum = 0.0;
        for (int l = 0; l < m; ++l) {
            RealVector p(d);
            for (int k = 0; k < d; ++k) p[k] = std::round(unif(rng) * 4.0) / 4.0 + 0.001 * l;
            pts.push_back(p);
            w.push_back(0.1 + std::abs(unif(rng)));
            sum += w.back();
        }
        for (auto& x : w) x /= sum;
        double check = 0.0;
        for (double x : w) check += x;
        w.back() += 1.0 - check;
        RealVector sigma(d);
        for (int k = 0; k < d; ++k) sigma[k] = unif(rng) + (k == 0 ? 5.0 : 0.0);

        const auto spec = finite_support_to_shintani(pts, w, sigma);
        const auto law = shintani_distribution(spec, sigma);
        REQUIRE(law.size() == static_cast<std::size_t>(m));
        for (int l = 0; l < m; ++l) {
            CHECK((law.points[static_cast<std::size_t>(l)] - pts[static_cast<std::size_t>(l)]).norm() < 1e-12);
            CHECK(std::abs(law.masses[static_cast<std::size_t>(l)] - w[static_cast<std::size_t>(l)]) < 1e-12);
        }
        CHECK(std::abs(law.total - 1.0) < 1e-12);

        // CF consistency: value 1 at t = 0, modulus at most 1, spec ratio equals the finite sum
        CHECK(std::abs(characteristic_function(spec, sigma, RealVector::Zero(d)) - 1.0) < 1e-12);
        for (int i = 0; i < 100; ++i) {
            RealVector t(d);
            for (int k = 0; k < d; ++k) t[k] = 3.0 * unif(rng);
            const Complex f = characteristic_function(law, t);
            CHECK(std::abs(f) <= 1.0 + 1e-12);
            if (i < 5) CHECK(std::abs(characteristic_function(spec, sigma, t) - f) < 1e-12);
        }
    }
}

TEST_CASE("finite-support construction rejects bad inputs")
{
    CHECK_THROWS_AS(finite_support_to_shintani({vec({1})}, {0.5}, vec({1})), PreconditionError);
    CHECK_THROWS_AS(finite_support_to_shintani({vec({1}), vec({2})}, {1.5, -0.5}, vec({1})), PreconditionError);
    CHECK_THROWS_AS(finite_support_to_shintani({vec({1})}, {1.0}, vec({0})), PreconditionError);
    // delta law
    const auto spec = finite_support_to_shintani({vec({1, 0})}, {1.0}, vec({1, 1}));
    const auto d = shintani_distribution(spec, vec({1, 1}));
    REQUIRE(d.size() == 1);
    CHECK(d.masses[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK((d.points[0] - vec({1, 0})).norm() < 1e-15);
}

TEST_CASE("triangular law with N = 1 has seven points")
{
    const auto pts = presets::triangular_support(1);
    const auto spec = finite_support_to_shintani(pts, std::vector<double>(7, 1.0 / 7), vec({0.5, 0.2}));
    const auto d = shintani_distribution(spec, vec({0.5, 0.2}));
    CHECK(d.size() == 7);
}

TEST_CASE("coincident points are merged and mixed signs rejected")
{
    ShintaniZetaSpec spec;
    spec.lambda = RealMatrix::Identity(2, 2);
    spec.u = RealVector::Ones(2);
    spec.c = {vec({-1.0 / std::log(2.0)}), vec({-1.0 / std::log(2.0)})};
    // n = (1, 0) and (0, 1) both map to the point 1
    spec.theta = FiniteSupportTheta{{{{1, 0}, {0.3, 0.0}}, {{0, 1}, {0.7, 0.0}}}};
    const auto d = shintani_distribution(spec, vec({0.0}));
    REQUIRE(d.size() == 1);
    CHECK(d.masses[0] == doctest::Approx(1.0).epsilon(1e-14));

    spec.theta = FiniteSupportTheta{{{{1, 0}, {0.3, 0.0}}, {{0, 0}, {-0.7, 0.0}}}};
    CHECK_THROWS_AS(shintani_distribution(spec, vec({0.0})), PreconditionError);
    spec.theta = FiniteSupportTheta{{{{1, 0}, {0.0, 0.0}}}};
    CHECK_THROWS_AS(shintani_distribution(spec, vec({0.0})), PreconditionError);

    // nonpositive theta is normalized by sign
    spec.theta = FiniteSupportTheta{{{{1, 0}, {-0.3, 0.0}}, {{0, 0}, {-0.7, 0.0}}}};
    const auto neg = shintani_distribution(spec, vec({0.0}));
    for (double m : neg.masses) CHECK(m > 0.0);
    CHECK(std::abs(neg.total - 1.0) < 1e-12);
}

TEST_CASE("Riemann zeta law")
{
    const auto d = riemann_zeta_distribution(2.0, 1000);
    const double inv = 6.0 / (M_PI * M_PI);
    CHECK(d.masses[0] == doctest::Approx(inv).epsilon(1e-14));
    CHECK(d.masses[1] == doctest::Approx(inv / 4).epsilon(1e-14));
    CHECK(d.points[1][0] == doctest::Approx(-std::log(2.0)));
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(d.masses[i] <= d.masses[i - 1]);
    // deficit = sum_{n > 1000} n^-2 / zeta(2), between 1/1001 and 1/1000 times 6/pi^2
    CHECK(d.deficit() > inv / 1001.0);
    CHECK(d.deficit() < inv / 1000.0);
    CHECK_THROWS_AS(riemann_zeta_distribution(1.0, 10), PreconditionError);
}

TEST_CASE("lattice points are attached through locate")
{
    const auto sq = presets::square();
    LatticeDistribution d;
    d.points = {vec({1, 0}), vec({0, -1})};
    d.masses = {0.5, 0.5};
    d.total = 1.0;
    attach_lattice_points(d, sq, 0);
    REQUIRE(d.lattice_points);
    CHECK((*d.lattice_points)[1].cell[1] == -1);
    d.points[0] = vec({0.5, 0});
    CHECK_THROWS_AS(attach_lattice_points(d, sq, 0), PreconditionError);
}
