#include <doctest.h>

#include <cmath>

#include "crystal/cf_analysis.hpp"
#include "crystal/compound_poisson.hpp"
#include "crystal/distribution.hpp"

using namespace crystal;

namespace {

RealVector vec(std::initializer_list<double> v)
{
    RealVector r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) r[i++] = x;
    return r;
}

JumpTable table_of(const CompoundPoissonLaw& law)
{
    JumpTable beta;
    double sum = 0.0;
    for (const auto& atom : law.levy.atoms) sum += atom.weight;
    for (const auto& atom : law.levy.atoms) beta[{atom.order, atom.direction}] = atom.weight / sum;
    return beta;
}

}  // namespace

TEST_CASE("falsification with a negative coefficient")
{
    FiniteEulerSpec spec{1, {-0.5}, {vec({1})}};
    const auto hit = falsify_cf(spec, vec({1.0}));
    REQUIRE(hit);
    const double q = std::exp(-1.0) / 2;
    const double peak = (1 + q) / (1 - q);
    CHECK(hit->modulus <= peak + 1e-12);
    CHECK(hit->modulus >= peak - 1e-3);
    // the modulus reported is the modulus at t0
    CHECK(std::abs(std::abs(characteristic_function(spec, vec({1.0}), hit->t0)) - hit->modulus) < 1e-12);
    // direct evaluation at pi
    CHECK(std::abs(std::abs(characteristic_function(spec, vec({1.0}), vec({M_PI}))) - peak) < 1e-12);
}

TEST_CASE("falsification in two dimensions")
{
    FiniteEulerSpec spec{2, {0.5, -0.5}, {vec({1, 0}), vec({0, 1})}};
    const auto hit = falsify_cf(spec, vec({0.5, 0.5}));
    REQUIRE(hit);
    CHECK(hit->modulus > 1.0 + 1e-9);
}

TEST_CASE("no falsification for nonnegative coefficients")
{
    Rng rng = make_stream(21, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 2);
        FiniteEulerSpec spec;
        spec.dim = d;
        RealVector sigma = RealVector::Constant(d, 0.5);
        for (int l = 0; l < 2; ++l) {
            RealVector a(d);
            for (int k = 0; k < d; ++k) a[k] = 1.0 + uniform01(rng);
            spec.a.push_back(a);
            spec.alpha.push_back(uniform01(rng));
        }
        CHECK_FALSE(falsify_cf(spec, sigma, SearchBudget{2000, 50, 50.0}));
    }
}

TEST_CASE("geometric check: logarithmic table")
{
    JumpTable beta;
    for (std::int64_t r = 1; r <= 60; ++r) beta[{r, 0}] = std::pow(0.5, static_cast<double>(r)) / r / std::log(2.0);
    // drop the truncated tail mass into the normalization
    double s = 0.0;
    for (const auto& [k, v] : beta) s += v;
    for (auto& [k, v] : beta) v /= s;
    const auto g = geometric_check(beta, {vec({1})});
    REQUIRE(g);
    CHECK(g->ratios[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g->alpha[0] * std::exp(-g->sigma[0]) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(g->alpha[0] > 0.0);
    CHECK(g->alpha[0] <= 1.0);
}

TEST_CASE("geometric check: degenerate and noisy tables")
{
    JumpTable single{{{1, 0}, 1.0}};
    CHECK_FALSE(geometric_check(single, {vec({1})}));

    JumpTable beta;
    for (std::int64_t r = 1; r <= 40; ++r) beta[{r, 0}] = std::pow(0.5, static_cast<double>(r)) / r / std::log(2.0);
    double s = 0.0;
    for (const auto& [k, v] : beta) s += v;
    for (auto& [k, v] : beta) v /= s;
    JumpTable noisy = beta;
    Rng rng = make_stream(1, 0);
    double ns = 0.0;
    for (auto& [k, v] : noisy) {
        v *= 1.0 + 1e-3 * (2.0 * uniform01(rng) - 1.0);
        ns += v;
    }
    for (auto& [k, v] : noisy) v /= ns;
    CHECK_FALSE(geometric_check(noisy, {vec({1})}));

    CHECK_THROWS_AS(geometric_check(beta, {vec({1, 0}), vec({2, 0})}), PreconditionError);
    JumpTable unnormalized{{{1, 0}, 0.5}};
    CHECK_THROWS_AS(geometric_check(unnormalized, {vec({1})}), PreconditionError);
}

TEST_CASE("geometric check inverts the compound Poisson law")
{
    Rng rng = make_stream(77, 0);
    for (int trial = 0; trial < 50; ++trial) {
        const int m = 1 + static_cast<int>(rng() % 3);
        const int d = m + static_cast<int>(rng() % 2);
        std::vector<RealVector> a;
        std::vector<double> ratios;
        for (int l = 0; l < m; ++l) {
            RealVector v = RealVector::Zero(d);
            v[l] = 1.0 + uniform01(rng);
            for (int k = 0; k < d; ++k)
                if (k != l) v[k] = 0.3 * (uniform01(rng) - 0.5);
            a.push_back(v);
            ratios.push_back(0.05 + 0.9 * uniform01(rng));
        }
        const auto [spec, sigma] = euler_spec_from_ratios(ratios, a);
        const auto law = compound_poisson_law(spec, sigma);
        for (int l = 0; l < m; ++l) CHECK(std::abs(law.ratios[static_cast<std::size_t>(l)] - ratios[static_cast<std::size_t>(l)]) < 1e-12);

        const auto g = geometric_check(table_of(law), a);
        REQUIRE(g);
        FiniteEulerSpec back{d, g->alpha, a};
        const auto law2 = compound_poisson_law(back, g->sigma);
        for (int l = 0; l < m; ++l) {
            CHECK(std::abs(g->ratios[static_cast<std::size_t>(l)] - ratios[static_cast<std::size_t>(l)]) < 1e-9);
            CHECK(std::abs(law2.ratios[static_cast<std::size_t>(l)] - ratios[static_cast<std::size_t>(l)]) < 1e-9);
        }
        // sigma is the least-norm solution: it lies in the row space of a
        RealMatrix M(m, d);
        for (int l = 0; l < m; ++l) M.row(l) = a[static_cast<std::size_t>(l)].transpose();
        const RealVector proj = M.transpose() * (M * M.transpose()).ldlt().solve(M * g->sigma);
        CHECK((proj - g->sigma).norm() < 1e-9);
    }
}
