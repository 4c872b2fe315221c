#pragma once

#include <functional>
#include <map>
#include <vector>

#include "crystal/compound_poisson.hpp"
#include "crystal/rng.hpp"

namespace crystal {

/// (1/N) sum exp(i <t, x_k>). Throws PreconditionError on empty input.
Complex empirical_cf(const std::vector<RealVector>& samples, const RealVector& t);

struct CfComparison {
    std::vector<RealVector> grid;
    std::vector<Complex> analytic;
    std::vector<Complex> empirical;
    double max_abs_dev = 0.0;
    std::size_t n_samples = 0;
    double threshold = 0.0;  ///< c / sqrt(N)
    bool passed = false;
};

CfComparison compare_cf(const std::function<Complex(const RealVector&)>& analytic,
                        const std::vector<RealVector>& samples, const std::vector<RealVector>& grid, double c = 4.0);

/// Compound Poisson pmf by direct convolution: jumps restricted to
/// |location|_inf <= R, partial sums restricted to the same box, Poisson
/// orders until the remaining Poisson tail is below 1e-12. Points are binned
/// on the integer grid when every atom is integral, else at 1e-9 resolution.
struct BruteForcePmf {
    std::vector<RealVector> points;
    std::vector<double> masses;
    double deficit = 0.0;     ///< mass lost to the box and the Poisson tail, accounted separately
    double resolution = 1.0;

    double mass_at(const RealVector& x) const;
    Complex cf(const RealVector& t) const;
};

BruteForcePmf brute_force_cp_pmf(const CompoundPoissonLaw& law, double support_radius);

using CpSampler = std::function<RealVector(const CompoundPoissonLaw&, Rng&)>;

/// Pearson chi-square p-value of `n_draws` sampler draws (stream 0 of `seed`)
/// against brute_force_cp_pmf on radius R, with an extra bin for everything
/// outside the oracle support. Bins expected to hold fewer than 5 draws are
/// pooled. A law with no jumps returns 1 when every draw is 0 and 0 otherwise.
double sampler_vs_oracle(const CompoundPoissonLaw& law, int n_draws, double support_radius, std::uint64_t seed,
                         const CpSampler& sampler = {});

}  // namespace crystal
