#pragma once

#include <string>
#include <vector>

#include "crystal/euler.hpp"
#include "crystal/rng.hpp"

namespace crystal {

struct LevyAtom {
    RealVector location;   ///< -order * a_direction
    double weight = 0.0;   ///< A^order / order
    int direction = 0;     ///< factor index l (0-based)
    std::int64_t order = 1;
};

/// Finite Levy measure, truncated in r once the omitted weight drops below 1e-14
/// per factor. `total_mass` is the exact untruncated value.
struct LevyMeasure {
    std::vector<LevyAtom> atoms;
    double total_mass = 0.0;

    /// log of the CF: sum weight (exp(i <t, location>) - 1).
    Complex log_cf(const RealVector& t) const;
};

/// P(r) = A^r / (r * -log(1 - A)) on r >= 1. Sampled by inverse CDF over a
/// table reaching cumulative 1 - 1e-12, with exact term-by-term continuation
/// beyond it.
class LogarithmicDistribution {
  public:
    explicit LogarithmicDistribution(double ratio);

    double ratio() const { return ratio_; }
    double pmf(std::int64_t r) const;
    double mean() const;
    std::int64_t sample(Rng& rng) const;
    std::int64_t quantile(double u) const;

  private:
    double ratio_;
    double log_norm_;  ///< -log(1 - A)
    std::vector<double> cdf_;
};

/// Compound Poisson law whose CF is Z(sigma + it) / Z(sigma) for a finite
/// Euler product with every alpha_l >= 0 and every ratio below 1.
struct CompoundPoissonLaw {
    FiniteEulerSpec spec;
    RealVector sigma;
    std::vector<double> ratios;             ///< A_l = alpha_l exp(-<a_l, sigma>)
    std::vector<double> direction_masses;   ///< -log(1 - A_l)
    LevyMeasure levy;
    std::vector<LogarithmicDistribution> jump_law;
    std::vector<std::string> warnings;      ///< e.g. linearly dependent a_l

    int dim() const { return spec.dim; }
    double total_mass() const { return levy.total_mass; }
    Complex cf(const RealVector& t) const;
};

CompoundPoissonLaw compound_poisson_law(const FiniteEulerSpec& spec, const RealVector& sigma);

/// One jump as (factor l, order r); the jump vector is -r a_l.
struct JumpIndex {
    int direction = 0;
    std::int64_t order = 1;
};

JumpIndex sample_jump_index(const CompoundPoissonLaw& law, Rng& rng);
RealVector sample_jump(const CompoundPoissonLaw& law, Rng& rng);

/// Total order drawn per factor in one compound Poisson draw: the draw is
/// -sum_l counts[l] a_l.
std::vector<std::int64_t> sample_compound_poisson_counts(const CompoundPoissonLaw& law, Rng& rng);
RealVector sample_compound_poisson(const CompoundPoissonLaw& law, Rng& rng);

/// -sum_l counts[l] a_l.
RealVector jump_displacement(const CompoundPoissonLaw& law, const std::vector<std::int64_t>& counts);

}  // namespace crystal
