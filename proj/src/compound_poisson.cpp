#include "crystal/compound_poisson.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace crystal {

namespace {

constexpr double table_coverage = 1e-12;
constexpr double levy_tail = 1e-14;

}  // namespace

Complex LevyMeasure::log_cf(const RealVector& t) const
{
    Complex acc{0.0, 0.0};
    for (const auto& atom : atoms) {
        const double phase = t.dot(atom.location);
        acc += atom.weight * Complex{std::cos(phase) - 1.0, std::sin(phase)};
    }
    return acc;
}

LogarithmicDistribution::LogarithmicDistribution(double ratio) : ratio_(ratio)
{
    if (!(ratio >= 0.0 && ratio < 1.0)) throw PreconditionError("logarithmic distribution needs 0 <= A < 1");
    if (ratio == 0.0) {
        log_norm_ = 0.0;
        cdf_ = {1.0};
        return;
    }
    log_norm_ = -std::log1p(-ratio);
    double acc = 0.0;
    for (std::int64_t r = 1;; ++r) {
        acc += pmf(r);
        cdf_.push_back(acc);
        if (acc >= 1.0 - table_coverage) break;
    }
}

double LogarithmicDistribution::pmf(std::int64_t r) const
{
    if (r < 1) return 0.0;
    if (ratio_ == 0.0) return r == 1 ? 1.0 : 0.0;
    const double rr = static_cast<double>(r);
    return std::exp(rr * std::log(ratio_)) / (rr * log_norm_);
}

double LogarithmicDistribution::mean() const
{
    if (ratio_ == 0.0) return 1.0;
    return ratio_ / ((1.0 - ratio_) * log_norm_);
}

std::int64_t LogarithmicDistribution::quantile(double u) const
{
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    if (it != cdf_.end()) return static_cast<std::int64_t>(it - cdf_.begin()) + 1;
    // Beyond the table: keep adding exact terms.
    double acc = cdf_.back();
    auto r = static_cast<std::int64_t>(cdf_.size());
    for (;;) {
        ++r;
        const double p = pmf(r);
        acc += p;
        if (acc > u || p == 0.0) return r;
    }
}

std::int64_t LogarithmicDistribution::sample(Rng& rng) const
{
    return quantile(uniform01(rng));
}

Complex CompoundPoissonLaw::cf(const RealVector& t) const
{
    return std::exp(levy.log_cf(t));
}

CompoundPoissonLaw compound_poisson_law(const FiniteEulerSpec& spec, const RealVector& sigma)
{
    spec.validate();
    if (sigma.size() != spec.dim) throw PreconditionError("sigma must lie in R^d with d = " + std::to_string(spec.dim));

    CompoundPoissonLaw law;
    law.spec = spec;
    law.sigma = sigma;
    for (std::size_t l = 0; l < spec.m(); ++l) {
        if (spec.alpha[l] < 0.0) {
            std::ostringstream msg;
            msg << "alpha_" << l + 1 << " = " << spec.alpha[l]
                << " < 0: Z(sigma + it) / Z(sigma) is not a characteristic function unless every alpha_l >= 0";
            throw PreconditionError(msg.str());
        }
        const double A = spec.alpha[l] * std::exp(-spec.a[l].dot(sigma));
        if (!(A < 1.0)) {
            std::ostringstream msg;
            msg << "ratio A_" << l + 1 << " = alpha_l exp(-<a_l, sigma>) = " << A
                << " >= 1: the Euler factor has no convergent expansion at sigma";
            throw ConvergenceError(msg.str());
        }
        law.ratios.push_back(A);
        law.direction_masses.push_back(A == 0.0 ? 0.0 : -std::log1p(-A));
        law.jump_law.emplace_back(A);
        law.levy.total_mass += law.direction_masses.back();

        if (A == 0.0) continue;
        double power = 1.0;
        for (std::int64_t r = 1;; ++r) {
            power *= A;
            const double rr = static_cast<double>(r);
            law.levy.atoms.push_back({-rr * spec.a[l], power / rr, static_cast<int>(l), r});
            // sum_{k > r} A^k / k <= A^(r+1) / ((r+1)(1-A))
            if (power * A / ((rr + 1.0) * (1.0 - A)) < levy_tail) break;
        }
    }

    if (spec.m() > 0) {
        RealMatrix cols(spec.dim, static_cast<Eigen::Index>(spec.m()));
        for (std::size_t l = 0; l < spec.m(); ++l) cols.col(static_cast<Eigen::Index>(l)) = spec.a[l];
        Eigen::FullPivLU<RealMatrix> lu(cols);
        if (lu.rank() < static_cast<Eigen::Index>(spec.m())) {
            std::ostringstream msg;
            msg << "vectors a_l are linearly dependent (rank " << lu.rank() << " < m = " << spec.m()
                << "); the CF identity still holds but the factorization is not unique";
            law.warnings.push_back(msg.str());
        }
    }
    return law;
}

JumpIndex sample_jump_index(const CompoundPoissonLaw& law, Rng& rng)
{
    if (law.total_mass() <= 0.0) throw PreconditionError("law has no jumps (total Levy mass 0)");
    const double u = uniform01(rng) * law.total_mass();
    double acc = 0.0;
    int chosen = -1;
    for (std::size_t l = 0; l < law.direction_masses.size(); ++l) {
        if (law.direction_masses[l] <= 0.0) continue;
        chosen = static_cast<int>(l);
        acc += law.direction_masses[l];
        if (u < acc) break;
    }
    return {chosen, law.jump_law[static_cast<std::size_t>(chosen)].sample(rng)};
}

RealVector sample_jump(const CompoundPoissonLaw& law, Rng& rng)
{
    const JumpIndex j = sample_jump_index(law, rng);
    return -static_cast<double>(j.order) * law.spec.a[static_cast<std::size_t>(j.direction)];
}

std::vector<std::int64_t> sample_compound_poisson_counts(const CompoundPoissonLaw& law, Rng& rng)
{
    std::vector<std::int64_t> counts(law.spec.m(), 0);
    if (law.total_mass() <= 0.0) return counts;
    std::poisson_distribution<std::int64_t> poisson(law.total_mass());
    const std::int64_t k = poisson(rng);
    for (std::int64_t i = 0; i < k; ++i) {
        const JumpIndex j = sample_jump_index(law, rng);
        counts[static_cast<std::size_t>(j.direction)] += j.order;
    }
    return counts;
}

RealVector jump_displacement(const CompoundPoissonLaw& law, const std::vector<std::int64_t>& counts)
{
    RealVector out = RealVector::Zero(law.dim());
    for (std::size_t l = 0; l < counts.size(); ++l)
        if (counts[l] != 0) out -= static_cast<double>(counts[l]) * law.spec.a[l];
    return out;
}

RealVector sample_compound_poisson(const CompoundPoissonLaw& law, Rng& rng)
{
    return jump_displacement(law, sample_compound_poisson_counts(law, rng));
}

}  // namespace crystal
