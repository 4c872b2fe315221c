#include "crystal/cf_analysis.hpp"

#include <cmath>
#include <sstream>

#include "crystal/primes.hpp"

namespace crystal {

namespace {

double radical_inverse(std::uint64_t i, std::uint64_t base)
{
    double inv = 1.0 / static_cast<double>(base);
    double f = inv;
    double out = 0.0;
    while (i > 0) {
        out += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return out;
}

RealMatrix rows_of(const std::vector<RealVector>& a)
{
    if (a.empty()) throw PreconditionError("need at least one vector a_l");
    RealMatrix M(static_cast<Eigen::Index>(a.size()), a.front().size());
    for (std::size_t l = 0; l < a.size(); ++l) {
        if (a[l].size() != a.front().size()) throw PreconditionError("vectors a_l have different lengths");
        M.row(static_cast<Eigen::Index>(l)) = a[l].transpose();
    }
    return M;
}

RealVector least_norm_sigma(const std::vector<RealVector>& a, const RealVector& t)
{
    const RealMatrix M = rows_of(a);
    Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(M);
    if (cod.rank() < M.rows()) {
        std::ostringstream msg;
        msg << "vectors a_l must be linearly independent: rank " << cod.rank() << " < m = " << M.rows();
        throw PreconditionError(msg.str());
    }
    return cod.solve(t);
}

}  // namespace

std::optional<Falsification> falsify_cf(const FiniteEulerSpec& spec, const RealVector& sigma,
                                        const SearchBudget& budget)
{
    spec.validate();
    const int d = spec.dim;
    if (sigma.size() != d) throw PreconditionError("sigma must lie in R^d");
    const Complex z0 = finite_euler_eval(spec, complexify(sigma));

    auto modulus = [&](const RealVector& t) {
        try {
            return std::abs(finite_euler_eval(spec, complexify(sigma, t)) / z0);
        } catch (const ConvergenceError&) {
            return 0.0;
        }
    };

    const auto bases = primes_up_to(d < 6 ? 13 : static_cast<std::uint64_t>(d) * 20);
    RealVector best = RealVector::Zero(d);
    double best_mod = modulus(best);
    RealVector t(d);
    for (int i = 1; i <= budget.grid_points; ++i) {
        for (int k = 0; k < d; ++k)
            t[k] = -budget.box + 2.0 * budget.box * radical_inverse(static_cast<std::uint64_t>(i), bases[static_cast<std::size_t>(k)]);
        const double v = modulus(t);
        if (v > best_mod) {
            best_mod = v;
            best = t;
        }
    }

    double h = 2.0 * budget.box / std::pow(std::max(budget.grid_points, 1), 1.0 / d);
    for (int step = 0; step < budget.refine_steps; ++step) {
        bool moved = false;
        for (int k = 0; k < d; ++k) {
            for (double dir : {1.0, -1.0}) {
                RealVector trial = best;
                trial[k] += dir * h;
                const double v = modulus(trial);
                if (v > best_mod) {
                    best_mod = v;
                    best = trial;
                    moved = true;
                }
            }
        }
        if (!moved) h *= 0.5;
    }

    if (best_mod > 1.0 + 1e-9) return Falsification{best, best_mod};
    return std::nullopt;
}

std::optional<GeometricFactorization> geometric_check(const JumpTable& beta, const std::vector<RealVector>& a,
                                                      double tol)
{
    const RealMatrix M = rows_of(a);
    const int m = static_cast<int>(a.size());
    {
        Eigen::FullPivLU<RealMatrix> lu(M);
        if (lu.rank() < m) {
            std::ostringstream msg;
            msg << "vectors a_l must be linearly independent: rank " << lu.rank() << " < m = " << m;
            throw PreconditionError(msg.str());
        }
    }
    double sum = 0.0;
    for (const auto& [key, mass] : beta) {
        if (key.first < 1 || key.second < 0 || key.second >= m)
            throw PreconditionError("jump table key (r, l) out of range");
        if (mass < 0.0) throw PreconditionError("jump table has a negative mass");
        sum += mass;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream msg;
        msg << "jump table masses must sum to 1 (sum = " << sum << ")";
        throw PreconditionError(msg.str());
    }

    std::vector<std::vector<double>> seq(static_cast<std::size_t>(m));
    for (const auto& [key, mass] : beta) {
        auto& s = seq[static_cast<std::size_t>(key.second)];
        const auto r = static_cast<std::size_t>(key.first);
        if (s.size() < r) s.resize(r, 0.0);
        s[r - 1] = mass;
    }

    GeometricFactorization out;
    for (int l = 0; l < m; ++l) {
        const auto& s = seq[static_cast<std::size_t>(l)];
        if (s.size() < 2 || s[0] <= 0.0) return std::nullopt;
        const double A = 2.0 * s[1] / s[0];
        if (!(A > 0.0 && A < 1.0)) return std::nullopt;
        for (std::size_t r = 1; r < s.size(); ++r) {
            const double prev = static_cast<double>(r) * s[r - 1];
            const double cur = static_cast<double>(r + 1) * s[r];
            if (std::abs(cur - A * prev) > tol * A * prev) return std::nullopt;
        }
        out.ratios.push_back(A);
    }
    double norm = 0.0;
    for (double A : out.ratios) norm += -std::log1p(-A);
    for (int l = 0; l < m; ++l) {
        const double expected = out.ratios[static_cast<std::size_t>(l)] / norm;
        const double got = seq[static_cast<std::size_t>(l)][0];
        if (std::abs(got - expected) > tol * expected) return std::nullopt;
    }

    RealVector t(m);
    for (int l = 0; l < m; ++l) t[l] = -std::log(out.ratios[static_cast<std::size_t>(l)]);
    out.alpha.assign(static_cast<std::size_t>(m), 1.0);
    out.sigma = least_norm_sigma(a, t);
    return out;
}

std::pair<FiniteEulerSpec, RealVector> euler_spec_from_ratios(const std::vector<double>& ratios,
                                                              const std::vector<RealVector>& a)
{
    if (ratios.size() != a.size()) throw PreconditionError("need one ratio per vector a_l");
    RealVector t(static_cast<Eigen::Index>(ratios.size()));
    for (std::size_t l = 0; l < ratios.size(); ++l) {
        if (!(ratios[l] > 0.0 && ratios[l] < 1.0)) throw PreconditionError("ratios must lie in (0, 1)");
        t[static_cast<Eigen::Index>(l)] = -std::log(ratios[l]);
    }
    FiniteEulerSpec spec;
    spec.dim = static_cast<int>(a.front().size());
    spec.alpha.assign(ratios.size(), 1.0);
    spec.a = a;
    return {spec, least_norm_sigma(a, t)};
}

}  // namespace crystal
