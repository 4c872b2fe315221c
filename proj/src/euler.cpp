#include "crystal/euler.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "crystal/primes.hpp"

namespace crystal {

void FiniteEulerSpec::validate() const
{
    if (dim < 1) throw ConfigError("Euler spec dimension must be positive");
    if (a.size() != alpha.size()) throw ConfigError("need one vector a_l per coefficient alpha_l");
    for (std::size_t l = 0; l < alpha.size(); ++l) {
        if (!(std::abs(alpha[l]) <= 1.0))
            throw ConfigError("|alpha_" + std::to_string(l + 1) + "| must be <= 1");
        if (a[l].size() != dim) throw ConfigError("vector a_" + std::to_string(l + 1) + " has wrong length");
    }
}

std::vector<Complex> euler_ratios(const FiniteEulerSpec& spec, const ComplexVector& s)
{
    spec.validate();
    if (s.size() != spec.dim) throw PreconditionError("s must lie in C^d with d = " + std::to_string(spec.dim));
    std::vector<Complex> z(spec.m());
    for (std::size_t l = 0; l < spec.m(); ++l) z[l] = spec.alpha[l] * std::exp(-dot(spec.a[l], s));
    return z;
}

Complex finite_euler_eval(const FiniteEulerSpec& spec, const ComplexVector& s)
{
    Complex prod{1.0, 0.0};
    const auto z = euler_ratios(spec, s);
    for (std::size_t l = 0; l < z.size(); ++l) {
        const Complex denom = 1.0 - z[l];
        if (std::abs(denom) < 1e-300)
            throw ConvergenceError("pole: factor " + std::to_string(l + 1) + " has 1 - alpha e^{-<a, s>} = 0");
        prod /= denom;
    }
    return prod;
}

SeriesValue finite_euler_series(const FiniteEulerSpec& spec, const ComplexVector& s, int cutoff)
{
    if (cutoff < 0) throw PreconditionError("series cutoff must be nonnegative");
    const auto z = euler_ratios(spec, s);
    for (std::size_t l = 0; l < z.size(); ++l) {
        if (!(std::abs(z[l]) < 1.0)) {
            std::ostringstream msg;
            msg << "series diverges: |alpha_" << l + 1 << " e^{-<a, s>}| = " << std::abs(z[l]) << " >= 1";
            throw ConvergenceError(msg.str());
        }
    }
    // The box sum over {0..K}^m factors into per-index partial sums.
    Complex value{1.0, 0.0};
    double full = 1.0;
    double kept = 1.0;
    for (const Complex& zl : z) {
        Complex partial{0.0, 0.0};
        Complex power{1.0, 0.0};
        for (int k = 0; k <= cutoff; ++k) {
            partial += power;
            power *= zl;
        }
        value *= partial;
        const double q = std::abs(zl);
        full *= 1.0 / (1.0 - q);
        kept *= (1.0 - std::pow(q, cutoff + 1)) / (1.0 - q);
    }
    return {value, std::max(0.0, full - kept)};
}

ZetaValue polynomial_euler_eval(const PolynomialEulerSpec& spec, const ComplexVector& s)
{
    if (s.size() != spec.dim) throw PreconditionError("s must lie in C^d with d = " + std::to_string(spec.dim));
    if (!spec.alpha && spec.m() > 0) throw ConfigError("polynomial Euler spec has no alpha function");
    std::vector<double> re(spec.m());
    for (std::size_t l = 0; l < spec.m(); ++l) {
        if (spec.a[l].size() != spec.dim) throw ConfigError("vector a_" + std::to_string(l + 1) + " has wrong length");
        re[l] = dot(spec.a[l], s).real();
        if (!(re[l] > 1.0)) {
            std::ostringstream msg;
            msg << "s is outside the region min_l Re<a_l, s> > 1 where the Euler product converges: row l = "
                << l + 1 << " has Re<a_l, s> = " << re[l];
            throw ConvergenceError(msg.str());
        }
    }

    Complex log_sum{0.0, 0.0};
    const auto primes = primes_up_to(spec.prime_cutoff);
    for (std::uint64_t p : primes) {
        const double log_p = std::log(static_cast<double>(p));
        for (std::size_t l = 0; l < spec.m(); ++l) {
            const double al = spec.alpha(l, p);
            if (!(std::abs(al) <= 1.0)) throw ConfigError("alpha_l(p) must lie in [-1, 1]");
            if (al == 0.0) continue;
            log_sum -= std::log(1.0 - al * std::exp(-dot(spec.a[l], s) * log_p));
        }
    }
    const Complex value = std::exp(log_sum);

    if (spec.m() == 0 || (spec.alpha_support_bound && *spec.alpha_support_bound <= spec.prime_cutoff))
        return {value, 0.0};

    // |log of the omitted factors| <= sum_l sum_{n > P} n^-sigma_l / (1 - (P+1)^-sigma_l).
    const double P = static_cast<double>(spec.prime_cutoff);
    double T = 0.0;
    for (double sigma : re) T += std::pow(P, 1.0 - sigma) / (sigma - 1.0) / (1.0 - std::pow(P + 1.0, -sigma));
    // |Z - Z_P| <= |Z_P| (e^T - 1); the extra e^T factor keeps the bound monotone in P.
    const double tail = std::abs(value) * std::exp(T) * std::expm1(T);
    return {value, tail};
}

PolynomialEulerSpec p_reduction(const FiniteEulerSpec& spec, const std::vector<std::uint64_t>& primes)
{
    spec.validate();
    if (primes.size() != spec.m())
        throw PreconditionError("p_reduction needs exactly m = " + std::to_string(spec.m()) + " primes");
    std::set<std::uint64_t> seen;
    for (auto p : primes) {
        if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
        if (!seen.insert(p).second) throw PreconditionError("p_reduction primes must be distinct; repeated " + std::to_string(p));
    }

    PolynomialEulerSpec out;
    out.dim = spec.dim;
    for (std::size_t l = 0; l < spec.m(); ++l) out.a.push_back(spec.a[l] / std::log(static_cast<double>(primes[l])));
    out.alpha = [alpha = spec.alpha, primes](std::size_t l, std::uint64_t p) {
        return p == primes[l] ? alpha[l] : 0.0;
    };
    const std::uint64_t largest = primes.empty() ? 1 : *std::max_element(primes.begin(), primes.end());
    out.alpha_support_bound = largest;
    out.prime_cutoff = std::max<std::uint64_t>(largest, 2);
    return out;
}

}  // namespace crystal
