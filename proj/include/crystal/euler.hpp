#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "crystal/shintani.hpp"
#include "crystal/types.hpp"

namespace crystal {

/// Z(s) = prod_l (1 - alpha_l exp(-<a_l, s>))^(-1).
struct FiniteEulerSpec {
    int dim = 1;
    std::vector<double> alpha;
    std::vector<RealVector> a;

    std::size_t m() const { return alpha.size(); }
    void validate() const;
};

/// Per-factor ratios z_l = alpha_l exp(-<a_l, s>).
std::vector<Complex> euler_ratios(const FiniteEulerSpec& spec, const ComplexVector& s);

/// Exact product. Throws ConvergenceError at (numerical) poles.
Complex finite_euler_eval(const FiniteEulerSpec& spec, const ComplexVector& s);

struct SeriesValue {
    Complex value;
    double tail_bound = 0.0;
};

/// sum over k in {0..cutoff}^m of prod_l z_l^k_l. Requires |z_l| < 1.
SeriesValue finite_euler_series(const FiniteEulerSpec& spec, const ComplexVector& s, int cutoff);

/// prod over primes p <= prime_cutoff of prod_l (1 - alpha_l(p) p^(-<a_l, s>))^(-1).
struct PolynomialEulerSpec {
    int dim = 1;
    std::vector<RealVector> a;
    std::function<double(std::size_t, std::uint64_t)> alpha;  ///< (l, p) -> alpha_l(p) in [-1, 1]
    std::uint64_t prime_cutoff = 10000;
    /// When set, alpha_l(p) = 0 for every p above this value.
    std::optional<std::uint64_t> alpha_support_bound;

    std::size_t m() const { return a.size(); }
};

/// Requires min_l Re<a_l, s> > 1 (ConvergenceError otherwise).
ZetaValue polynomial_euler_eval(const PolynomialEulerSpec& spec, const ComplexVector& s);

/// Rewrites a finite Euler product over m distinct primes: alpha_l(p_l) =
/// alpha_l and zero elsewhere, with vectors b_l = a_l / log p_l.
PolynomialEulerSpec p_reduction(const FiniteEulerSpec& spec, const std::vector<std::uint64_t>& primes);

}  // namespace crystal
