#pragma once

#include <optional>
#include <vector>

#include "crystal/euler.hpp"
#include "crystal/lattice.hpp"
#include "crystal/shintani.hpp"

namespace crystal {

/// Discrete law on R^d, possibly truncated: `total` <= 1 and 1 - total is the
/// mass of the omitted tail.
struct LatticeDistribution {
    std::vector<RealVector> points;
    std::vector<double> masses;
    std::optional<std::vector<LatticePoint>> lattice_points;
    double total = 0.0;

    std::size_t size() const { return points.size(); }
    int dim() const { return points.empty() ? 0 : static_cast<int>(points.front().size()); }
    double deficit() const { return 1.0 - total; }
};

/// Law of the Shintani zeta random variable at sigma: the term indexed by n
/// carries mass theta(n) prod_l L_l(n)^(-<c_l, sigma>) / Z(sigma) at
/// -sum_l c_l log L_l(n). Coincident points are merged. For truncated series the
/// normalizer is the upper bound Z_trunc + tail_bound, so `total` never
/// exceeds 1 and the deficit over-covers the omitted tail.
LatticeDistribution shintani_distribution(const ShintaniZetaSpec& spec, const RealVector& sigma,
                                          const TruncationPolicy& policy = {});

/// Finite-support law {a_l with probability beta_l} written as a Shintani zeta
/// spec: r = m, lambda = identity, u = 1, c_l = -a_l / log j_l with j_l = l + 1,
/// and theta = beta_l exp(-<a_l, sigma>) at (0, .., j_l - 1, .., 0).
ShintaniZetaSpec finite_support_to_shintani(const std::vector<RealVector>& points, const std::vector<double>& weights,
                                            const RealVector& sigma);

/// Resolves each support point v to the lattice point at Phi(lift of x) + v.
/// Throws PreconditionError if some point misses Phi(V).
void attach_lattice_points(LatticeDistribution& dist, const PeriodicRealization& real, VertexId x, double tol = 1e-9);

/// sum mass exp(i <t, point>).
Complex characteristic_function(const LatticeDistribution& dist, const RealVector& t);

/// Z(sigma + i t) / Z(sigma) for a Shintani spec.
Complex characteristic_function(const ShintaniZetaSpec& spec, const RealVector& sigma, const RealVector& t,
                                const TruncationPolicy& policy = {});

/// Z(sigma + i t) / Z(sigma) for a finite Euler product.
Complex characteristic_function(const FiniteEulerSpec& spec, const RealVector& sigma, const RealVector& t);

/// Truncated Riemann zeta law: mass n^-sigma / zeta(sigma) at -log n for n <= n_max.
LatticeDistribution riemann_zeta_distribution(double sigma, std::int64_t n_max);

}  // namespace crystal
