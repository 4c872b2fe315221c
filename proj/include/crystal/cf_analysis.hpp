#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "crystal/euler.hpp"

namespace crystal {

struct SearchBudget {
    int grid_points = 10000;   ///< Halton points on [-box, box]^d
    int refine_steps = 100;    ///< coordinate pattern-search steps from the best grid point
    double box = 50.0;
};

struct Falsification {
    RealVector t0;
    double modulus = 0.0;  ///< |Z(sigma + i t0) / Z(sigma)|
};

/// Searches for t0 with |Z(sigma + i t0) / Z(sigma)| > 1 + 1e-9, which shows
/// the ratio is not a characteristic function. Absent if none was found.
std::optional<Falsification> falsify_cf(const FiniteEulerSpec& spec, const RealVector& sigma,
                                        const SearchBudget& budget = {});

/// Masses keyed by (order r >= 1, factor index l, 0-based).
using JumpTable = std::map<std::pair<std::int64_t, int>, double>;

struct GeometricFactorization {
    std::vector<double> ratios;  ///< A_l
    std::vector<double> alpha;   ///< in (0, 1]
    RealVector sigma;            ///< least-norm solution of <a_l, sigma> = t_l
};

/// Decides whether `beta` is the jump law of some finite Euler product with
/// vectors `a`: every sequence r beta(r, l) must be geometric with ratio
/// A_l in (0, 1) (relative tolerance `tol`) and beta(1, l) must equal
/// A_l / sum_k -log(1 - A_k). Returns alpha_l = 1, t_l = -log A_l and the
/// least-norm sigma. Throws PreconditionError if `a` has rank < m or the
/// masses do not sum to 1.
std::optional<GeometricFactorization> geometric_check(const JumpTable& beta, const std::vector<RealVector>& a,
                                                      double tol = 1e-9);

/// Finite Euler spec with alpha = 1 and ratios A_l at the least-norm sigma.
std::pair<FiniteEulerSpec, RealVector> euler_spec_from_ratios(const std::vector<double>& ratios,
                                                              const std::vector<RealVector>& a);

}  // namespace crystal
