#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "crystal/compound_poisson.hpp"
#include "crystal/lattice.hpp"
#include "crystal/shintani.hpp"
#include "crystal/walks.hpp"

namespace crystal::presets {

/// line, square, triangular, hexagonal.
const std::vector<std::string>& names();

/// Z on a one-loop bouquet, voltage +1.
PeriodicRealization line();
/// Z^2 on a two-loop bouquet, voltages e1, e2.
PeriodicRealization square();
/// Z^2 on a three-loop bouquet, voltages (1,0), (0,1), (1,-1). Not maximal abelian.
PeriodicRealization triangular();
/// Two vertices x, y joined by three edges; y sits at (1/3, 2/3) and the steps
/// from x are (1/3, 2/3), (1/3, -1/3), (-2/3, -1/3).
PeriodicRealization hexagonal();

PeriodicRealization realization(const std::string& name);

/// The 3N^2 + 3N + 1 points k of Z^2 with |k1|, |k2|, |k1 + k2| <= N.
std::vector<RealVector> triangular_support(int N);

struct KernelOptions {
    int N = 1;                                 ///< triangular radius
    std::optional<std::vector<double>> weights;  ///< per-point weights of the vertex-0 kernel
    std::optional<std::vector<double>> weights_y;  ///< hexagonal y kernel
};

/// Default one-step laws: two-point 1/2, 1/2 on the line, uniform nearest
/// neighbours on the square, uniform on the triangular support, and uniform
/// over the three edges on the hexagonal lattice.
std::map<VertexId, KernelInput> kernels(const std::string& name, const KernelOptions& opts = {});

FiniteRangeWalkSpec finite_walk(const std::string& name, const KernelOptions& opts = {});

/// Finite Euler product preset and its sigma.
/// line: alpha = 1, a = 1, sigma = log 2 (ratio 1/2).
/// square: alpha = (1, 1), a = e1, e2, sigma = (log 3/2, log 3/2), ratios
///   (2/3, 2/3), CF 1/((3 - 2e^{-it1})(3 - 2e^{-it2})) and Levy mass 2 log 3.
///   The quoted alpha = 1/3 with sigma = (log 2, log 2) gives ratios 2/3 only
///   if <a, sigma> = -log 2, which contradicts min <a_l, sigma> > 0; the
///   ratios are what the law depends on, so they are matched directly.
/// triangular: alpha = 1, a = (1,0), (0,1), (1,-1), sigma = (2 log 2, log 2),
///   ratios (1/4, 1/2, 1/2). The vectors are dependent, which
///   compound_poisson_law reports as a warning.
std::pair<FiniteEulerSpec, RealVector> euler(const std::string& name);

InfiniteRangeWalkSpec infinite_walk(const std::string& name);

/// Two-point law alpha at +1, beta at -1 on the line as a finite-support zeta spec.
ShintaniZetaSpec line_two_point(double alpha, double beta, double sigma);

/// Poisson(rate) on the line: c = -1/log 2, lambda = 1, u = 1 and
/// theta(2^k - 1) = rate^k e^{-k sigma} / k!.
ShintaniZetaSpec line_poisson(double rate, double sigma);

}  // namespace crystal::presets
