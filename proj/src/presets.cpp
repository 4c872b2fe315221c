#include "crystal/presets.hpp"

#include <cmath>

#include "crystal/distribution.hpp"

namespace crystal::presets {

namespace {

Cell cell(std::initializer_list<std::int64_t> v)
{
    Cell c(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto x : v) c[i++] = x;
    return c;
}

RealVector vec(std::initializer_list<double> v)
{
    RealVector r(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (auto x : v) r[i++] = x;
    return r;
}

/// Voltages for a bouquet: edge 2k gets v_k, edge 2k+1 gets -v_k.
std::vector<Cell> bouquet_voltages(const std::vector<Cell>& loops)
{
    std::vector<Cell> out;
    for (const auto& v : loops) {
        out.push_back(v);
        out.push_back(-v);
    }
    return out;
}

std::vector<double> uniform(std::size_t n)
{
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

std::vector<double> pick(const std::optional<std::vector<double>>& w, std::size_t n)
{
    if (!w) return uniform(n);
    if (w->size() != n)
        throw ConfigError("kernel needs " + std::to_string(n) + " weights, got " + std::to_string(w->size()));
    return *w;
}

}  // namespace

const std::vector<std::string>& names()
{
    static const std::vector<std::string> all{"line", "square", "triangular", "hexagonal"};
    return all;
}

PeriodicRealization line()
{
    CrystalLattice lat(BaseGraph::bouquet(1), 1, bouquet_voltages({cell({1})}));
    return PeriodicRealization(std::move(lat), {vec({0.0})});
}

PeriodicRealization square()
{
    CrystalLattice lat(BaseGraph::bouquet(2), 2, bouquet_voltages({cell({1, 0}), cell({0, 1})}));
    return PeriodicRealization(std::move(lat), {vec({0.0, 0.0})});
}

PeriodicRealization triangular()
{
    CrystalLattice lat(BaseGraph::bouquet(3), 2, bouquet_voltages({cell({1, 0}), cell({0, 1}), cell({1, -1})}));
    return PeriodicRealization(std::move(lat), {vec({0.0, 0.0})});
}

PeriodicRealization hexagonal()
{
    auto base = BaseGraph::from_pairs({"x", "y"}, {{0, 1}, {0, 1}, {0, 1}}, {"e1", "e2", "e3"});
    CrystalLattice lat(std::move(base), 2, bouquet_voltages({cell({0, 0}), cell({0, -1}), cell({-1, -1})}));
    return PeriodicRealization(std::move(lat), {vec({0.0, 0.0}), vec({1.0 / 3.0, 2.0 / 3.0})});
}

PeriodicRealization realization(const std::string& name)
{
    if (name == "line") return line();
    if (name == "square") return square();
    if (name == "triangular") return triangular();
    if (name == "hexagonal") return hexagonal();
    throw ConfigError("unknown preset '" + name + "' (expected line, square, triangular or hexagonal)");
}

std::vector<RealVector> triangular_support(int N)
{
    if (N < 0) throw ConfigError("triangular radius N must be nonnegative");
    std::vector<RealVector> out;
    for (int k1 = -N; k1 <= N; ++k1)
        for (int k2 = -N; k2 <= N; ++k2)
            if (std::abs(k1 + k2) <= N) out.push_back(vec({static_cast<double>(k1), static_cast<double>(k2)}));
    return out;
}

std::map<VertexId, KernelInput> kernels(const std::string& name, const KernelOptions& opts)
{
    std::map<VertexId, KernelInput> out;
    if (name == "line") {
        out[0].points = {vec({1.0}), vec({-1.0})};
    } else if (name == "square") {
        out[0].points = {vec({1.0, 0.0}), vec({-1.0, 0.0}), vec({0.0, 1.0}), vec({0.0, -1.0})};
    } else if (name == "triangular") {
        out[0].points = triangular_support(opts.N);
    } else if (name == "hexagonal") {
        out[0].points = {vec({1.0 / 3.0, 2.0 / 3.0}), vec({1.0 / 3.0, -1.0 / 3.0}), vec({-2.0 / 3.0, -1.0 / 3.0})};
        out[1].points = {vec({-1.0 / 3.0, -2.0 / 3.0}), vec({-1.0 / 3.0, 1.0 / 3.0}), vec({2.0 / 3.0, 1.0 / 3.0})};
        out[1].weights = pick(opts.weights_y, 3);
    } else {
        realization(name);  // throws the unknown-preset error
    }
    out[0].weights = pick(opts.weights, out[0].points.size());
    return out;
}

FiniteRangeWalkSpec finite_walk(const std::string& name, const KernelOptions& opts)
{
    const PeriodicRealization real = realization(name);
    return make_finite_range_walk(real, kernels(name, opts), LatticePoint{0, Cell::Zero(real.dim())});
}

std::pair<FiniteEulerSpec, RealVector> euler(const std::string& name)
{
    FiniteEulerSpec spec;
    RealVector sigma;
    if (name == "line") {
        spec.dim = 1;
        spec.alpha = {1.0};
        spec.a = {vec({1.0})};
        sigma = vec({std::log(2.0)});
    } else if (name == "square") {
        spec.dim = 2;
        spec.alpha = {1.0, 1.0};
        spec.a = {vec({1.0, 0.0}), vec({0.0, 1.0})};
        sigma = vec({std::log(1.5), std::log(1.5)});
    } else if (name == "triangular") {
        spec.dim = 2;
        spec.alpha = {1.0, 1.0, 1.0};
        spec.a = {vec({1.0, 0.0}), vec({0.0, 1.0}), vec({1.0, -1.0})};
        sigma = vec({2.0 * std::log(2.0), std::log(2.0)});
    } else if (name == "hexagonal") {
        throw ConfigError("preset 'hexagonal' has two base vertices; infinite-range walks need a single-vertex base");
    } else {
        realization(name);
    }
    return {spec, sigma};
}

InfiniteRangeWalkSpec infinite_walk(const std::string& name)
{
    auto [spec, sigma] = euler(name);
    const PeriodicRealization real = realization(name);
    return make_infinite_range_walk(real, compound_poisson_law(spec, sigma), LatticePoint{0, Cell::Zero(real.dim())});
}

ShintaniZetaSpec line_two_point(double alpha, double beta, double sigma)
{
    return finite_support_to_shintani({vec({1.0}), vec({-1.0})}, {alpha, beta}, vec({sigma}));
}

ShintaniZetaSpec line_poisson(double rate, double sigma)
{
    ShintaniZetaSpec spec;
    spec.lambda = RealMatrix::Ones(1, 1);
    spec.u = RealVector::Ones(1);
    spec.c = {vec({-1.0 / std::log(2.0)})};
    spec.theta = PoissonFamilyTheta{rate, 2, vec({sigma})};
    return spec;
}

}  // namespace crystal::presets
