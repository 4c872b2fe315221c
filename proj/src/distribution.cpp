#include "crystal/distribution.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include <boost/math/special_functions/zeta.hpp>

namespace crystal {

namespace {

constexpr double merge_tol = 1e-12;

void add_point(LatticeDistribution& dist, const RealVector& p, double mass)
{
    for (std::size_t i = 0; i < dist.points.size(); ++i) {
        if ((dist.points[i] - p).lpNorm<Eigen::Infinity>() <= merge_tol) {
            dist.masses[i] += mass;
            return;
        }
    }
    dist.points.push_back(p);
    dist.masses.push_back(mass);
}

}  // namespace

LatticeDistribution shintani_distribution(const ShintaniZetaSpec& spec, const RealVector& sigma,
                                          const TruncationPolicy& policy)
{
    spec.validate();
    if (sigma.size() != spec.dim()) throw PreconditionError("sigma must lie in R^d");
    const ComplexVector s = complexify(sigma);
    const ZetaValue z = shintani_eval(spec, s, policy);
    const auto terms = shintani_terms(spec, policy);

    int sign = 0;
    for (const auto& term : terms) {
        if (term.theta.imag() != 0.0) throw PreconditionError("theta must be real to define a distribution");
        const double w = term.theta.real();
        const int sgn = (w > 0.0) - (w < 0.0);
        if (sgn != 0 && sign != 0 && sgn != sign)
            throw PreconditionError("theta takes both signs; the normalized weights are not a probability law");
        if (sgn != 0) sign = sgn;
    }
    if (sign == 0 || z.value.real() == 0.0)
        throw PreconditionError("Z(sigma) = 0; the distribution is undefined");

    const double normalizer = z.value.real() + sign * z.tail_bound;
    LatticeDistribution dist;
    for (const auto& term : terms) {
        const double w = shintani_term_value(spec, term, s).real();
        if (w == 0.0) continue;
        add_point(dist, shintani_term_point(spec, term), w / normalizer);
    }
    dist.total = 0.0;
    for (double m : dist.masses) dist.total += m;
    return dist;
}

ShintaniZetaSpec finite_support_to_shintani(const std::vector<RealVector>& points, const std::vector<double>& weights,
                                            const RealVector& sigma)
{
    const std::size_t m = points.size();
    if (m == 0) throw PreconditionError("need at least one support point");
    if (weights.size() != m) throw PreconditionError("need one weight per support point");
    if (sigma.norm() == 0.0) throw PreconditionError("sigma must be nonzero");
    double sum = 0.0;
    for (std::size_t l = 0; l < m; ++l) {
        if (weights[l] < 0.0) throw PreconditionError("weight " + std::to_string(l + 1) + " is negative");
        if (points[l].size() != sigma.size()) throw PreconditionError("support point dimension differs from sigma");
        sum += weights[l];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        std::ostringstream msg;
        msg << "weights must sum to 1 (sum = " << sum << ")";
        throw PreconditionError(msg.str());
    }

    ShintaniZetaSpec spec;
    const auto mi = static_cast<Eigen::Index>(m);
    spec.lambda = RealMatrix::Identity(mi, mi);
    spec.u = RealVector::Ones(mi);
    FiniteSupportTheta theta;
    for (std::size_t l = 0; l < m; ++l) {
        const auto j = static_cast<std::int64_t>(l + 2);
        spec.c.push_back(-points[l] / std::log(static_cast<double>(j)));
        MultiIndex idx(m, 0);
        idx[l] = j - 1;
        theta.entries.emplace_back(std::move(idx), Complex{weights[l] * std::exp(-points[l].dot(sigma)), 0.0});
    }
    spec.theta = std::move(theta);
    return spec;
}

void attach_lattice_points(LatticeDistribution& dist, const PeriodicRealization& real, VertexId x, double tol)
{
    std::vector<LatticePoint> lp;
    lp.reserve(dist.points.size());
    for (const auto& v : dist.points) {
        auto hit = locate(real, real.offset(x) + v, tol);
        if (!hit) {
            std::ostringstream msg;
            msg << "support point (" << v.transpose() << ") from vertex '" << real.base().vertex_name(x)
                << "' does not land on a realized lattice vertex";
            throw PreconditionError(msg.str());
        }
        lp.push_back(*hit);
    }
    dist.lattice_points = std::move(lp);
}

Complex characteristic_function(const LatticeDistribution& dist, const RealVector& t)
{
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < dist.points.size(); ++i)
        acc += dist.masses[i] * std::exp(Complex{0.0, t.dot(dist.points[i])});
    return acc;
}

Complex characteristic_function(const ShintaniZetaSpec& spec, const RealVector& sigma, const RealVector& t,
                                const TruncationPolicy& policy)
{
    const Complex num = shintani_eval(spec, complexify(sigma, t), policy).value;
    const Complex den = shintani_eval(spec, complexify(sigma), policy).value;
    if (den == 0.0) throw PreconditionError("Z(sigma) = 0; the characteristic function is undefined");
    return num / den;
}

Complex characteristic_function(const FiniteEulerSpec& spec, const RealVector& sigma, const RealVector& t)
{
    return finite_euler_eval(spec, complexify(sigma, t)) / finite_euler_eval(spec, complexify(sigma));
}

LatticeDistribution riemann_zeta_distribution(double sigma, std::int64_t n_max)
{
    if (!(sigma > 1.0)) throw PreconditionError("the Riemann zeta distribution needs sigma > 1");
    if (n_max < 1) throw PreconditionError("n_max must be at least 1");
    const double zeta = boost::math::zeta(sigma);
    LatticeDistribution dist;
    dist.points.reserve(static_cast<std::size_t>(n_max));
    dist.masses.reserve(static_cast<std::size_t>(n_max));
    double total = 0.0;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const double nn = static_cast<double>(n);
        RealVector p(1);
        p[0] = -std::log(nn);
        const double mass = std::exp(-sigma * std::log(nn)) / zeta;
        dist.points.push_back(std::move(p));
        dist.masses.push_back(mass);
        total += mass;
    }
    dist.total = total;
    return dist;
}

}  // namespace crystal
