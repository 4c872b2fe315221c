#include "crystal/verify.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/special_functions/gamma.hpp>

namespace crystal {

namespace {

using Key = std::vector<std::int64_t>;

Key key_of(const RealVector& x, double res)
{
    Key k(static_cast<std::size_t>(x.size()));
    for (Eigen::Index i = 0; i < x.size(); ++i) k[static_cast<std::size_t>(i)] = std::llround(x[i] / res);
    return k;
}

RealVector point_of(const Key& k, double res)
{
    RealVector x(static_cast<Eigen::Index>(k.size()));
    for (std::size_t i = 0; i < k.size(); ++i) x[static_cast<Eigen::Index>(i)] = static_cast<double>(k[i]) * res;
    return x;
}

}  // namespace

Complex empirical_cf(const std::vector<RealVector>& samples, const RealVector& t)
{
    if (samples.empty()) throw PreconditionError("empirical CF needs at least one sample");
    Complex acc{0.0, 0.0};
    for (const auto& x : samples) {
        const double phase = t.dot(x);
        acc += Complex{std::cos(phase), std::sin(phase)};
    }
    return acc / static_cast<double>(samples.size());
}

CfComparison compare_cf(const std::function<Complex(const RealVector&)>& analytic,
                        const std::vector<RealVector>& samples, const std::vector<RealVector>& grid, double c)
{
    if (grid.empty()) throw PreconditionError("CF comparison grid is empty");
    CfComparison out;
    out.grid = grid;
    out.n_samples = samples.size();
    out.threshold = c / std::sqrt(static_cast<double>(samples.size()));
    for (const auto& t : grid) {
        out.analytic.push_back(analytic(t));
        out.empirical.push_back(empirical_cf(samples, t));
        out.max_abs_dev = std::max(out.max_abs_dev, std::abs(out.analytic.back() - out.empirical.back()));
    }
    out.passed = out.max_abs_dev <= out.threshold;
    return out;
}

double BruteForcePmf::mass_at(const RealVector& x) const
{
    for (std::size_t i = 0; i < points.size(); ++i)
        if ((points[i] - x).lpNorm<Eigen::Infinity>() <= 0.5 * resolution) return masses[i];
    return 0.0;
}

Complex BruteForcePmf::cf(const RealVector& t) const
{
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double phase = t.dot(points[i]);
        acc += masses[i] * Complex{std::cos(phase), std::sin(phase)};
    }
    return acc;
}

BruteForcePmf brute_force_cp_pmf(const CompoundPoissonLaw& law, double support_radius)
{
    if (!(support_radius >= 0.0)) throw PreconditionError("support radius must be nonnegative");
    const int d = law.dim();
    const double lambda = law.total_mass();

    BruteForcePmf out;
    out.resolution = 1.0;
    for (const auto& atom : law.levy.atoms)
        for (Eigen::Index i = 0; i < atom.location.size(); ++i)
            if (std::abs(atom.location[i] - std::round(atom.location[i])) > 1e-12) out.resolution = 1e-9;
    const double res = out.resolution;
    const auto in_box = [&](const Key& k) {
        for (auto v : k)
            if (std::abs(static_cast<double>(v) * res) > support_radius + 0.5 * res) return false;
        return true;
    };

    // Jump law restricted to the box, as a sub-probability.
    std::map<Key, double> jump;
    if (lambda > 0.0) {
        for (const auto& atom : law.levy.atoms) {
            if (atom.location.lpNorm<Eigen::Infinity>() > support_radius) continue;
            jump[key_of(atom.location, res)] += atom.weight / lambda;
        }
    }

    std::map<Key, double> acc;
    std::map<Key, double> conv;
    conv[Key(static_cast<std::size_t>(d), 0)] = 1.0;
    double poisson = std::exp(-lambda);
    double used = 0.0;      // sum of Poisson weights handled so far
    double lost_box = 0.0;  // mass of handled orders that left the box
    for (std::int64_t k = 0;; ++k) {
        double conv_mass = 0.0;
        for (const auto& [key, m] : conv) {
            acc[key] += poisson * m;
            conv_mass += m;
        }
        used += poisson;
        lost_box += poisson * (1.0 - conv_mass);
        const double tail = std::max(0.0, 1.0 - used);
        if (tail < 1e-12 || lambda == 0.0 || conv.empty()) {
            out.deficit = tail + lost_box;
            break;
        }
        std::map<Key, double> next;
        for (const auto& [key, m] : conv) {
            for (const auto& [jk, jm] : jump) {
                Key s = key;
                for (std::size_t i = 0; i < s.size(); ++i) s[i] += jk[i];
                if (!in_box(s)) continue;
                next[s] += m * jm;
            }
        }
        conv = std::move(next);
        poisson *= lambda / static_cast<double>(k + 1);
    }
    for (const auto& [key, m] : acc) {
        out.points.push_back(point_of(key, res));
        out.masses.push_back(m);
    }
    return out;
}

double sampler_vs_oracle(const CompoundPoissonLaw& law, int n_draws, double support_radius, std::uint64_t seed,
                         const CpSampler& sampler)
{
    if (n_draws < 1) throw PreconditionError("sampler_vs_oracle needs at least one draw");
    const CpSampler draw = sampler ? sampler : CpSampler(sample_compound_poisson);
    Rng rng = make_stream(seed, 0);

    if (law.total_mass() == 0.0) {
        for (int i = 0; i < n_draws; ++i)
            if (draw(law, rng).lpNorm<Eigen::Infinity>() != 0.0) return 0.0;
        return 1.0;
    }

    const BruteForcePmf oracle = brute_force_cp_pmf(law, support_radius);
    const double res = oracle.resolution;
    std::map<Key, std::size_t> index;
    for (std::size_t i = 0; i < oracle.points.size(); ++i) index[key_of(oracle.points[i], res)] = i;

    const std::size_t other = oracle.points.size();
    std::vector<double> observed(other + 1, 0.0);
    for (int i = 0; i < n_draws; ++i) {
        const auto it = index.find(key_of(draw(law, rng), res));
        observed[it == index.end() ? other : it->second] += 1.0;
    }
    std::vector<double> expected(other + 1, 0.0);
    double inside = 0.0;
    for (std::size_t i = 0; i < other; ++i) {
        expected[i] = n_draws * oracle.masses[i];
        inside += oracle.masses[i];
    }
    expected[other] = n_draws * std::max(0.0, 1.0 - inside);

    // Pool every bin with expected count < 5 into one.
    std::vector<double> exp_bins;
    std::vector<double> obs_bins;
    double pooled_e = 0.0;
    double pooled_o = 0.0;
    for (std::size_t i = 0; i <= other; ++i) {
        if (expected[i] < 5.0) {
            pooled_e += expected[i];
            pooled_o += observed[i];
        } else {
            exp_bins.push_back(expected[i]);
            obs_bins.push_back(observed[i]);
        }
    }
    if (pooled_e > 0.0 || pooled_o > 0.0) {
        if (pooled_e >= 5.0 || exp_bins.empty()) {
            exp_bins.push_back(pooled_e);
            obs_bins.push_back(pooled_o);
        } else {
            const auto smallest = std::min_element(exp_bins.begin(), exp_bins.end()) - exp_bins.begin();
            exp_bins[static_cast<std::size_t>(smallest)] += pooled_e;
            obs_bins[static_cast<std::size_t>(smallest)] += pooled_o;
        }
    }
    if (exp_bins.size() < 2) {
        std::ostringstream msg;
        msg << "chi-square test is degenerate: only " << exp_bins.size()
            << " bin(s) after pooling; increase the number of draws";
        throw PreconditionError(msg.str());
    }

    double chi2 = 0.0;
    for (std::size_t i = 0; i < exp_bins.size(); ++i) {
        if (exp_bins[i] <= 0.0) {
            if (obs_bins[i] > 0.0) return 0.0;
            continue;
        }
        const double diff = obs_bins[i] - exp_bins[i];
        chi2 += diff * diff / exp_bins[i];
    }
    const double df = static_cast<double>(exp_bins.size() - 1);
    return boost::math::gamma_q(df / 2.0, chi2 / 2.0);
}

}  // namespace crystal
