#include "crystal/shintani.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace crystal {

void ShintaniZetaSpec::validate() const
{
    const int rows = m();
    const int cols = r();
    if (rows < 1 || cols < 1) throw ConfigError("Shintani spec needs m >= 1 and r >= 1");
    for (int l = 0; l < rows; ++l) {
        bool positive = false;
        for (int j = 0; j < cols; ++j) {
            if (!(lambda(l, j) >= 0.0)) throw ConfigError("lambda entries must be nonnegative");
            positive = positive || lambda(l, j) > 0.0;
        }
        if (!positive) throw ConfigError("row " + std::to_string(l + 1) + " of lambda has no positive entry");
    }
    if (u.size() != cols) throw ConfigError("u must have r entries");
    for (int j = 0; j < cols; ++j)
        if (!(u[j] > 0.0)) throw ConfigError("u entries must be positive");
    if (static_cast<int>(c.size()) != rows) throw ConfigError("need exactly m coefficient vectors c_l");
    const int d = dim();
    if (d < 1) throw ConfigError("coefficient vectors must be nonempty");
    for (const auto& cl : c)
        if (cl.size() != d) throw ConfigError("coefficient vectors must share one dimension");

    if (const auto* fs = std::get_if<FiniteSupportTheta>(&theta)) {
        for (const auto& [idx, w] : fs->entries) {
            if (static_cast<int>(idx.size()) != cols) throw ConfigError("theta multi-index must have r entries");
            for (auto n : idx)
                if (n < 0) throw ConfigError("theta multi-index entries must be nonnegative");
        }
    } else if (const auto* pf = std::get_if<PoissonFamilyTheta>(&theta)) {
        if (!(pf->rate > 0.0)) throw ConfigError("Poisson family rate must be positive");
        if (pf->base < 2) throw ConfigError("Poisson family base must be >= 2");
        if (pf->shift.size() != d) throw ConfigError("Poisson family shift must lie in R^d");
    } else {
        const auto& gb = std::get<GrowthBoundedTheta>(theta);
        if (!gb.weight) throw ConfigError("growth-bounded theta has no weight function");
        if (!(gb.bound >= 0.0) || !(gb.exponent >= 0.0))
            throw ConfigError("growth envelope constants must be nonnegative");
    }
}

namespace {

RealVector log_forms_of(const ShintaniZetaSpec& spec, const MultiIndex& n)
{
    RealVector out(spec.m());
    for (int l = 0; l < spec.m(); ++l) {
        double sum = 0.0;
        for (int j = 0; j < spec.r(); ++j)
            sum += spec.lambda(l, j) * (static_cast<double>(n[static_cast<std::size_t>(j)]) + spec.u[j]);
        out[l] = std::log(sum);
    }
    return out;
}

// log L_l at n = (base^k - 1, 0, ..., 0) without forming base^k explicitly.
RealVector poisson_log_forms(const ShintaniZetaSpec& spec, std::int64_t base, std::int64_t k)
{
    const double log_jk = static_cast<double>(k) * std::log(static_cast<double>(base));
    RealVector out(spec.m());
    for (int l = 0; l < spec.m(); ++l) {
        const double lead = spec.lambda(l, 0);
        double rest = lead * (spec.u[0] - 1.0);
        for (int j = 1; j < spec.r(); ++j) rest += spec.lambda(l, j) * spec.u[j];
        if (lead > 0.0)
            out[l] = std::log(lead) + log_jk + std::log1p(rest / lead * std::exp(-log_jk));
        else
            out[l] = std::log(rest);
    }
    return out;
}

RealVector poisson_jump(const ShintaniZetaSpec& spec, const PoissonFamilyTheta& pf)
{
    return -std::log(static_cast<double>(pf.base)) * spec.c.front();
}

double poisson_log_theta(const ShintaniZetaSpec& spec, const PoissonFamilyTheta& pf, std::int64_t k)
{
    const double kk = static_cast<double>(k);
    return kk * (std::log(pf.rate) - poisson_jump(spec, pf).dot(pf.shift)) - std::lgamma(kk + 1.0);
}

// Sum over k > cutoff of a bound of the form exp(log_pref) q^k / k!.
double factorial_tail(double log_pref, double log_q, int cutoff)
{
    const double q = std::exp(log_q);
    double tail = 0.0;
    for (std::int64_t k = cutoff + 1;; ++k) {
        const double kk = static_cast<double>(k);
        const double b = std::exp(log_pref + kk * log_q - std::lgamma(kk + 1.0));
        if (2.0 * q <= kk + 1.0) {
            // Ratio of consecutive bounds is q/(k+1) <= 1/2 from here on.
            tail += 2.0 * b;
            break;
        }
        tail += b;
        if (k > cutoff + 1000000) return std::numeric_limits<double>::infinity();
    }
    return tail;
}

double poisson_tail_bound(const ShintaniZetaSpec& spec, const PoissonFamilyTheta& pf, const ComplexVector& s,
                          int cutoff)
{
    const double log_j = std::log(static_cast<double>(pf.base));
    double log_pref = 0.0;
    double growth = 0.0;
    for (int l = 0; l < spec.m(); ++l) {
        const double re_w = dot(spec.c[static_cast<std::size_t>(l)], s).real();
        double rest = 0.0;
        for (int j = 1; j < spec.r(); ++j) rest += spec.lambda(l, j) * spec.u[j];
        const double low = spec.lambda(l, 0) * spec.u[0] + rest;  // L_l at k = 0
        const double high = spec.lambda(l, 0) * std::max(spec.u[0], 1.0) + rest;  // L_l(k) <= high * base^k
        if (re_w >= 0.0) {
            log_pref -= re_w * std::log(low);
        } else {
            log_pref += -re_w * std::log(high);
            growth += -re_w;
        }
    }
    const double log_q = std::log(pf.rate) - poisson_jump(spec, pf).dot(pf.shift) + growth * log_j;
    return factorial_tail(log_pref, log_q, cutoff);
}

struct GrowthRegion {
    double total_exponent;  // W = sum_l Re<c_l, s>
};

GrowthRegion check_growth_region(const ShintaniZetaSpec& spec, const GrowthBoundedTheta& gb, const ComplexVector& s)
{
    for (int l = 0; l < spec.m(); ++l)
        for (int j = 0; j < spec.r(); ++j)
            if (spec.lambda(l, j) <= 0.0)
                throw ConvergenceError(
                    "infinite-support theta requires every lambda_lj > 0 (lambda_" + std::to_string(l + 1) +
                    std::to_string(j + 1) + " = 0); no convergence region is known for that case");
    const double threshold = static_cast<double>(spec.r()) / spec.m();
    double total = 0.0;
    for (int l = 0; l < spec.m(); ++l) {
        const double re_w = dot(spec.c[static_cast<std::size_t>(l)], s).real();
        if (!(re_w > threshold)) {
            std::ostringstream msg;
            msg << "s is outside the absolute convergence region min_l Re<c_l, s> > r/m = " << threshold
                << ": row l = " << l + 1 << " has Re<c_l, s> = " << re_w;
            throw ConvergenceError(msg.str());
        }
        total += re_w;
    }
    if (!(total - gb.exponent > spec.r())) {
        std::ostringstream msg;
        msg << "growth exponent " << gb.exponent << " is too large for a truncation bound at this s: need "
            << "sum_l Re<c_l, s> - exponent > r (have " << total - gb.exponent << ")";
        throw ConvergenceError(msg.str());
    }
    return {total};
}

// Bound on the sum of |terms| outside the box {0..N}^r, following the
// majorization (sum_j lambda_lj (n_j + u_j)) >= lambda_min (S + r u_min),
// S = n_1 + ... + n_r, and counting binom(S + r - 1, r - 1) indices per S.
double growth_tail_bound(const ShintaniZetaSpec& spec, const GrowthBoundedTheta& gb, double total_exponent, int cutoff)
{
    const int r = spec.r();
    const double lambda_min = spec.lambda.minCoeff();
    const double u_min = spec.u.minCoeff();
    const double ru = r * u_min;
    const double eps = gb.exponent;
    const double W = total_exponent;
    // (1 + S)^eps <= kappa (S + ru)^eps.
    const double kappa = std::pow(std::max(1.0, 1.0 / ru), eps);
    if (gb.bound == 0.0) return 0.0;
    const double log_pref = std::log(gb.bound * kappa) - W * std::log(lambda_min);

    auto log_binom = [](double n, double k) {
        return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
    };

    constexpr int explicit_terms = 2000;
    double tail = 0.0;
    const double first = static_cast<double>(cutoff) + 1.0;
    for (int i = 0; i < explicit_terms; ++i) {
        const double S = first + i;
        tail += std::exp(log_pref + log_binom(S + r - 1, r - 1) + (eps - W) * std::log(S + ru));
    }
    // Remainder S >= S0: binom <= (S + r)^(r-1) / (r-1)! <= rho^(r-1) (S + ru)^(r-1) / (r-1)!.
    const double S0 = first + explicit_terms;
    const double rho = u_min < 1.0 ? (S0 + r) / (S0 + ru) : 1.0;
    const double p = W - eps - r + 1.0;
    const double log_rem = log_pref + (r - 1) * std::log(rho) - std::lgamma(static_cast<double>(r)) +
                           (1.0 - p) * std::log(S0 - 1.0 + ru) - std::log(p - 1.0);
    tail += std::exp(log_rem);
    return tail;
}

}  // namespace

std::vector<ShintaniTerm> shintani_terms(const ShintaniZetaSpec& spec, const TruncationPolicy& policy)
{
    spec.validate();
    std::vector<ShintaniTerm> out;
    if (const auto* fs = std::get_if<FiniteSupportTheta>(&spec.theta)) {
        out.reserve(fs->entries.size());
        for (const auto& [idx, w] : fs->entries) out.push_back({idx, 0, w, log_forms_of(spec, idx)});
        return out;
    }
    const int cutoff = policy.per_index_cutoff;
    if (cutoff < 0) throw PreconditionError("truncation cutoff must be nonnegative");
    if (const auto* pf = std::get_if<PoissonFamilyTheta>(&spec.theta)) {
        for (std::int64_t k = 0; k <= cutoff; ++k)
            out.push_back({{}, k, Complex{std::exp(poisson_log_theta(spec, *pf, k)), 0.0},
                           poisson_log_forms(spec, pf->base, k)});
        return out;
    }
    const auto& gb = std::get<GrowthBoundedTheta>(spec.theta);
    MultiIndex n(static_cast<std::size_t>(spec.r()), 0);
    while (true) {
        out.push_back({n, 0, gb.weight(n), log_forms_of(spec, n)});
        std::size_t j = 0;
        for (; j < n.size(); ++j) {
            if (n[j] < cutoff) {
                ++n[j];
                break;
            }
            n[j] = 0;
        }
        if (j == n.size()) break;
    }
    return out;
}

Complex shintani_term_value(const ShintaniZetaSpec& spec, const ShintaniTerm& term, const ComplexVector& s)
{
    Complex exponent{0.0, 0.0};
    for (int l = 0; l < spec.m(); ++l) exponent -= dot(spec.c[static_cast<std::size_t>(l)], s) * term.log_forms[l];
    return term.theta * std::exp(exponent);
}

RealVector shintani_term_point(const ShintaniZetaSpec& spec, const ShintaniTerm& term)
{
    RealVector y = RealVector::Zero(spec.dim());
    for (int l = 0; l < spec.m(); ++l) y -= spec.c[static_cast<std::size_t>(l)] * term.log_forms[l];
    return y;
}

ZetaValue shintani_eval(const ShintaniZetaSpec& spec, const ComplexVector& s, const TruncationPolicy& policy)
{
    spec.validate();
    if (s.size() != spec.dim()) throw PreconditionError("s must lie in C^d with d = " + std::to_string(spec.dim()));

    double tail = 0.0;
    if (const auto* gb = std::get_if<GrowthBoundedTheta>(&spec.theta)) {
        const auto region = check_growth_region(spec, *gb, s);
        tail = growth_tail_bound(spec, *gb, region.total_exponent, policy.per_index_cutoff);
    } else if (const auto* pf = std::get_if<PoissonFamilyTheta>(&spec.theta)) {
        tail = poisson_tail_bound(spec, *pf, s, policy.per_index_cutoff);
    }

    Complex sum{0.0, 0.0};
    for (const auto& term : shintani_terms(spec, policy)) sum += shintani_term_value(spec, term, s);
    return {sum, tail};
}

}  // namespace crystal
