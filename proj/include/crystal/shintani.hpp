#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "crystal/types.hpp"

namespace crystal {

using MultiIndex = std::vector<std::int64_t>;

/// Weights on finitely many multi-indices.
struct FiniteSupportTheta {
    std::vector<std::pair<MultiIndex, Complex>> entries;
};

/// theta(base^k - 1, 0, ..., 0) = rate^k exp(-k <a_1, shift>) / k!, k >= 0,
/// where a_1 = -log(base) c_1 is the jump vector of the first linear form.
/// Zero elsewhere. On the line with c_1 = -1/log(base) this is the Poisson law.
struct PoissonFamilyTheta {
    double rate = 1.0;
    std::int64_t base = 2;
    RealVector shift;
};

/// Arbitrary weight function with a declared envelope
/// |theta(n)| <= bound * (1 + n_1 + ... + n_r)^exponent. The envelope is what
/// makes a rigorous truncation bound possible.
struct GrowthBoundedTheta {
    std::function<Complex(const MultiIndex&)> weight;
    double bound = 1.0;
    double exponent = 0.0;
};

using ThetaFunction = std::variant<FiniteSupportTheta, PoissonFamilyTheta, GrowthBoundedTheta>;

/// Parameters of the multiple series
///   Z(s) = sum_n theta(n) prod_l ( sum_j lambda_lj (n_j + u_j) )^(-<c_l, s>).
struct ShintaniZetaSpec {
    RealMatrix lambda;           ///< m x r, nonnegative, each row has a positive entry
    RealVector u;                ///< r positive shifts
    std::vector<RealVector> c;   ///< m coefficient vectors in R^d
    ThetaFunction theta;

    int dim() const { return c.empty() ? 0 : static_cast<int>(c.front().size()); }
    int m() const { return static_cast<int>(lambda.rows()); }
    int r() const { return static_cast<int>(lambda.cols()); }

    /// Throws ConfigError when a structural invariant fails.
    void validate() const;
    bool has_finite_support() const { return std::holds_alternative<FiniteSupportTheta>(theta); }
};

/// Per-index cutoff N: the box {0..N}^r for growth-bounded weights, the
/// orders k <= N for the Poisson family. Finite support ignores it.
struct TruncationPolicy {
    int per_index_cutoff = 32;
};

struct ZetaValue {
    Complex value;
    double tail_bound = 0.0;  ///< |exact - value| <= tail_bound
};

/// One retained term of the series: its weight and log L_l(n) for every row.
struct ShintaniTerm {
    MultiIndex index;  ///< empty for the Poisson family (index k stored in `order`)
    std::int64_t order = 0;
    Complex theta;
    RealVector log_forms;
};

/// The retained terms under `policy` (all of them for finite support).
std::vector<ShintaniTerm> shintani_terms(const ShintaniZetaSpec& spec, const TruncationPolicy& policy = {});

/// Evaluates Z(s). Growth-bounded weights require every lambda_lj > 0 and
/// min_l Re<c_l, s> > r/m, otherwise ConvergenceError names the failing row.
ZetaValue shintani_eval(const ShintaniZetaSpec& spec, const ComplexVector& s, const TruncationPolicy& policy = {});

/// Value of a single retained term at s.
Complex shintani_term_value(const ShintaniZetaSpec& spec, const ShintaniTerm& term, const ComplexVector& s);

/// Point -sum_l c_l log L_l(n) carried by a term.
RealVector shintani_term_point(const ShintaniZetaSpec& spec, const ShintaniTerm& term);

}  // namespace crystal
