#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crystal/compound_poisson.hpp"
#include "crystal/distribution.hpp"
#include "crystal/lattice.hpp"
#include "crystal/rng.hpp"

namespace crystal {

/// One-step law from a base vertex given as support vectors and weights.
struct KernelInput {
    std::vector<RealVector> points;
    std::vector<double> weights;
    std::optional<RealVector> sigma;  ///< defaults to (1, ..., 1)
};

/// A precomputed move: from (x, c) go to (target, c + delta).
struct Move {
    VertexId target = 0;
    Cell delta;
    RealVector displacement;
};

struct StepKernel {
    ShintaniZetaSpec witness;  ///< finite-support zeta spec generating the law
    RealVector sigma;
    LatticeDistribution law;
    std::vector<Move> moves;   ///< parallel to law.points
    std::vector<double> cumulative;
};

/// Markov walk whose step law depends on the current base vertex.
struct FiniteRangeWalkSpec {
    PeriodicRealization realization;
    std::vector<std::optional<StepKernel>> kernels;  ///< indexed by base vertex
    LatticePoint start;
};

/// Builds the kernels through the finite-support zeta construction and checks
/// that every step lands on a realized lattice vertex. Throws
/// PreconditionError naming the first vector that does not.
FiniteRangeWalkSpec make_finite_range_walk(const PeriodicRealization& real,
                                           const std::map<VertexId, KernelInput>& kernels, LatticePoint start);

/// Walk with iid compound Poisson increments on a single-vertex base.
struct InfiniteRangeWalkSpec {
    PeriodicRealization realization;
    CompoundPoissonLaw law;
    LatticePoint start;
    std::vector<Cell> direction_cells;  ///< basis^-1 a_l, integral
};

/// Throws ConfigError unless the base has one vertex and every a_l lies in
/// basis * Z^d.
InfiniteRangeWalkSpec make_infinite_range_walk(const PeriodicRealization& real, CompoundPoissonLaw law,
                                               LatticePoint start);

struct Trajectory {
    std::vector<LatticePoint> points;
    std::vector<RealVector> realized;
    std::uint64_t seed = 0;  ///< master seed
    std::uint64_t path = 0;  ///< stream index
    std::string meta;        ///< digest of the walk spec
};

LatticePoint step_finite_range(const FiniteRangeWalkSpec& spec, const LatticePoint& state, Rng& rng);
LatticePoint step_infinite_range(const InfiniteRangeWalkSpec& spec, const LatticePoint& state, Rng& rng);

/// Path p uses make_stream(master_seed, p). Output does not depend on `threads`
/// (0 means hardware concurrency).
std::vector<Trajectory> simulate(const FiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                 std::uint64_t master_seed, int threads = 0);
std::vector<Trajectory> simulate(const InfiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                 std::uint64_t master_seed, int threads = 0);

/// Final points only; identical to the last entries of simulate().
std::vector<LatticePoint> simulate_endpoints(const FiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                             std::uint64_t master_seed, int threads = 0);
std::vector<LatticePoint> simulate_endpoints(const InfiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                             std::uint64_t master_seed, int threads = 0);

/// CF of the displacement after n steps. The finite-range version needs each
/// of the first n - 1 kernels visited to send its vertex to a single base
/// vertex, otherwise the product of one-step CFs is not a CF and
/// PreconditionError is thrown.
Complex walk_cf(const FiniteRangeWalkSpec& spec, int n, const RealVector& t);
Complex walk_cf(const InfiniteRangeWalkSpec& spec, int n, const RealVector& t);

std::string spec_digest(const FiniteRangeWalkSpec& spec);
std::string spec_digest(const InfiniteRangeWalkSpec& spec);

}  // namespace crystal
