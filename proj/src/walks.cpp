#include "crystal/walks.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <sstream>
#include <thread>

namespace crystal {

namespace {

class Fnv1a {
  public:
    void bytes(const void* p, std::size_t n)
    {
        const auto* c = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h_ ^= c[i];
            h_ *= 0x100000001b3ULL;
        }
    }
    void real(double v) { bytes(&v, sizeof v); }
    void integer(std::int64_t v) { bytes(&v, sizeof v); }
    std::string hex() const
    {
        std::ostringstream out;
        out << std::hex << std::setw(16) << std::setfill('0') << h_;
        return out.str();
    }

  private:
    std::uint64_t h_ = 0xcbf29ce484222325ULL;
};

void hash_realization(Fnv1a& h, const PeriodicRealization& real)
{
    const auto& base = real.base();
    h.integer(base.num_vertices());
    h.integer(base.num_edges());
    for (const auto& e : base.edges()) {
        h.integer(e.origin);
        h.integer(e.terminus);
        h.integer(e.inverse);
        const Cell& v = real.lattice().voltage(e.id);
        for (Eigen::Index k = 0; k < v.size(); ++k) h.integer(v[k]);
    }
    for (const auto& o : real.offsets())
        for (Eigen::Index k = 0; k < o.size(); ++k) h.real(o[k]);
    for (Eigen::Index k = 0; k < real.basis().size(); ++k) h.real(real.basis().data()[k]);
}

void check_start(const PeriodicRealization& real, const LatticePoint& start)
{
    if (start.base_vertex < 0 || start.base_vertex >= real.base().num_vertices())
        throw PreconditionError("start vertex is not a vertex of the base graph");
    if (start.cell.size() != real.dim()) throw PreconditionError("start cell must lie in Z^d");
}

int resolve_threads(int threads, int n_paths)
{
    int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    t = std::max(1, t);
    return std::min(t, std::max(1, n_paths));
}

/// Runs body(p) for p in [0, n) over contiguous blocks, one per worker.
template <class Body>
void parallel_paths(int n, int threads, Body body)
{
    const int workers = resolve_threads(threads, n);
    if (workers == 1) {
        for (int p = 0; p < n; ++p) body(p);
        return;
    }
    std::vector<std::thread> pool;
    const int chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const int lo = w * chunk;
        const int hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int p = lo; p < hi; ++p) body(p);
        });
    }
    for (auto& th : pool) th.join();
}

const StepKernel& kernel_at(const FiniteRangeWalkSpec& spec, VertexId v)
{
    if (v < 0 || static_cast<std::size_t>(v) >= spec.kernels.size() || !spec.kernels[static_cast<std::size_t>(v)])
        throw PreconditionError("no step kernel for base vertex '" + spec.realization.base().vertex_name(v) + "'");
    return *spec.kernels[static_cast<std::size_t>(v)];
}

void apply_step(const FiniteRangeWalkSpec& spec, LatticePoint& state, Rng& rng)
{
    const StepKernel& k = kernel_at(spec, state.base_vertex);
    const double u = uniform01(rng) * k.cumulative.back();
    auto it = std::upper_bound(k.cumulative.begin(), k.cumulative.end(), u);
    if (it == k.cumulative.end()) --it;
    const Move& mv = k.moves[static_cast<std::size_t>(it - k.cumulative.begin())];
    state.base_vertex = mv.target;
    state.cell += mv.delta;
}

void apply_step(const InfiniteRangeWalkSpec& spec, LatticePoint& state, Rng& rng)
{
    const auto counts = sample_compound_poisson_counts(spec.law, rng);
    for (std::size_t l = 0; l < counts.size(); ++l)
        if (counts[l] != 0) state.cell -= counts[l] * spec.direction_cells[l];
}

template <class Spec>
std::vector<Trajectory> simulate_impl(const Spec& spec, int n_steps, int n_paths, std::uint64_t master_seed,
                                      int threads)
{
    if (n_steps < 0 || n_paths < 0) throw PreconditionError("n_steps and n_paths must be nonnegative");
    const std::string digest = spec_digest(spec);
    std::vector<Trajectory> out(static_cast<std::size_t>(n_paths));
    parallel_paths(n_paths, threads, [&](int p) {
        Rng rng = make_stream(master_seed, static_cast<std::uint64_t>(p));
        Trajectory& tr = out[static_cast<std::size_t>(p)];
        tr.seed = master_seed;
        tr.path = static_cast<std::uint64_t>(p);
        tr.meta = digest;
        tr.points.reserve(static_cast<std::size_t>(n_steps) + 1);
        tr.realized.reserve(static_cast<std::size_t>(n_steps) + 1);
        LatticePoint state = spec.start;
        tr.points.push_back(state);
        tr.realized.push_back(realize(spec.realization, state));
        for (int k = 0; k < n_steps; ++k) {
            apply_step(spec, state, rng);
            tr.points.push_back(state);
            tr.realized.push_back(realize(spec.realization, state));
        }
    });
    return out;
}

template <class Spec>
std::vector<LatticePoint> endpoints_impl(const Spec& spec, int n_steps, int n_paths, std::uint64_t master_seed,
                                         int threads)
{
    if (n_steps < 0 || n_paths < 0) throw PreconditionError("n_steps and n_paths must be nonnegative");
    std::vector<LatticePoint> out(static_cast<std::size_t>(n_paths));
    parallel_paths(n_paths, threads, [&](int p) {
        Rng rng = make_stream(master_seed, static_cast<std::uint64_t>(p));
        LatticePoint state = spec.start;
        for (int k = 0; k < n_steps; ++k) apply_step(spec, state, rng);
        out[static_cast<std::size_t>(p)] = std::move(state);
    });
    return out;
}

}  // namespace

FiniteRangeWalkSpec make_finite_range_walk(const PeriodicRealization& real,
                                           const std::map<VertexId, KernelInput>& kernels, LatticePoint start)
{
    check_start(real, start);
    std::vector<std::optional<StepKernel>> built(static_cast<std::size_t>(real.base().num_vertices()));
    for (const auto& [x, input] : kernels) {
        if (x < 0 || x >= real.base().num_vertices()) throw PreconditionError("kernel given for an unknown base vertex");
        StepKernel k;
        k.sigma = input.sigma ? *input.sigma : RealVector::Ones(real.dim());
        k.witness = finite_support_to_shintani(input.points, input.weights, k.sigma);
        k.law = shintani_distribution(k.witness, k.sigma);
        attach_lattice_points(k.law, real, x);
        double acc = 0.0;
        for (std::size_t i = 0; i < k.law.size(); ++i) {
            const LatticePoint& lp = (*k.law.lattice_points)[i];
            k.moves.push_back({lp.base_vertex, lp.cell, k.law.points[i]});
            acc += k.law.masses[i];
            k.cumulative.push_back(acc);
        }
        built[static_cast<std::size_t>(x)] = std::move(k);
    }
    if (!built[static_cast<std::size_t>(start.base_vertex)])
        throw PreconditionError("no step kernel for the start vertex '" + real.base().vertex_name(start.base_vertex) + "'");
    return {real, std::move(built), std::move(start)};
}

InfiniteRangeWalkSpec make_infinite_range_walk(const PeriodicRealization& real, CompoundPoissonLaw law,
                                               LatticePoint start)
{
    if (real.base().num_vertices() != 1)
        throw ConfigError("an infinite-range walk needs a single-vertex base graph (Cayley graph of Z^d)");
    if (law.dim() != real.dim()) throw ConfigError("law dimension differs from the lattice dimension");
    check_start(real, start);
    std::vector<Cell> cells;
    for (std::size_t l = 0; l < law.spec.m(); ++l) {
        const RealVector coords = real.basis_inverse() * law.spec.a[l];
        Cell c(coords.size());
        for (Eigen::Index k = 0; k < coords.size(); ++k) {
            const double r = std::round(coords[k]);
            if (std::abs(coords[k] - r) > 1e-9) {
                std::ostringstream msg;
                msg << "a_" << l + 1 << " = (" << law.spec.a[l].transpose()
                    << ") is not in basis * Z^d; Levy atoms would leave the lattice";
                throw ConfigError(msg.str());
            }
            c[k] = static_cast<std::int64_t>(r);
        }
        cells.push_back(std::move(c));
    }
    return {real, std::move(law), std::move(start), std::move(cells)};
}

LatticePoint step_finite_range(const FiniteRangeWalkSpec& spec, const LatticePoint& state, Rng& rng)
{
    LatticePoint next = state;
    apply_step(spec, next, rng);
    return next;
}

LatticePoint step_infinite_range(const InfiniteRangeWalkSpec& spec, const LatticePoint& state, Rng& rng)
{
    LatticePoint next = state;
    apply_step(spec, next, rng);
    return next;
}

std::vector<Trajectory> simulate(const FiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                 std::uint64_t master_seed, int threads)
{
    return simulate_impl(spec, n_steps, n_paths, master_seed, threads);
}

std::vector<Trajectory> simulate(const InfiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                 std::uint64_t master_seed, int threads)
{
    return simulate_impl(spec, n_steps, n_paths, master_seed, threads);
}

std::vector<LatticePoint> simulate_endpoints(const FiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                             std::uint64_t master_seed, int threads)
{
    return endpoints_impl(spec, n_steps, n_paths, master_seed, threads);
}

std::vector<LatticePoint> simulate_endpoints(const InfiniteRangeWalkSpec& spec, int n_steps, int n_paths,
                                             std::uint64_t master_seed, int threads)
{
    return endpoints_impl(spec, n_steps, n_paths, master_seed, threads);
}

Complex walk_cf(const FiniteRangeWalkSpec& spec, int n, const RealVector& t)
{
    if (n < 0) throw PreconditionError("number of steps must be nonnegative");
    Complex acc{1.0, 0.0};
    VertexId x = spec.start.base_vertex;
    for (int k = 0; k < n; ++k) {
        const StepKernel& kern = kernel_at(spec, x);
        const VertexId next = kern.moves.front().target;
        for (const Move& mv : kern.moves) {
            // the last step may branch; only the vertices feeding later steps matter
            if (mv.target != next && k + 1 < n)
                throw PreconditionError("analytic CF unavailable; use empirical CF: steps from base vertex '" +
                                        spec.realization.base().vertex_name(x) +
                                        "' reach more than one base vertex, so the visitation sequence is random");
        }
        acc *= characteristic_function(kern.law, t);
        x = next;
    }
    return acc;
}

Complex walk_cf(const InfiniteRangeWalkSpec& spec, int n, const RealVector& t)
{
    if (n < 0) throw PreconditionError("number of steps must be nonnegative");
    return std::pow(spec.law.cf(t), n);
}

std::string spec_digest(const FiniteRangeWalkSpec& spec)
{
    Fnv1a h;
    h.integer(1);
    hash_realization(h, spec.realization);
    for (std::size_t x = 0; x < spec.kernels.size(); ++x) {
        if (!spec.kernels[x]) continue;
        h.integer(static_cast<std::int64_t>(x));
        for (std::size_t i = 0; i < spec.kernels[x]->law.size(); ++i) {
            const auto& p = spec.kernels[x]->law.points[i];
            for (Eigen::Index k = 0; k < p.size(); ++k) h.real(p[k]);
            h.real(spec.kernels[x]->law.masses[i]);
        }
    }
    h.integer(spec.start.base_vertex);
    for (Eigen::Index k = 0; k < spec.start.cell.size(); ++k) h.integer(spec.start.cell[k]);
    return h.hex();
}

std::string spec_digest(const InfiniteRangeWalkSpec& spec)
{
    Fnv1a h;
    h.integer(2);
    hash_realization(h, spec.realization);
    for (std::size_t l = 0; l < spec.law.spec.m(); ++l) {
        h.real(spec.law.ratios[l]);
        for (Eigen::Index k = 0; k < spec.law.spec.a[l].size(); ++k) h.real(spec.law.spec.a[l][k]);
    }
    for (Eigen::Index k = 0; k < spec.start.cell.size(); ++k) h.integer(spec.start.cell[k]);
    return h.hex();
}

}  // namespace crystal
