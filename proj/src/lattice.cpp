#include "crystal/lattice.hpp"

#include <cmath>
#include <queue>
#include <sstream>

namespace crystal {

BaseGraph::BaseGraph(std::vector<std::string> vertex_names, std::vector<OrientedEdge> edges)
    : names_(std::move(vertex_names)), edges_(std::move(edges))
{
    const int nv = num_vertices();
    const int ne = num_edges();
    if (nv == 0) throw ConfigError("base graph has no vertices");
    out_.assign(static_cast<std::size_t>(nv), {});
    for (int i = 0; i < ne; ++i) {
        const auto& e = edges_[static_cast<std::size_t>(i)];
        if (e.id != i) throw ConfigError("edge ids must equal their list position");
        if (e.origin < 0 || e.origin >= nv || e.terminus < 0 || e.terminus >= nv)
            throw ConfigError("edge " + std::to_string(i) + " references an unknown vertex");
        if (e.inverse < 0 || e.inverse >= ne)
            throw ConfigError("edge " + std::to_string(i) + " has an unknown inverse");
        if (e.inverse == i) throw ConfigError("edge " + std::to_string(i) + " is its own inverse");
        const auto& inv = edges_[static_cast<std::size_t>(e.inverse)];
        if (inv.inverse != i)
            throw ConfigError("edge inversion is not an involution at edge " + std::to_string(i));
        if (inv.origin != e.terminus || inv.terminus != e.origin)
            throw ConfigError("inverse of edge " + std::to_string(i) + " does not reverse it");
        out_[static_cast<std::size_t>(e.origin)].push_back(i);
    }
    for (int v = 0; v < nv; ++v) {
        if (out_[static_cast<std::size_t>(v)].empty())
            throw ConfigError("vertex '" + names_[static_cast<std::size_t>(v)] + "' has degree 0");
    }
    std::vector<bool> seen(static_cast<std::size_t>(nv), false);
    std::queue<VertexId> frontier;
    frontier.push(0);
    seen[0] = true;
    int reached = 1;
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (EdgeId e : out_[static_cast<std::size_t>(v)]) {
            VertexId w = edges_[static_cast<std::size_t>(e)].terminus;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                ++reached;
                frontier.push(w);
            }
        }
    }
    if (reached != nv) throw ConfigError("base graph is not connected");
}

BaseGraph BaseGraph::from_pairs(std::vector<std::string> vertex_names,
                                const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                const std::vector<std::string>& edge_names)
{
    std::vector<OrientedEdge> edges;
    edges.reserve(pairs.size() * 2);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const int fwd = static_cast<int>(2 * k);
        std::string name = k < edge_names.size() ? edge_names[k] : "e" + std::to_string(k + 1);
        edges.push_back({fwd, pairs[k].first, pairs[k].second, fwd + 1, name});
        edges.push_back({fwd + 1, pairs[k].second, pairs[k].first, fwd, name + "~"});
    }
    return BaseGraph(std::move(vertex_names), std::move(edges));
}

BaseGraph BaseGraph::bouquet(int loops)
{
    std::vector<std::pair<VertexId, VertexId>> pairs(static_cast<std::size_t>(loops), {0, 0});
    return from_pairs({"x"}, pairs);
}

std::optional<VertexId> BaseGraph::find_vertex(const std::string& name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return static_cast<VertexId>(i);
    return std::nullopt;
}

std::optional<EdgeId> BaseGraph::find_edge(const std::string& name) const
{
    for (const auto& e : edges_)
        if (e.name == name) return e.id;
    return std::nullopt;
}

int betti(const BaseGraph& base)
{
    return base.num_edges() / 2 - base.num_vertices() + 1;
}

CycleBasis cycle_basis(const BaseGraph& base)
{
    const auto nv = static_cast<std::size_t>(base.num_vertices());
    std::vector<EdgeId> parent_edge(nv, -1);
    std::vector<bool> seen(nv, false);
    std::vector<bool> in_tree(static_cast<std::size_t>(base.num_edges()), false);
    CycleBasis basis;

    std::queue<VertexId> frontier;
    frontier.push(0);
    seen[0] = true;
    while (!frontier.empty()) {
        VertexId v = frontier.front();
        frontier.pop();
        for (EdgeId e : base.out_edges(v)) {
            VertexId w = base.edge(e).terminus;
            if (seen[static_cast<std::size_t>(w)]) continue;
            seen[static_cast<std::size_t>(w)] = true;
            parent_edge[static_cast<std::size_t>(w)] = e;
            in_tree[static_cast<std::size_t>(e)] = true;
            in_tree[static_cast<std::size_t>(base.edge(e).inverse)] = true;
            basis.tree_edges.push_back(e);
            frontier.push(w);
        }
    }

    // Tree path from vertex 0 down to v.
    auto root_path = [&](VertexId v) {
        std::vector<EdgeId> rev;
        while (v != 0) {
            EdgeId e = parent_edge[static_cast<std::size_t>(v)];
            rev.push_back(e);
            v = base.edge(e).origin;
        }
        return std::vector<EdgeId>(rev.rbegin(), rev.rend());
    };

    for (const auto& e : base.edges()) {
        if (in_tree[static_cast<std::size_t>(e.id)] || e.inverse < e.id) continue;
        basis.generators.push_back(e.id);
        std::vector<EdgeId> cycle = root_path(e.origin);
        cycle.push_back(e.id);
        for (auto it = root_path(e.terminus); !it.empty(); it.pop_back())
            cycle.push_back(base.edge(it.back()).inverse);
        basis.cycles.push_back(std::move(cycle));
    }
    return basis;
}

namespace {

int integer_rank(const std::vector<Cell>& vectors, int dim)
{
    if (vectors.empty() || dim == 0) return 0;
    RealMatrix m(dim, static_cast<Eigen::Index>(vectors.size()));
    for (std::size_t j = 0; j < vectors.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = vectors[j].cast<double>();
    Eigen::FullPivLU<RealMatrix> lu(m);
    return static_cast<int>(lu.rank());
}

}  // namespace

CrystalLattice::CrystalLattice(BaseGraph base, int dim, std::vector<Cell> voltage)
    : base_(std::move(base)), dim_(dim), voltage_(std::move(voltage))
{
    if (dim_ <= 0) throw ConfigError("lattice dimension must be positive");
    if (static_cast<int>(voltage_.size()) != base_.num_edges())
        throw ConfigError("need exactly one voltage vector per oriented edge");
    for (const auto& e : base_.edges()) {
        const Cell& v = voltage_[static_cast<std::size_t>(e.id)];
        if (v.size() != dim_)
            throw ConfigError("voltage of edge '" + e.name + "' has wrong length");
        if (v != -voltage_[static_cast<std::size_t>(e.inverse)])
            throw ConfigError("voltage of edge '" + e.name + "' is not minus that of its inverse");
    }
    std::vector<Cell> cycle_voltages;
    for (const auto& cyc : cycle_basis(base_).cycles) cycle_voltages.push_back(path_voltage(*this, cyc));
    if (integer_rank(cycle_voltages, dim_) != dim_)
        throw ConfigError("cycle voltages span rank " + std::to_string(integer_rank(cycle_voltages, dim_)) +
                          " < dim " + std::to_string(dim_) + "; the cover is not a " +
                          std::to_string(dim_) + "-dimensional crystal lattice");
}

bool is_maximal_abelian(const CrystalLattice& lattice)
{
    return lattice.dim() == betti(lattice.base());
}

CrystalLattice maximal_abelian_cover(const BaseGraph& base)
{
    const int b1 = betti(base);
    if (b1 <= 0) throw PreconditionError("base graph is a tree; its homology is trivial");
    CycleBasis cb = cycle_basis(base);
    std::vector<Cell> voltage(static_cast<std::size_t>(base.num_edges()), Cell::Zero(b1));
    for (std::size_t j = 0; j < cb.generators.size(); ++j) {
        EdgeId e = cb.generators[j];
        voltage[static_cast<std::size_t>(e)][static_cast<Eigen::Index>(j)] = 1;
        voltage[static_cast<std::size_t>(base.edge(e).inverse)][static_cast<Eigen::Index>(j)] = -1;
    }
    return CrystalLattice(base, b1, std::move(voltage));
}

PeriodicRealization::PeriodicRealization(CrystalLattice lattice, std::vector<RealVector> offsets,
                                         RealMatrix basis)
    : lattice_(std::move(lattice)), offsets_(std::move(offsets)), basis_(std::move(basis))
{
    const int d = lattice_.dim();
    if (static_cast<int>(offsets_.size()) != lattice_.base().num_vertices())
        throw ConfigError("need exactly one offset per base vertex");
    for (const auto& o : offsets_)
        if (o.size() != d) throw ConfigError("offset vector has wrong length");
    if (basis_.rows() != d || basis_.cols() != d) throw ConfigError("basis must be d x d");
    Eigen::FullPivLU<RealMatrix> lu(basis_);
    if (lu.rank() != d) throw ConfigError("basis matrix is singular; realization does not span R^d");
    basis_inv_ = lu.inverse();
}

PeriodicRealization::PeriodicRealization(CrystalLattice lattice, std::vector<RealVector> offsets)
    : PeriodicRealization(lattice, std::move(offsets), RealMatrix::Identity(lattice.dim(), lattice.dim()))
{
}

RealVector edge_displacement(const PeriodicRealization& real, EdgeId e)
{
    const auto& edge = real.base().edge(e);
    return real.offset(edge.terminus) + real.basis() * real.lattice().voltage(e).cast<double>() -
           real.offset(edge.origin);
}

RealVector realize(const PeriodicRealization& real, const LatticePoint& p)
{
    return real.offset(p.base_vertex) + real.basis() * p.cell.cast<double>();
}

std::optional<LatticePoint> locate(const PeriodicRealization& real, const RealVector& v, double tol)
{
    const int d = real.dim();
    if (v.size() != d) throw PreconditionError("locate: vector has wrong length");
    // Cells within tol of the target lie within |B^-1| tol of the real solution.
    const double spread = real.basis_inverse().norm() * tol;
    const auto radius = static_cast<std::int64_t>(std::floor(spread + 0.5));

    std::optional<LatticePoint> found;
    for (VertexId x = 0; x < real.base().num_vertices(); ++x) {
        RealVector w = real.basis_inverse() * (v - real.offset(x));
        Cell centre(d);
        for (int i = 0; i < d; ++i) centre[i] = std::llround(w[i]);

        Cell delta = Cell::Constant(d, -radius);
        while (true) {
            LatticePoint p{x, centre + delta};
            if ((realize(real, p) - v).norm() <= tol) {
                if (found && !(*found == p))
                    throw PreconditionError("locate: more than one lattice point within tolerance; "
                                            "realization is (nearly) degenerate");
                found = p;
            }
            int i = 0;
            for (; i < d; ++i) {
                if (delta[i] < radius) {
                    ++delta[i];
                    break;
                }
                delta[i] = -radius;
            }
            if (i == d) break;
        }
    }
    return found;
}

std::vector<Violation> check_nondegenerate(const PeriodicRealization& real, double tol)
{
    std::vector<Violation> out;
    const auto& base = real.base();
    const int nv = base.num_vertices();
    for (VertexId x = 0; x < nv; ++x) {
        for (VertexId y = x + 1; y < nv; ++y) {
            RealVector w = real.basis_inverse() * (real.offset(y) - real.offset(x));
            RealVector frac = w - w.array().round().matrix();
            if ((real.basis() * frac).norm() <= tol) {
                out.push_back({ViolationKind::offset_collision,
                               "vertices '" + base.vertex_name(x) + "' and '" + base.vertex_name(y) +
                                   "' realize to the same point modulo the period lattice"});
            }
        }
    }
    for (const auto& e : base.edges()) {
        if (edge_displacement(real, e.id).norm() <= tol)
            out.push_back({ViolationKind::zero_edge, "edge '" + e.name + "' has zero displacement"});
    }
    for (VertexId x = 0; x < nv; ++x) {
        const auto& star = base.out_edges(x);
        for (std::size_t i = 0; i < star.size(); ++i) {
            RealVector ui = edge_displacement(real, star[i]);
            if (ui.norm() <= tol) continue;
            ui.normalize();
            for (std::size_t j = i + 1; j < star.size(); ++j) {
                RealVector uj = edge_displacement(real, star[j]);
                if (uj.norm() <= tol) continue;
                uj.normalize();
                if ((ui - uj).norm() <= tol) {
                    out.push_back({ViolationKind::duplicate_direction,
                                   "edges '" + base.edge(star[i]).name + "' and '" + base.edge(star[j]).name +
                                       "' leave '" + base.vertex_name(x) + "' in the same direction"});
                }
            }
        }
    }
    return out;
}

namespace {

void check_composable(const BaseGraph& base, const std::vector<EdgeId>& path)
{
    for (EdgeId e : path)
        if (e < 0 || e >= base.num_edges()) throw PreconditionError("path uses unknown edge " + std::to_string(e));
    for (std::size_t k = 1; k < path.size(); ++k) {
        if (base.edge(path[k - 1]).terminus != base.edge(path[k]).origin) {
            std::ostringstream msg;
            msg << "path is not composable at position " << k << ": edge '" << base.edge(path[k - 1]).name
                << "' ends where edge '" << base.edge(path[k]).name << "' does not start";
            throw PreconditionError(msg.str());
        }
    }
}

}  // namespace

RealVector path_displacement(const PeriodicRealization& real, const std::vector<EdgeId>& path)
{
    check_composable(real.base(), path);
    RealVector sum = RealVector::Zero(real.dim());
    for (EdgeId e : path) sum += edge_displacement(real, e);
    return sum;
}

Cell path_voltage(const CrystalLattice& lattice, const std::vector<EdgeId>& path)
{
    check_composable(lattice.base(), path);
    Cell sum = Cell::Zero(lattice.dim());
    for (EdgeId e : path) sum += lattice.voltage(e);
    return sum;
}

}  // namespace crystal
