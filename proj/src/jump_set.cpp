#include "crystal/jump_set.hpp"

#include <cmath>
#include <map>

namespace crystal {

namespace {

// Key of a path end state: terminal base vertex plus its lattice cell.
using StateKey = std::pair<VertexId, std::vector<std::int64_t>>;

StateKey key_of(const LatticePoint& p)
{
    return {p.base_vertex, std::vector<std::int64_t>(p.cell.data(), p.cell.data() + p.cell.size())};
}

}  // namespace

std::vector<JumpWitness> enumerate_jump_vectors(const PeriodicRealization& real, VertexId x, int max_length,
                                                double tol)
{
    const auto& base = real.base();
    const auto& lat = real.lattice();
    if (x < 0 || x >= base.num_vertices()) throw PreconditionError("unknown base vertex");

    // Breadth-first over lattice endpoints; displacement only depends on the endpoint.
    std::map<StateKey, std::vector<EdgeId>> visited;
    std::vector<std::pair<LatticePoint, std::vector<EdgeId>>> frontier{{LatticePoint{x, Cell::Zero(real.dim())}, {}}};
    std::vector<JumpWitness> out;
    const RealVector origin = real.offset(x);

    for (int len = 1; len <= max_length; ++len) {
        std::vector<std::pair<LatticePoint, std::vector<EdgeId>>> next;
        for (const auto& [point, path] : frontier) {
            for (EdgeId e : base.out_edges(point.base_vertex)) {
                LatticePoint q{base.edge(e).terminus, point.cell + lat.voltage(e)};
                auto key = key_of(q);
                if (visited.count(key)) continue;
                std::vector<EdgeId> p2 = path;
                p2.push_back(e);
                visited.emplace(key, p2);
                RealVector disp = realize(real, q) - origin;
                bool duplicate = false;
                for (const auto& w : out) {
                    if ((w.displacement - disp).norm() <= tol) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) out.push_back({disp, p2});
                next.emplace_back(std::move(q), std::move(p2));
            }
        }
        frontier = std::move(next);
    }
    return out;
}

bool in_jump_set(const PeriodicRealization& real, VertexId x, const RealVector& v, int max_length, double tol)
{
    if (v.norm() <= tol) return true;
    const RealVector dir = v.normalized();
    for (const auto& w : enumerate_jump_vectors(real, x, max_length, tol)) {
        const double n = w.displacement.norm();
        if (n <= tol) continue;
        const RealVector u = w.displacement / n;
        if ((u - dir).norm() <= tol || (u + dir).norm() <= tol) return true;
    }
    return false;
}

}  // namespace crystal
