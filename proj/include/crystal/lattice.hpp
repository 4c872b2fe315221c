#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crystal/types.hpp"

namespace crystal {

using VertexId = int;
using EdgeId = int;

struct OrientedEdge {
    EdgeId id = 0;
    VertexId origin = 0;
    VertexId terminus = 0;
    EdgeId inverse = 0;
    std::string name;
};

/// Finite connected graph whose edges come in (e, inverse e) pairs. Loops
/// are allowed: a bouquet graph is one vertex with several loop pairs.
class BaseGraph {
  public:
    /// Edge ids must equal their position in `edges`. Throws ConfigError if
    /// the inversion pairing, connectivity or degree condition fails.
    BaseGraph(std::vector<std::string> vertex_names, std::vector<OrientedEdge> edges);

    /// Builds e_k : from -> to and its inverse for each listed pair; edge 2k is
    /// the k-th listed orientation and 2k+1 its inverse.
    static BaseGraph from_pairs(std::vector<std::string> vertex_names,
                                const std::vector<std::pair<VertexId, VertexId>>& pairs,
                                const std::vector<std::string>& edge_names = {});

    /// Single vertex with `loops` loop pairs.
    static BaseGraph bouquet(int loops);

    int num_vertices() const { return static_cast<int>(names_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }
    const OrientedEdge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<OrientedEdge>& edges() const { return edges_; }
    const std::string& vertex_name(VertexId v) const { return names_.at(static_cast<std::size_t>(v)); }
    const std::vector<std::string>& vertex_names() const { return names_; }
    std::optional<VertexId> find_vertex(const std::string& name) const;
    std::optional<EdgeId> find_edge(const std::string& name) const;
    const std::vector<EdgeId>& out_edges(VertexId v) const { return out_.at(static_cast<std::size_t>(v)); }

  private:
    std::vector<std::string> names_;
    std::vector<OrientedEdge> edges_;
    std::vector<std::vector<EdgeId>> out_;
};

/// First Betti number |E|/2 - |V| + 1.
int betti(const BaseGraph& base);

/// Spanning tree edges (one orientation each, pointing away from vertex 0) and
/// the fundamental cycles it induces. Each cycle is a closed edge path based
/// at vertex 0 that traverses exactly one non-tree edge, the listed
/// `generators[j]`.
struct CycleBasis {
    std::vector<EdgeId> tree_edges;
    std::vector<EdgeId> generators;
    std::vector<std::vector<EdgeId>> cycles;
};

CycleBasis cycle_basis(const BaseGraph& base);

/// Periodic cover of a base graph stored as a Z^d voltage assignment. A vertex
/// of the cover is a pair (base vertex, cell); edge e lifted at cell c ends at
/// cell c + voltage(e).
class CrystalLattice {
  public:
    /// Throws ConfigError unless voltage(inverse e) = -voltage(e) and the cycle
    /// voltages span a rank-`dim` subgroup.
    CrystalLattice(BaseGraph base, int dim, std::vector<Cell> voltage);

    const BaseGraph& base() const { return base_; }
    int dim() const { return dim_; }
    const Cell& voltage(EdgeId e) const { return voltage_.at(static_cast<std::size_t>(e)); }
    const std::vector<Cell>& voltages() const { return voltage_; }

  private:
    BaseGraph base_;
    int dim_;
    std::vector<Cell> voltage_;
};

/// True iff dim X equals the first Betti number of the base.
bool is_maximal_abelian(const CrystalLattice& lattice);

/// Spanning-tree construction of the maximal abelian cover: tree edges carry
/// zero voltage, the j-th non-tree pair carries +/- the j-th unit vector.
CrystalLattice maximal_abelian_cover(const BaseGraph& base);

struct LatticePoint {
    VertexId base_vertex = 0;
    Cell cell;

    friend bool operator==(const LatticePoint& a, const LatticePoint& b)
    {
        return a.base_vertex == b.base_vertex && a.cell == b.cell;
    }
};

/// Equivariant embedding of a crystal lattice: Phi((x, c)) = offset(x) + basis * c.
class PeriodicRealization {
  public:
    /// Throws ConfigError on size mismatch or a singular basis.
    PeriodicRealization(CrystalLattice lattice, std::vector<RealVector> offsets, RealMatrix basis);

    /// Identity basis.
    PeriodicRealization(CrystalLattice lattice, std::vector<RealVector> offsets);

    const CrystalLattice& lattice() const { return lattice_; }
    const BaseGraph& base() const { return lattice_.base(); }
    int dim() const { return lattice_.dim(); }
    const RealVector& offset(VertexId v) const { return offsets_.at(static_cast<std::size_t>(v)); }
    const std::vector<RealVector>& offsets() const { return offsets_; }
    const RealMatrix& basis() const { return basis_; }
    const RealMatrix& basis_inverse() const { return basis_inv_; }

  private:
    CrystalLattice lattice_;
    std::vector<RealVector> offsets_;
    RealMatrix basis_;
    RealMatrix basis_inv_;
};

/// Building-block vector dPhi(e) = Phi(t(e)) - Phi(o(e)).
RealVector edge_displacement(const PeriodicRealization& real, EdgeId e);

RealVector realize(const PeriodicRealization& real, const LatticePoint& p);

/// Lattice point realized within `tol` of v, if any. Throws PreconditionError
/// when more than one point matches.
std::optional<LatticePoint> locate(const PeriodicRealization& real, const RealVector& v,
                                   double tol = 1e-9);

enum class ViolationKind { offset_collision, zero_edge, duplicate_direction };

struct Violation {
    ViolationKind kind;
    std::string message;
};

/// Empty iff the realization is injective with distinct edge directions in
/// every vertex star. Periodicity makes the finite check sufficient.
std::vector<Violation> check_nondegenerate(const PeriodicRealization& real, double tol = 1e-9);

/// Sum of building blocks along a composable base path.
RealVector path_displacement(const PeriodicRealization& real, const std::vector<EdgeId>& path);

/// Lattice translation carried by a composable base path.
Cell path_voltage(const CrystalLattice& lattice, const std::vector<EdgeId>& path);

}  // namespace crystal
