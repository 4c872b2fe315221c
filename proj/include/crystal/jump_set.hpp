#pragma once

#include <vector>

#include "crystal/lattice.hpp"

namespace crystal {

/// A path displacement together with one path that realizes it.
struct JumpWitness {
    RealVector displacement;
    std::vector<EdgeId> path;
};

/// Distinct displacements of all base paths starting at `x` with 1..max_length
/// edges. The jump set at x is the set of real multiples of these vectors (as
/// max_length grows), so this is a bounded membership witness generator.
std::vector<JumpWitness> enumerate_jump_vectors(const PeriodicRealization& real, VertexId x, int max_length = 6,
                                                double tol = 1e-9);

/// True if v is zero or a real multiple of a displacement reachable from x in
/// at most max_length edges.
bool in_jump_set(const PeriodicRealization& real, VertexId x, const RealVector& v, int max_length = 6,
                 double tol = 1e-9);

}  // namespace crystal
