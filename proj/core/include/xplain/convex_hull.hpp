#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace xplain {

/// One face of an exact hull. In 2D a facet is an edge (two vertices); in 3D
/// it is a convex polygon listed counterclockwise as seen from outside,
/// starting at the smallest row index. The plane satisfies normal . x = offset
/// with the unit normal pointing away from the hull interior.
struct HullFacet {
    std::vector<std::size_t> vertices;
    std::vector<double> normal;
    double offset = 0.0;
};

/// Vertex indices refer to rows of the source point matrix. Coincident rows
/// are collapsed to the first occurrence before construction. For 2D exact
/// hulls the vertices are in counterclockwise traversal order; for 3D and for
/// approximate hulls they are sorted ascending. Approximate hulls carry no
/// facets.
struct ConvexHull {
    std::size_t dim = 0;
    std::vector<std::size_t> vertex_indices;
    std::vector<HullFacet> facets;
    bool is_exact = true;
};

/// Exact hull for d in {2, 3}, keeping only strictly convex corner points:
/// points interior to a facet or collinear on an edge are not vertices.
/// Throws when d is unsupported, when fewer than d+1 rows are given, or when
/// the rows are affinely dependent (dimension-deficient input).
ConvexHull convex_hull_exact(const std::vector<std::vector<double>>& points);

/// Direction-sampling approximation for any dimension: draws num_directions
/// unit vectors from the seed and keeps the argmax point of each dot product
/// (ties resolve to the lowest row index). The result is a subset of the
/// exact hull's vertices.
ConvexHull convex_hull_approx(const std::vector<std::vector<double>>& points,
                              std::size_t num_directions, std::uint64_t seed);

/// Half-space membership test against every facet with 1e-9 slack, so the
/// boundary counts as contained. Only valid for exact hulls.
bool hull_contains(const ConvexHull& hull, std::span<const double> x);

} // namespace xplain
