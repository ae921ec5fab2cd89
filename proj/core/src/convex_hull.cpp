#include "xplain/convex_hull.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <set>

#include "xplain/errors.hpp"
#include "xplain/rng.hpp"

namespace xplain {
namespace {

struct UniquePoints {
    std::vector<std::vector<double>> pts;
    std::vector<std::size_t> source_row;
};

UniquePoints dedup_points(const std::vector<std::vector<double>>& points) {
    UniquePoints up;
    std::map<std::vector<double>, std::size_t> seen;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (seen.emplace(points[i], i).second) {
            up.pts.push_back(points[i]);
            up.source_row.push_back(i);
        }
    }
    return up;
}

// Shifts every coordinate by the per-axis minimum so that the geometric
// predicates see spread-sized magnitudes instead of raw offsets (years around
// 1960 would otherwise dominate the tolerance scale).
std::vector<std::vector<double>> center_points(const std::vector<std::vector<double>>& pts,
                                               std::size_t dim) {
    std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
    for (const auto& p : pts) {
        for (std::size_t k = 0; k < dim; ++k) lo[k] = std::min(lo[k], p[k]);
    }
    std::vector<std::vector<double>> out(pts.size(), std::vector<double>(dim));
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t k = 0; k < dim; ++k) out[i][k] = pts[i][k] - lo[k];
    }
    return out;
}

double coord_scale(const std::vector<std::vector<double>>& pts) {
    double s = 1.0;
    for (const auto& p : pts) {
        for (double v : p) s = std::max(s, std::abs(v));
    }
    return s;
}

double cross2(const std::vector<double>& o, const std::vector<double>& a,
              const std::vector<double>& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

ConvexHull hull_exact_2d(const UniquePoints& up) {
    const auto c = center_points(up.pts, 2);
    const double s = coord_scale(c);
    const double eps = 1e-9 * s * s;

    std::vector<std::size_t> order(c.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return c[a] < c[b]; });

    // Andrew's monotone chain; popping on cross <= eps drops collinear edge
    // points, leaving a strictly convex counterclockwise polygon.
    auto build = [&](auto begin, auto end) {
        std::vector<std::size_t> chain;
        for (auto it = begin; it != end; ++it) {
            while (chain.size() >= 2 &&
                   cross2(c[chain[chain.size() - 2]], c[chain.back()], c[*it]) <= eps) {
                chain.pop_back();
            }
            chain.push_back(*it);
        }
        return chain;
    };
    auto lower = build(order.begin(), order.end());
    auto upper = build(order.rbegin(), order.rend());

    std::vector<std::size_t> ring(lower.begin(), lower.end() - 1);
    ring.insert(ring.end(), upper.begin(), upper.end() - 1);
    if (ring.size() < 3) throw InputError("convex hull: dimension-deficient input (collinear)");

    ConvexHull hull;
    hull.dim = 2;
    hull.is_exact = true;
    for (std::size_t u : ring) hull.vertex_indices.push_back(up.source_row[u]);
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& a = up.pts[ring[i]];
        const auto& b = up.pts[ring[(i + 1) % ring.size()]];
        const double tx = b[0] - a[0];
        const double ty = b[1] - a[1];
        const double len = std::hypot(tx, ty);
        HullFacet f;
        f.vertices = {up.source_row[ring[i]], up.source_row[ring[(i + 1) % ring.size()]]};
        f.normal = {ty / len, -tx / len};
        f.offset = std::max(f.normal[0] * a[0] + f.normal[1] * a[1],
                            f.normal[0] * b[0] + f.normal[1] * b[1]);
        hull.facets.push_back(std::move(f));
    }
    return hull;
}

using Vec3 = std::array<double, 3>;

Vec3 sub3(const std::vector<double>& a, const std::vector<double>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

Vec3 cross3(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm3(const Vec3& a) { return std::sqrt(dot3(a, a)); }

struct Tri {
    std::array<std::size_t, 3> v;
    Vec3 raw_normal;
    double raw_offset;
    bool alive = true;
};

Tri make_tri(std::size_t a, std::size_t b, std::size_t cIdx,
             const std::vector<std::vector<double>>& c, const Vec3& interior) {
    Tri t{{a, b, cIdx}, {}, 0.0, true};
    t.raw_normal = cross3(sub3(c[b], c[a]), sub3(c[cIdx], c[a]));
    if (t.raw_normal[0] == 0.0 && t.raw_normal[1] == 0.0 && t.raw_normal[2] == 0.0) {
        throw Error("convex hull: degenerate facet from collinear points");
    }
    t.raw_offset = dot3(t.raw_normal, {c[a][0], c[a][1], c[a][2]});
    if (dot3(t.raw_normal, interior) > t.raw_offset) {
        std::swap(t.v[1], t.v[2]);
        t.raw_normal = {-t.raw_normal[0], -t.raw_normal[1], -t.raw_normal[2]};
        t.raw_offset = -t.raw_offset;
    }
    return t;
}

int span_rank(const std::vector<Vec3>& normals) {
    std::vector<Vec3> basis;
    for (Vec3 n : normals) {
        for (const Vec3& b : basis) {
            const double d = dot3(n, b);
            for (int k = 0; k < 3; ++k) n[k] -= d * b[k];
        }
        const double len = norm3(n);
        if (len > 1e-9) {
            basis.push_back({n[0] / len, n[1] / len, n[2] / len});
            if (basis.size() == 3) break;
        }
    }
    return static_cast<int>(basis.size());
}

struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

ConvexHull hull_exact_3d(const UniquePoints& up) {
    const auto c = center_points(up.pts, 3);
    const std::size_t n = c.size();
    const double s = coord_scale(c);
    const double eps_area = 1e-9 * s * s;
    const double eps_vol = 1e-9 * s * s * s;

    // Seed tetrahedron: widest axis-extreme pair, then the point of largest
    // triangle area, then the point of largest tetrahedron volume.
    std::size_t i0 = 0, i1 = 0;
    {
        std::set<std::size_t> extremes;
        for (std::size_t k = 0; k < 3; ++k) {
            std::size_t lo = 0, hi = 0;
            for (std::size_t i = 1; i < n; ++i) {
                if (c[i][k] < c[lo][k]) lo = i;
                if (c[i][k] > c[hi][k]) hi = i;
            }
            extremes.insert(lo);
            extremes.insert(hi);
        }
        double best = -1.0;
        for (std::size_t a : extremes) {
            for (std::size_t b : extremes) {
                if (b <= a) continue;
                const double d = norm3(sub3(c[a], c[b]));
                if (d > best) {
                    best = d;
                    i0 = a;
                    i1 = b;
                }
            }
        }
        if (best <= 0.0) throw InputError("convex hull: dimension-deficient input (single point)");
    }
    std::size_t i2 = n;
    {
        double best = eps_area;
        const Vec3 e = sub3(c[i1], c[i0]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == i0 || i == i1) continue;
            const double area = norm3(cross3(e, sub3(c[i], c[i0])));
            if (area > best) {
                best = area;
                i2 = i;
            }
        }
        if (i2 == n) throw InputError("convex hull: dimension-deficient input (collinear)");
    }
    std::size_t i3 = n;
    {
        double best = eps_vol;
        const Vec3 nrm = cross3(sub3(c[i1], c[i0]), sub3(c[i2], c[i0]));
        for (std::size_t i = 0; i < n; ++i) {
            if (i == i0 || i == i1 || i == i2) continue;
            const double vol = std::abs(dot3(nrm, sub3(c[i], c[i0])));
            if (vol > best) {
                best = vol;
                i3 = i;
            }
        }
        if (i3 == n) throw InputError("convex hull: dimension-deficient input (coplanar)");
    }

    Vec3 interior{};
    for (std::size_t i : {i0, i1, i2, i3}) {
        for (int k = 0; k < 3; ++k) interior[k] += c[i][k] / 4.0;
    }

    std::vector<Tri> tris;
    tris.push_back(make_tri(i0, i1, i2, c, interior));
    tris.push_back(make_tri(i0, i1, i3, c, interior));
    tris.push_back(make_tri(i0, i2, i3, c, interior));
    tris.push_back(make_tri(i1, i2, i3, c, interior));

    // A point on a facet plane counts as visible. That keeps points collinear
    // with a horizon edge out of the fan (their edge's both faces are then
    // visible too), which otherwise produces zero-area triangles on grid data.
    for (std::size_t p = 0; p < n; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        const Vec3 pt{c[p][0], c[p][1], c[p][2]};
        std::vector<std::size_t> visible;
        bool strictly_outside = false;
        for (std::size_t t = 0; t < tris.size(); ++t) {
            if (!tris[t].alive) continue;
            const double side = dot3(tris[t].raw_normal, pt) - tris[t].raw_offset;
            if (side >= -eps_vol) visible.push_back(t);
            if (side > eps_vol) strictly_outside = true;
        }
        if (!strictly_outside) continue;

        // Horizon: directed edges of visible triangles whose reversal is not
        // itself an edge of a visible triangle.
        std::set<std::pair<std::size_t, std::size_t>> vis_edges;
        for (std::size_t t : visible) {
            const auto& v = tris[t].v;
            vis_edges.insert({v[0], v[1]});
            vis_edges.insert({v[1], v[2]});
            vis_edges.insert({v[2], v[0]});
        }
        for (std::size_t t : visible) tris[t].alive = false;
        for (const auto& [a, b] : vis_edges) {
            if (!vis_edges.count({b, a})) tris.push_back(make_tri(a, b, p, c, interior));
        }
    }

    std::vector<std::size_t> alive;
    for (std::size_t t = 0; t < tris.size(); ++t) {
        if (tris[t].alive) alive.push_back(t);
    }

    // Merge coplanar neighbouring triangles into polygonal facets.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> by_edge;
    for (std::size_t t : alive) {
        const auto& v = tris[t].v;
        for (int k = 0; k < 3; ++k) {
            const std::size_t a = v[k], b = v[(k + 1) % 3];
            by_edge[{std::min(a, b), std::max(a, b)}].push_back(t);
        }
    }
    auto unit_normal = [&](std::size_t t) {
        const double len = norm3(tris[t].raw_normal);
        const Vec3& r = tris[t].raw_normal;
        return Vec3{r[0] / len, r[1] / len, r[2] / len};
    };
    Dsu dsu(tris.size());
    for (const auto& [edge, ts] : by_edge) {
        if (ts.size() != 2) throw Error("convex hull: surface is not a closed manifold");
        if (dot3(unit_normal(ts[0]), unit_normal(ts[1])) >= 1.0 - 1e-12) {
            dsu.unite(ts[0], ts[1]);
        }
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t t : alive) groups[dsu.find(t)].push_back(t);

    // A corner point must meet at least three facet planes spanning full rank;
    // points merely on a shared edge or inside a facet are dropped.
    std::map<std::size_t, std::set<std::size_t>> incident;
    for (std::size_t t : alive) {
        for (std::size_t v : tris[t].v) incident[v].insert(dsu.find(t));
    }
    std::set<std::size_t> corners;
    for (const auto& [v, gs] : incident) {
        if (gs.size() < 3) continue;
        std::vector<Vec3> normals;
        for (std::size_t g : gs) normals.push_back(unit_normal(groups[g].front()));
        if (span_rank(normals) == 3) corners.insert(v);
    }

    ConvexHull hull;
    hull.dim = 3;
    hull.is_exact = true;
    for (std::size_t v : corners) hull.vertex_indices.push_back(up.source_row[v]);
    std::sort(hull.vertex_indices.begin(), hull.vertex_indices.end());

    for (const auto& [root, ts] : groups) {
        std::map<std::size_t, std::size_t> next;
        for (std::size_t t : ts) {
            const auto& v = tris[t].v;
            for (int k = 0; k < 3; ++k) {
                const std::size_t a = v[k], b = v[(k + 1) % 3];
                const auto& pair_ts = by_edge[{std::min(a, b), std::max(a, b)}];
                const std::size_t other = pair_ts[0] == t ? pair_ts[1] : pair_ts[0];
                if (dsu.find(other) != root) next[a] = b;
            }
        }
        std::vector<std::size_t> cycle;
        const std::size_t start = next.begin()->first;
        for (std::size_t v = start; cycle.empty() || v != start; v = next.at(v)) {
            cycle.push_back(v);
            if (cycle.size() > next.size()) throw Error("convex hull: facet border is not a cycle");
        }
        std::vector<std::size_t> poly;
        for (std::size_t v : cycle) {
            if (corners.count(v)) poly.push_back(up.source_row[v]);
        }
        if (poly.size() < 3) throw Error("convex hull: facet with fewer than three corners");
        const auto lowest = std::min_element(poly.begin(), poly.end());
        std::rotate(poly.begin(), lowest, poly.end());

        const Vec3 nrm = unit_normal(ts.front());
        HullFacet f;
        f.vertices = std::move(poly);
        f.normal = {nrm[0], nrm[1], nrm[2]};
        f.offset = -std::numeric_limits<double>::infinity();
        for (std::size_t t : ts) {
            for (std::size_t v : tris[t].v) {
                const auto& p = up.pts[v];
                f.offset = std::max(f.offset, dot3(nrm, {p[0], p[1], p[2]}));
            }
        }
        hull.facets.push_back(std::move(f));
    }
    return hull;
}

} // namespace

ConvexHull convex_hull_exact(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw InputError("convex hull: empty point set");
    const std::size_t d = points[0].size();
    if (d != 2 && d != 3) {
        throw InputError("exact convex hull supports 2 or 3 dimensions, got " +
                         std::to_string(d));
    }
    for (const auto& p : points) {
        if (p.size() != d) throw InputError("convex hull: ragged point matrix");
    }
    if (points.size() < d + 1) {
        throw InputError("convex hull in " + std::to_string(d) + "D needs at least " +
                         std::to_string(d + 1) + " points, got " +
                         std::to_string(points.size()));
    }
    const auto up = dedup_points(points);
    if (up.pts.size() < d + 1) {
        throw InputError("convex hull: dimension-deficient input (too few distinct points)");
    }
    return d == 2 ? hull_exact_2d(up) : hull_exact_3d(up);
}

ConvexHull convex_hull_approx(const std::vector<std::vector<double>>& points,
                              std::size_t num_directions, std::uint64_t seed) {
    if (points.empty()) throw InputError("convex hull: empty point set");
    if (num_directions == 0) throw InputError("approximate hull needs at least one direction");
    const std::size_t d = points[0].size();
    for (const auto& p : points) {
        if (p.size() != d) throw InputError("convex hull: ragged point matrix");
    }
    const auto up = dedup_points(points);

    Rng rng(seed);
    std::set<std::size_t> chosen;
    for (std::size_t i = 0; i < num_directions; ++i) {
        const auto dir = rng.unit_direction(d);
        std::size_t best = 0;
        double best_dot = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < up.pts.size(); ++j) {
            double dp = 0.0;
            for (std::size_t k = 0; k < d; ++k) dp += dir[k] * up.pts[j][k];
            if (dp > best_dot) {
                best_dot = dp;
                best = j;
            }
        }
        chosen.insert(up.source_row[best]);
    }

    ConvexHull hull;
    hull.dim = d;
    hull.is_exact = false;
    hull.vertex_indices.assign(chosen.begin(), chosen.end());
    return hull;
}

bool hull_contains(const ConvexHull& hull, std::span<const double> x) {
    if (!hull.is_exact) throw InputError("containment test requires an exact hull");
    if (x.size() != hull.dim) {
        throw InputError("containment test: point has " + std::to_string(x.size()) +
                         " coordinates, hull is " + std::to_string(hull.dim) + "D");
    }
    for (const auto& f : hull.facets) {
        double dp = 0.0;
        for (std::size_t k = 0; k < hull.dim; ++k) dp += f.normal[k] * x[k];
        if (dp > f.offset + 1e-9) return false;
    }
    return true;
}

} // namespace xplain
