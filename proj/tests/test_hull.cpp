#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "xplain/convex_hull.hpp"
#include "xplain/dataset.hpp"
#include "xplain/errors.hpp"
#include "xplain/rng.hpp"

using namespace xplain;

namespace {

std::set<std::size_t> vertex_set(const ConvexHull& h) {
    return {h.vertex_indices.begin(), h.vertex_indices.end()};
}

double polygon_signed_area(const std::vector<std::vector<double>>& pts,
                           const std::vector<std::size_t>& ring) {
    double a = 0.0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
        const auto& p = pts[ring[i]];
        const auto& q = pts[ring[(i + 1) % ring.size()]];
        a += p[0] * q[1] - q[0] * p[1];
    }
    return a / 2.0;
}

std::vector<std::vector<double>> random_cloud(Rng& rng, std::size_t m, std::size_t d,
                                              double spread) {
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> p(d);
        for (auto& v : p) v = spread * rng.gaussian();
        pts.push_back(std::move(p));
    }
    return pts;
}

FeatureSchema survival_schema() {
    FeatureSchema s;
    s.features = {{"age", FeatureKind::Numeric, {}},
                  {"yearOp", FeatureKind::Numeric, {}},
                  {"nodes", FeatureKind::Numeric, {}}};
    s.label_column = "survival";
    s.positive_label = "1";
    s.negative_label = "2";
    return s;
}

} // namespace

TEST_CASE("square hull keeps corners and drops interior and edge points") {
    const std::vector<std::vector<double>> pts = {
        {0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {0.5, 0.0}, {1.0, 0.5}};
    const ConvexHull h = convex_hull_exact(pts);
    CHECK(h.dim == 2);
    CHECK(h.is_exact);
    CHECK(vertex_set(h) == std::set<std::size_t>{0, 1, 2, 3});
    CHECK(polygon_signed_area(pts, h.vertex_indices) == doctest::Approx(1.0));

    REQUIRE(h.facets.size() == 4);
    for (const auto& f : h.facets) {
        REQUIRE(f.vertices.size() == 2);
        const double len = std::hypot(f.normal[0], f.normal[1]);
        CHECK(len == doctest::Approx(1.0));
        for (std::size_t v : h.vertex_indices) {
            CHECK(f.normal[0] * pts[v][0] + f.normal[1] * pts[v][1] <= f.offset + 1e-12);
        }
    }
}

TEST_CASE("coincident rows collapse to the first occurrence") {
    const std::vector<std::vector<double>> pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}, {1, 1}};
    const ConvexHull h = convex_hull_exact(pts);
    CHECK(vertex_set(h) == std::set<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("degenerate 2d inputs are rejected") {
    CHECK_THROWS_AS(convex_hull_exact({}), InputError);
    CHECK_THROWS_AS(convex_hull_exact({{1, 2}, {3, 4}}), InputError);
    CHECK_THROWS_WITH_AS(convex_hull_exact({{0, 0}, {1, 1}, {2, 2}, {3, 3}}),
                         "convex hull: dimension-deficient input (collinear)", InputError);
    CHECK_THROWS_AS(convex_hull_exact({{0, 0}, {0, 0}, {1, 1}, {1, 1}}), InputError);
    CHECK_THROWS_AS(convex_hull_exact({{1}, {2}, {3}}), InputError);
    CHECK_THROWS_AS(convex_hull_exact({{1, 2, 3, 4}, {2, 3, 4, 5}, {0, 1, 0, 1}, {4, 4, 4, 4},
                                       {1, 0, 1, 0}}),
                    InputError);
}

TEST_CASE("cube hull merges coplanar triangles into quads") {
    std::vector<std::vector<double>> pts;
    for (int x = 0; x <= 1; ++x)
        for (int y = 0; y <= 1; ++y)
            for (int z = 0; z <= 1; ++z) pts.push_back({double(x), double(y), double(z)});
    pts.push_back({0.5, 0.5, 0.5});
    pts.push_back({0.5, 0.5, 0.0});
    pts.push_back({0.5, 0.5, 1.0});
    pts.push_back({1.0, 0.5, 0.5});

    const ConvexHull h = convex_hull_exact(pts);
    CHECK(vertex_set(h) == std::set<std::size_t>{0, 1, 2, 3, 4, 5, 6, 7});
    CHECK(std::is_sorted(h.vertex_indices.begin(), h.vertex_indices.end()));
    REQUIRE(h.facets.size() == 6);

    for (const auto& f : h.facets) {
        REQUIRE(f.vertices.size() == 4);
        CHECK(f.vertices[0] == *std::min_element(f.vertices.begin(), f.vertices.end()));

        double len = 0.0;
        int axis = -1;
        for (int c = 0; c < 3; ++c) {
            len += f.normal[c] * f.normal[c];
            if (std::abs(f.normal[c]) > 0.5) axis = c;
        }
        CHECK(len == doctest::Approx(1.0));
        REQUIRE(axis >= 0);
        CHECK((f.offset == doctest::Approx(1.0) || f.offset == doctest::Approx(0.0)));

        // Counterclockwise from outside: the polygon's area normal must agree
        // with the facet normal.
        const auto& a = pts[f.vertices[0]];
        std::vector<double> cross(3, 0.0);
        for (std::size_t i = 1; i + 1 < f.vertices.size(); ++i) {
            const auto& b = pts[f.vertices[i]];
            const auto& c = pts[f.vertices[i + 1]];
            const double u[3] = {b[0] - a[0], b[1] - a[1], b[2] - a[2]};
            const double v[3] = {c[0] - a[0], c[1] - a[1], c[2] - a[2]};
            cross[0] += u[1] * v[2] - u[2] * v[1];
            cross[1] += u[2] * v[0] - u[0] * v[2];
            cross[2] += u[0] * v[1] - u[1] * v[0];
        }
        const double agree =
            cross[0] * f.normal[0] + cross[1] * f.normal[1] + cross[2] * f.normal[2];
        CHECK(agree > 0.0);
    }
}

TEST_CASE("simplex and octahedron facet counts") {
    const ConvexHull tetra =
        convex_hull_exact({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(tetra.vertex_indices.size() == 4);
    CHECK(tetra.facets.size() == 4);

    const ConvexHull octa = convex_hull_exact(
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}, {0, 0, 0}});
    CHECK(octa.vertex_indices.size() == 6);
    CHECK(octa.facets.size() == 8);
}

TEST_CASE("degenerate 3d inputs are rejected") {
    CHECK_THROWS_AS(convex_hull_exact({{0, 0, 0}, {1, 1, 1}, {2, 2, 2}, {3, 3, 3}}), InputError);
    CHECK_THROWS_AS(convex_hull_exact({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {2, 3, 0}}),
                    InputError);
}

TEST_CASE("every source point lies inside its hull") {
    Rng rng(314);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t m = 30 + rng.bounded(100);
        const auto pts = random_cloud(rng, m, 3, 2.0);
        const ConvexHull h = convex_hull_exact(pts);
        for (const auto& p : pts) CHECK(hull_contains(h, p));

        std::vector<double> outside(3, 0.0);
        for (const auto& p : pts) {
            for (int c = 0; c < 3; ++c) outside[c] = std::max(outside[c], std::abs(p[c]));
        }
        for (int c = 0; c < 3; ++c) outside[c] += 1.0;
        CHECK_FALSE(hull_contains(h, outside));
    }
}

TEST_CASE("sampled hull is a deterministic subset of the exact hull") {
    Rng rng(2718);
    for (int trial = 0; trial < 10; ++trial) {
        const auto pts = random_cloud(rng, 80 + rng.bounded(60), 3, 1.5);
        const ConvexHull exact = convex_hull_exact(pts);
        const ConvexHull approx = convex_hull_approx(pts, 128, 555 + trial);
        const ConvexHull again = convex_hull_approx(pts, 128, 555 + trial);

        CHECK_FALSE(approx.is_exact);
        CHECK(approx.facets.empty());
        CHECK(approx.vertex_indices == again.vertex_indices);
        CHECK(std::is_sorted(approx.vertex_indices.begin(), approx.vertex_indices.end()));

        const auto exact_set = vertex_set(exact);
        for (std::size_t v : approx.vertex_indices) CHECK(exact_set.count(v) == 1);
    }
}

TEST_CASE("sampling works in higher dimensions where the exact build refuses") {
    Rng rng(99);
    const auto pts = random_cloud(rng, 60, 5, 1.0);
    const ConvexHull h = convex_hull_approx(pts, 64, 42);
    CHECK(h.dim == 5);
    CHECK(!h.vertex_indices.empty());
    CHECK_THROWS_AS(hull_contains(h, pts[0]), InputError);
}

TEST_CASE("containment validates its inputs") {
    const ConvexHull h = convex_hull_exact({{0, 0}, {4, 0}, {0, 4}});
    CHECK(hull_contains(h, std::vector<double>{1.0, 1.0}));
    CHECK(hull_contains(h, std::vector<double>{0.0, 0.0}));
    CHECK(hull_contains(h, std::vector<double>{2.0, 2.0})); // on the slanted edge
    CHECK_FALSE(hull_contains(h, std::vector<double>{3.0, 3.0}));
    CHECK_THROWS_AS(hull_contains(h, std::vector<double>{1.0, 1.0, 1.0}), InputError);
}

TEST_CASE("survival data: all-points hull has 20 vertices, per-class union 42") {
    const Dataset ds =
        load_dataset(std::string(XPLAIN_DATA_DIR) + "/haberman.csv", survival_schema());

    const ConvexHull all = convex_hull_exact(ds.points);
    CHECK(all.vertex_indices.size() == 20);

    std::size_t union_count = 0;
    for (int label : {0, 1}) {
        std::vector<std::vector<double>> cls;
        for (std::size_t i = 0; i < ds.rows(); ++i) {
            if (ds.labels[i] == label) cls.push_back(ds.points[i]);
        }
        const ConvexHull h = convex_hull_exact(cls);
        CHECK(h.vertex_indices.size() == 21);
        union_count += h.vertex_indices.size();
    }
    CHECK(union_count == 42);
}
