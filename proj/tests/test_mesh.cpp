#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "contrast/mesh.hpp"

using namespace contrast;
namespace {
constexpr double kPi = std::numbers::pi;
const DomainSpec kSymRect{DomainKind::BoundedRectangle, 1.0, -1.0, 1.0};
const DomainSpec kCell{DomainKind::Waveguide, 1.0, -1.0, 1.0};
}  // namespace

TEST_CASE("no shells gives a structured matrix-only mesh") {
    const DomainSpec square{DomainKind::BoundedRectangle, 1.0, -0.5, 0.5};
    const Mesh m = build_mesh(square, {}, 0.1, 2);
    CHECK(m.triangles.size() == 200);  // 10 x 10 cells, 2 triangles each
    for (const auto& t : m.triangles) CHECK(t.region == Region::Matrix);
    for (const auto& e : m.boundary) CHECK(e.tag == BoundaryTag::Dirichlet);
    validate_mesh(m, {});
    const auto q = mesh_quality(m);
    CHECK(q.total_area == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.min_angle_deg >= 44.9);
}

TEST_CASE("one shell: annulus area within 2% of the circle formula") {
    ShellGeometry g;
    g.centers_x = {0.0};
    g.eps = 0.5;
    g.r_outer = 0.125;          // R = 1/4
    g.thickness = 1.0 / 32.0;   // d_eps
    const Mesh m = build_mesh(kSymRect, g, 0.5 / 4.0, 2);
    validate_mesh(m, g);

    const auto q = mesh_quality(m);
    const double exact = kPi * (g.r_outer * g.r_outer - g.r_inner() * g.r_inner());
    CHECK(std::abs(q.shell_area - exact) / exact < 0.02);
    const double ball_exact = kPi * g.r_inner() * g.r_inner();
    CHECK(std::abs(q.ball_area - ball_exact) / ball_exact < 0.02);
    CHECK(q.total_area == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(q.min_angle_deg >= 15.0);
}

TEST_CASE("halving h roughly quadruples the triangle count") {
    ShellGeometry g;
    g.centers_x = {0.0};
    g.eps = 0.5;
    g.r_outer = 0.125;
    g.thickness = 1.0 / 32.0;
    const auto n1 = build_mesh(kSymRect, g, 0.125, 2).triangles.size();
    const auto n2 = build_mesh(kSymRect, g, 0.0625, 2).triangles.size();
    const double ratio = static_cast<double>(n2) / n1;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
}

TEST_CASE("geometric feasibility guards") {
    ShellGeometry g;
    g.centers_x = {0.0};
    g.eps = 0.5;
    g.r_outer = 0.125;
    g.thickness = 1e-9 * 0.5;  // below the 1e-8 * eps floor
    CHECK_THROWS_AS(build_mesh(kSymRect, g, 0.125, 2), GeometryError);
    g.thickness = 1.0 / 32.0;
    CHECK_THROWS_AS(build_mesh(kSymRect, g, 0.2, 2), std::invalid_argument);  // h > eps/4
    CHECK_THROWS_AS(build_mesh(kSymRect, g, 0.125, 1), std::invalid_argument);
}

TEST_CASE("admissible shell layout") {
    const auto p = canonical_params(5.0, 1.0, kSymRect);
    CHECK(shells_for(p, 0.25).centers_x.size() == 3);
    CHECK(shells_for(p, 0.125).centers_x.size() == 7);
    CHECK(shells_for(p, 0.0625).centers_x.size() == 15);

    // shallow strip: vertical margin excludes every center
    auto shallow = p;
    shallow.domain.d_minus = -0.05;
    CHECK(shells_for(shallow, 0.25).centers_x.empty());

    auto wg = canonical_params(5.0, 1.0, kCell);
    CHECK(shells_for(wg, 0.125).centers_x.size() == 8);
    CHECK(shells_for(wg, 0.125).centers_x.front() == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK_THROWS_AS(shells_for(wg, 0.3), std::invalid_argument);  // 1/eps not integral
}

TEST_CASE("waveguide cell mesh carries left/right tags and min angle bound") {
    const auto p = canonical_params(5.0, 1.0, kCell);
    const double eps = 0.125;
    const auto g = shells_for(p, eps);
    const Mesh m = build_mesh(kCell, g, eps / 8.0, 2);
    validate_mesh(m, g);
    CHECK(mesh_quality(m).min_angle_deg >= 15.0);

    int left = 0, right = 0, dirichlet = 0;
    for (const auto& e : m.boundary) {
        if (e.tag == BoundaryTag::Left) ++left;
        if (e.tag == BoundaryTag::Right) ++right;
        if (e.tag == BoundaryTag::Dirichlet) ++dirichlet;
    }
    CHECK(left > 0);
    CHECK(left == right);
    CHECK(dirichlet > 0);
}

TEST_CASE("rectangle lattice mesh at eps = 1/8 validates") {
    const auto p = canonical_params(5.0, 1.0, kSymRect);
    const double eps = 0.125;
    const auto g = shells_for(p, eps);
    const Mesh m = build_mesh(kSymRect, g, eps / 8.0, 2);
    validate_mesh(m, g);
    CHECK(mesh_quality(m).total_area == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("mesh text round trip") {
    ShellGeometry g;
    g.centers_x = {0.0};
    g.eps = 0.5;
    g.r_outer = 0.125;
    g.thickness = 1.0 / 32.0;
    const Mesh m = build_mesh(kSymRect, g, 0.125, 2);
    const Mesh m2 = read_mesh_text(write_mesh_text(m));
    REQUIRE(m2.vertices.size() == m.vertices.size());
    REQUIRE(m2.triangles.size() == m.triangles.size());
    REQUIRE(m2.boundary.size() == m.boundary.size());
    for (std::size_t i = 0; i < m.vertices.size(); ++i) {
        CHECK(m2.vertices[i].x == m.vertices[i].x);
        CHECK(m2.vertices[i].y == m.vertices[i].y);
    }
    for (std::size_t i = 0; i < m.triangles.size(); ++i) {
        CHECK(m2.triangles[i].v == m.triangles[i].v);
        CHECK(m2.triangles[i].region == m.triangles[i].region);
    }
    CHECK_THROWS_AS(read_mesh_text("bogus"), GeometryError);
}
