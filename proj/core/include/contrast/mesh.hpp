#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "contrast/params.hpp"

namespace contrast {

enum class Region : std::uint8_t { Matrix = 0, Shell = 1, Ball = 2 };
enum class BoundaryTag : std::uint8_t { Dirichlet = 0, Left = 1, Right = 2 };

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Triangle {
    std::array<int, 3> v{};
    Region region = Region::Matrix;
};

struct BoundaryEdge {
    std::array<int, 2> v{};
    BoundaryTag tag = BoundaryTag::Dirichlet;
};

/// Conforming triangle mesh with region tags (matrix / shell / ball) and
/// tagged boundary edges. Interface circles are approximated by inscribed
/// polygons whose segment count scales with 1/h.
struct Mesh {
    std::vector<Vec2> vertices;
    std::vector<Triangle> triangles;
    std::vector<BoundaryEdge> boundary;
    double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;  // bounding rectangle
};

/// Concentric interface circles centered on the interface line y = 0.
struct ShellGeometry {
    std::vector<double> centers_x;
    double r_outer = 0.0;   // R_eps = R * eps
    double thickness = 0.0; // d_eps
    double eps = 0.0;       // lattice period
    double r_inner() const { return r_outer - thickness; }
};

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MeshQuality {
    double min_angle_deg = 0.0;
    double total_area = 0.0;
    double matrix_area = 0.0;
    double shell_area = 0.0;
    double ball_area = 0.0;
};

/// Admissible shell layout for the given eps: rectangle centers (i eps, 0)
/// with margin eps sqrt(n)/2 to the boundary (ties included); waveguide cell
/// centers (i eps + eps/2, 0), i = 0 .. 1/eps - 1, requiring integer 1/eps.
ShellGeometry shells_for(const ModelParams& p, double eps);

/// Interface-fitted mesh: structured disk + radial shell layers + a blended
/// octagonal transition inside each lattice square, tensor-grid bands
/// elsewhere. Requires h <= eps/4 and shell_layers >= 2 when shells exist.
Mesh build_mesh(const DomainSpec& domain, const ShellGeometry& shells, double h, int shell_layers);

MeshQuality mesh_quality(const Mesh& m);

/// Checks conformity, orientation, tag consistency against the circles and
/// the minimum-angle bound; throws GeometryError on violation.
void validate_mesh(const Mesh& m, const ShellGeometry& shells);

/// Plain-text mesh format, header "contrast-mesh v1".
std::string write_mesh_text(const Mesh& m);
Mesh read_mesh_text(const std::string& text);
void save_mesh(const Mesh& m, const std::string& path);
Mesh load_mesh(const std::string& path);

}  // namespace contrast
