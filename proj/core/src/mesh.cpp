#include "contrast/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <unordered_map>

namespace contrast {

namespace {

constexpr double kPi = std::numbers::pi;

double tri_area2(const Vec2& a, const Vec2& b, const Vec2& c) {
    return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Vertex pool with tolerance-based dedup on a hash grid. Coordinates of
// shared block boundaries are computed canonically, so matches land well
// inside the tolerance.
class Builder {
  public:
    explicit Builder(double tol) : tol_(tol) {}

    int add_vertex(double x, double y) {
        const long ix = static_cast<long>(std::llround(x / tol_));
        const long iy = static_cast<long>(std::llround(y / tol_));
        for (long dx = -1; dx <= 1; ++dx)
            for (long dy = -1; dy <= 1; ++dy) {
                auto it = grid_.find(key(ix + dx, iy + dy));
                if (it == grid_.end()) continue;
                for (int id : it->second) {
                    if (std::abs(mesh_.vertices[id].x - x) <= tol_ &&
                        std::abs(mesh_.vertices[id].y - y) <= tol_)
                        return id;
                }
            }
        const int id = static_cast<int>(mesh_.vertices.size());
        mesh_.vertices.push_back({x, y});
        grid_[key(ix, iy)].push_back(id);
        return id;
    }

    void add_triangle(int a, int b, int c, Region reg) {
        double s = tri_area2(mesh_.vertices[a], mesh_.vertices[b], mesh_.vertices[c]);
        if (s < 0.0) {
            std::swap(b, c);
            s = -s;
        }
        if (s == 0.0) throw GeometryError("mesh builder: degenerate triangle");
        mesh_.triangles.push_back({{a, b, c}, reg});
    }

    Mesh& mesh() { return mesh_; }

  private:
    static std::uint64_t key(long ix, long iy) {
        return static_cast<std::uint64_t>(ix) * 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(iy);
    }
    double tol_;
    Mesh mesh_;
    std::unordered_map<std::uint64_t, std::vector<int>> grid_;
};

// Unit directions for n rays (n a multiple of 8), built from the first
// octant and extended by exact reflections so that symmetric rays carry
// bit-identical components.
std::vector<Vec2> direction_table(int n) {
    std::vector<Vec2> dir(n);
    const int oct = n / 8;
    for (int k = 0; k <= oct; ++k) {
        const double c = std::cos(2.0 * kPi * k / n);
        const double s = std::sin(2.0 * kPi * k / n);
        dir[k] = {c, s};
        dir[(n / 4 - k) % n] = {s, c};
        dir[(n / 4 + k) % n] = {-s, c};
        dir[(n / 2 - k) % n] = {-c, s};
        dir[(n / 2 + k) % n] = {-c, -s};
        dir[(3 * n / 4 - k) % n] = {-s, -c};
        dir[(3 * n / 4 + k) % n] = {s, -c};
        dir[(n - k) % n] = {c, -s};
    }
    return dir;
}

int pow2_at_least(double v) {
    int n = 8;
    while (n < v) n *= 2;
    return n;
}

struct SquarePerimeter {
    std::vector<Vec2> points;  // one per ray
    std::vector<double> rho;   // distance from center along the ray
};

// Point where ray k leaves the square of half-width s around (cx, 0);
// vertical-edge y values and horizontal-edge x offsets are computed from
// direction ratios only, identical across squares.
SquarePerimeter square_perimeter(double cx, double s, const std::vector<Vec2>& dir) {
    SquarePerimeter out;
    const int n = static_cast<int>(dir.size());
    out.points.resize(n);
    out.rho.resize(n);
    for (int k = 0; k < n; ++k) {
        const double c = dir[k].x, sn = dir[k].y;
        if (std::abs(c) >= std::abs(sn)) {
            const double t = sn / std::abs(c);
            out.points[k] = {c > 0.0 ? cx + s : cx - s, s * t};
            out.rho[k] = s / std::abs(c);
        } else {
            const double t = c / std::abs(sn);
            out.points[k] = {cx + s * t, sn > 0.0 ? s : -s};
            out.rho[k] = s / std::abs(sn);
        }
    }
    return out;
}

std::vector<int> add_ring(Builder& b, double cx, double r, const std::vector<Vec2>& dir, int count) {
    const int stride = static_cast<int>(dir.size()) / count;
    std::vector<int> ids(count);
    for (int k = 0; k < count; ++k) {
        const Vec2& d = dir[k * stride];
        ids[k] = b.add_vertex(cx + r * d.x, r * d.y);
    }
    return ids;
}

void connect_rings_same(Builder& b, const std::vector<int>& inner, const std::vector<int>& outer,
                        Region reg) {
    const int n = static_cast<int>(inner.size());
    for (int k = 0; k < n; ++k) {
        const int k1 = (k + 1) % n;
        b.add_triangle(inner[k], outer[k], outer[k1], reg);
        b.add_triangle(inner[k], outer[k1], inner[k1], reg);
    }
}

// outer has twice the nodes of inner; aligned by shared direction strides
void connect_rings_halved(Builder& b, const std::vector<int>& inner, const std::vector<int>& outer,
                          Region reg) {
    const int m = static_cast<int>(inner.size());
    for (int j = 0; j < m; ++j) {
        const int j1 = (j + 1) % m;
        b.add_triangle(inner[j], outer[2 * j], outer[(2 * j + 1) % (2 * m)], reg);
        b.add_triangle(inner[j], outer[(2 * j + 1) % (2 * m)], inner[j1], reg);
        b.add_triangle(inner[j1], outer[(2 * j + 1) % (2 * m)], outer[(2 * j + 2) % (2 * m)], reg);
    }
}

// Structured disk: rings shrinking inward from `rim` (radius r_rim, n_seg
// nodes), node count halving so the element size stays near the rim spacing,
// closed by a center fan once the radius is comparable to that spacing.
void mesh_disk(Builder& b, double cx, double r_rim, const std::vector<Vec2>& dir,
               const std::vector<int>& rim) {
    std::vector<int> cur = rim;
    double r = r_rim;
    int n = static_cast<int>(rim.size());
    const double delta0 = 2.0 * kPi * r_rim / n;  // reference spacing
    while (true) {
        const double spacing = 2.0 * kPi * r / n;
        const double r_next = r - 0.9 * std::min(spacing, 1.2 * delta0);
        if (r_next <= 0.85 * delta0) break;
        int n_next = n;
        if (n > 8 && 2.0 * kPi * r_next / n < 0.6 * delta0) n_next = n / 2;
        const auto ring = add_ring(b, cx, r_next, dir, n_next);
        if (n_next == n)
            connect_rings_same(b, ring, cur, Region::Ball);
        else
            connect_rings_halved(b, ring, cur, Region::Ball);
        cur = ring;
        r = r_next;
        n = n_next;
    }
    const int center = b.add_vertex(cx, 0.0);
    for (int k = 0; k < n; ++k) b.add_triangle(center, cur[k], cur[(k + 1) % n], Region::Ball);
}

// Tensor block of triangles over sorted grid lines; diagonal alternates.
void mesh_tensor(Builder& b, const std::vector<double>& xs, const std::vector<double>& ys,
                 Region reg) {
    if (xs.size() < 2 || ys.size() < 2) return;
    std::vector<std::vector<int>> ids(xs.size(), std::vector<int>(ys.size()));
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < ys.size(); ++j) ids[i][j] = b.add_vertex(xs[i], ys[j]);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
        for (std::size_t j = 0; j + 1 < ys.size(); ++j) {
            const int v00 = ids[i][j], v10 = ids[i + 1][j];
            const int v01 = ids[i][j + 1], v11 = ids[i + 1][j + 1];
            if ((i + j) % 2 == 0) {
                b.add_triangle(v00, v10, v11, reg);
                b.add_triangle(v00, v11, v01, reg);
            } else {
                b.add_triangle(v10, v11, v01, reg);
                b.add_triangle(v10, v01, v00, reg);
            }
        }
}

std::vector<double> uniform_lines(double a, double bnd, double h) {
    const int count = std::max(1, static_cast<int>(std::ceil((bnd - a) / h - 1e-12)));
    std::vector<double> xs(count + 1);
    for (int i = 0; i <= count; ++i) xs[i] = a + (bnd - a) * i / count;
    xs.front() = a;
    xs.back() = bnd;
    return xs;
}

std::vector<double> dedup_sorted(std::vector<double> v, double tol) {
    std::sort(v.begin(), v.end());
    std::vector<double> out;
    for (double x : v)
        if (out.empty() || x - out.back() > tol) out.push_back(x);
    return out;
}

void extract_boundary(Mesh& m, DomainKind kind, double tol) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : m.triangles)
        for (int e = 0; e < 3; ++e) {
            int a = t.v[e], b = t.v[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    m.boundary.clear();
    for (const auto& [edge, count] : edge_count) {
        if (count == 1) {
            const Vec2& pa = m.vertices[edge.first];
            const Vec2& pb = m.vertices[edge.second];
            BoundaryTag tag;
            if (std::abs(pa.y - m.y0) <= tol && std::abs(pb.y - m.y0) <= tol)
                tag = BoundaryTag::Dirichlet;
            else if (std::abs(pa.y - m.y1) <= tol && std::abs(pb.y - m.y1) <= tol)
                tag = BoundaryTag::Dirichlet;
            else if (std::abs(pa.x - m.x0) <= tol && std::abs(pb.x - m.x0) <= tol)
                tag = kind == DomainKind::Waveguide ? BoundaryTag::Left : BoundaryTag::Dirichlet;
            else if (std::abs(pa.x - m.x1) <= tol && std::abs(pb.x - m.x1) <= tol)
                tag = kind == DomainKind::Waveguide ? BoundaryTag::Right : BoundaryTag::Dirichlet;
            else
                throw GeometryError("mesh: once-used edge away from the domain boundary");
            m.boundary.push_back({{edge.first, edge.second}, tag});
        } else if (count > 2) {
            throw GeometryError("mesh: non-manifold edge");
        }
    }
}

}  // namespace

ShellGeometry shells_for(const ModelParams& p, double eps) {
    if (eps <= 0.0) throw std::invalid_argument("shells_for: eps > 0 required");
    ShellGeometry g;
    g.eps = eps;
    g.r_outer = p.R * eps;
    g.thickness = p.d_law(eps);

    const double margin = 0.5 * eps * std::sqrt(static_cast<double>(p.n));
    const DomainSpec& d = p.domain;
    if (d.kind == DomainKind::BoundedRectangle) {
        if (std::min(-d.d_minus, d.d_plus) >= margin - 1e-12 * eps) {
            const double reach = 0.5 * d.L_x - margin;
            if (reach >= -1e-12 * eps) {
                const int imax = static_cast<int>(std::floor(reach / eps + 1e-12));
                for (int i = -imax; i <= imax; ++i) g.centers_x.push_back(i * eps);
            }
        }
    } else {
        const double inv = 1.0 / eps;
        const long n_cells = std::lround(inv);
        if (std::abs(inv - static_cast<double>(n_cells)) > 1e-9 || n_cells < 1)
            throw std::invalid_argument("shells_for: waveguide cell requires integer 1/eps");
        for (long i = 0; i < n_cells; ++i)
            g.centers_x.push_back((static_cast<double>(i) + 0.5) * eps);
    }
    return g;
}

Mesh build_mesh(const DomainSpec& domain, const ShellGeometry& shells, double h, int shell_layers) {
    if (!(h > 0.0)) throw std::invalid_argument("build_mesh: h > 0 required");
    const double x0 = domain.kind == DomainKind::Waveguide ? 0.0 : -0.5 * domain.L_x;
    const double x1 = domain.kind == DomainKind::Waveguide ? 1.0 : 0.5 * domain.L_x;
    const double y0 = domain.d_minus, y1 = domain.d_plus;
    const double extent = std::max(x1 - x0, y1 - y0);

    double tol = 1e-9 * extent;
    if (!shells.centers_x.empty())
        tol = std::min(tol, 0.2 * shells.thickness / shell_layers);
    Builder b(tol);
    Mesh& m = b.mesh();
    m.x0 = x0;
    m.x1 = x1;
    m.y0 = y0;
    m.y1 = y1;

    if (shells.centers_x.empty()) {
        mesh_tensor(b, uniform_lines(x0, x1, h), uniform_lines(y0, y1, h), Region::Matrix);
        extract_boundary(m, domain.kind, 1e-9 * extent);
        return m;
    }

    const double eps = shells.eps;
    const double r_out = shells.r_outer;
    const double r_in = shells.r_inner();
    const double s = 0.5 * eps;

    if (h > eps / 4.0 + 1e-12) throw std::invalid_argument("build_mesh: h <= eps/4 required");
    if (shell_layers < 2) throw std::invalid_argument("build_mesh: shell_layers >= 2 required");
    if (shells.thickness < 1e-8 * eps)
        throw GeometryError("build_mesh: shell thinner than 1e-8*eps is outside the meshed regime");
    if (!(r_in > 0.0)) throw GeometryError("build_mesh: shell thickness exceeds its radius");
    if (!(2.0 * r_out < eps)) throw GeometryError("build_mesh: shells overlap their lattice cells");
    if (s > std::min(-y0, y1) + 1e-12)
        throw GeometryError("build_mesh: lattice squares do not fit the strip height");

    // segment count: resolve the circle at O(h), keep shell elements within
    // a 3:1 aspect ratio, and keep square-edge spacing near h
    double need = std::max({32.0, std::ceil(2.0 * kPi * r_out / h),
                            std::ceil(2.0 * kPi * r_out * shell_layers / (3.0 * shells.thickness)),
                            std::ceil(kPi * eps / (2.0 * h))});
    const int n_seg = pow2_at_least(need);
    if (n_seg > 4096)
        throw GeometryError("build_mesh: shell demands more than 4096 segments; thinner shells are out of scope");
    const auto dir = direction_table(n_seg);

    // blend ring fractions, geometric growth from the circle outward
    std::vector<double> blend_fracs;
    {
        const double gap = s - r_out;
        double step = std::min(2.0 * kPi * r_out / n_seg, gap);
        double acc = 0.0;
        std::vector<double> cum;
        while (acc < gap - 1e-12 * eps) {
            acc = std::min(gap, acc + step);
            cum.push_back(acc);
            step *= 1.35;
        }
        for (double c : cum) blend_fracs.push_back(c / acc);
        blend_fracs.back() = 1.0;
    }

    std::vector<double> top_xs{x0, x1};
    std::vector<double> strip_ys;

    for (std::size_t ci = 0; ci < shells.centers_x.size(); ++ci) {
        const double cx = shells.centers_x[ci];
        const auto per = square_perimeter(cx, s, dir);

        // ball rim and interior
        const auto rim = add_ring(b, cx, r_in, dir, n_seg);
        mesh_disk(b, cx, r_in, dir, rim);

        // shell layers
        std::vector<int> prev = rim;
        for (int l = 1; l <= shell_layers; ++l) {
            const double r = r_in + shells.thickness * l / shell_layers;
            const auto ring = add_ring(b, cx, l == shell_layers ? r_out : r, dir, n_seg);
            connect_rings_same(b, prev, ring, Region::Shell);
            prev = ring;
        }

        // circle-to-square blend
        for (std::size_t j = 0; j < blend_fracs.size(); ++j) {
            std::vector<int> ring(n_seg);
            if (blend_fracs[j] == 1.0) {
                for (int k = 0; k < n_seg; ++k)
                    ring[k] = b.add_vertex(per.points[k].x, per.points[k].y);
            } else {
                for (int k = 0; k < n_seg; ++k) {
                    const double r = r_out + blend_fracs[j] * (per.rho[k] - r_out);
                    ring[k] = b.add_vertex(cx + r * dir[k].x, r * dir[k].y);
                }
            }
            connect_rings_same(b, prev, ring, Region::Matrix);
            prev = ring;
        }

        // collect stitching lines
        for (int k = 0; k < n_seg; ++k) {
            if (std::abs(per.points[k].y - s) <= tol) top_xs.push_back(per.points[k].x);
            if (ci == 0 && std::abs(per.points[k].x - (cx - s)) <= tol)
                strip_ys.push_back(per.points[k].y);
        }
        top_xs.push_back(cx - s);
        top_xs.push_back(cx + s);
        if (ci == 0) {
            strip_ys.push_back(-s);
            strip_ys.push_back(s);
        }
    }

    // side strips (bounded rectangle only; the waveguide squares tile x fully)
    const double sq_lo = shells.centers_x.front() - s;
    const double sq_hi = shells.centers_x.back() + s;
    strip_ys = dedup_sorted(strip_ys, tol);
    if (sq_lo - x0 > tol) {
        auto xs = uniform_lines(x0, sq_lo, h);
        mesh_tensor(b, xs, strip_ys, Region::Matrix);
        top_xs.insert(top_xs.end(), xs.begin(), xs.end());
    }
    if (x1 - sq_hi > tol) {
        auto xs = uniform_lines(sq_hi, x1, h);
        mesh_tensor(b, xs, strip_ys, Region::Matrix);
        top_xs.insert(top_xs.end(), xs.begin(), xs.end());
    }

    // bands above and below the lattice row
    top_xs = dedup_sorted(top_xs, tol);
    if (y1 - s > tol) mesh_tensor(b, top_xs, uniform_lines(s, y1, h), Region::Matrix);
    if (-s - y0 > tol) mesh_tensor(b, top_xs, uniform_lines(y0, -s, h), Region::Matrix);

    extract_boundary(m, domain.kind, 1e-9 * extent);
    return m;
}

MeshQuality mesh_quality(const Mesh& m) {
    MeshQuality q;
    q.min_angle_deg = 180.0;
    for (const auto& t : m.triangles) {
        const Vec2& a = m.vertices[t.v[0]];
        const Vec2& b = m.vertices[t.v[1]];
        const Vec2& c = m.vertices[t.v[2]];
        const double area = 0.5 * tri_area2(a, b, c);
        q.total_area += area;
        switch (t.region) {
            case Region::Matrix: q.matrix_area += area; break;
            case Region::Shell: q.shell_area += area; break;
            case Region::Ball: q.ball_area += area; break;
        }
        const double la = std::hypot(b.x - c.x, b.y - c.y);
        const double lb = std::hypot(a.x - c.x, a.y - c.y);
        const double lc = std::hypot(a.x - b.x, a.y - b.y);
        const double angA = std::acos(std::clamp((lb * lb + lc * lc - la * la) / (2 * lb * lc), -1.0, 1.0));
        const double angB = std::acos(std::clamp((la * la + lc * lc - lb * lb) / (2 * la * lc), -1.0, 1.0));
        const double angC = kPi - angA - angB;
        const double mn = std::min({angA, angB, angC}) * 180.0 / kPi;
        q.min_angle_deg = std::min(q.min_angle_deg, mn);
    }
    return q;
}

void validate_mesh(const Mesh& m, const ShellGeometry& shells) {
    std::map<std::pair<int, int>, int> edge_count;
    for (const auto& t : m.triangles) {
        if (tri_area2(m.vertices[t.v[0]], m.vertices[t.v[1]], m.vertices[t.v[2]]) <= 0.0)
            throw GeometryError("validate_mesh: non-positive triangle");
        for (int e = 0; e < 3; ++e) {
            int a = t.v[e], b = t.v[(e + 1) % 3];
            if (a > b) std::swap(a, b);
            ++edge_count[{a, b}];
        }
    }
    std::size_t once = 0;
    for (const auto& [edge, count] : edge_count) {
        if (count > 2) throw GeometryError("validate_mesh: non-manifold edge");
        if (count == 1) ++once;
    }
    if (once != m.boundary.size()) throw GeometryError("validate_mesh: boundary does not close");

    const auto q = mesh_quality(m);
    if (q.min_angle_deg < 15.0) throw GeometryError("validate_mesh: minimum angle below 15 degrees");

    // region tags against the circles, with polygonal slack
    const double slack = 0.015;
    for (const auto& t : m.triangles) {
        const Vec2& a = m.vertices[t.v[0]];
        const Vec2& b = m.vertices[t.v[1]];
        const Vec2& c = m.vertices[t.v[2]];
        const Vec2 cen{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
        double dist = std::numeric_limits<double>::infinity();
        for (double cx : shells.centers_x)
            dist = std::min(dist, std::hypot(cen.x - cx, cen.y));
        Region expected;
        if (shells.centers_x.empty() || dist >= shells.r_outer * (1.0 + slack))
            expected = Region::Matrix;
        else if (dist <= shells.r_inner() * (1.0 - slack))
            expected = Region::Ball;
        else if (dist >= shells.r_inner() * (1.0 + slack) && dist <= shells.r_outer * (1.0 - slack))
            expected = Region::Shell;
        else
            continue;  // inside the polygonal ambiguity band
        if (t.region != expected) throw GeometryError("validate_mesh: region tag mismatch");
    }
}

std::string write_mesh_text(const Mesh& m) {
    std::ostringstream out;
    out << "contrast-mesh v1\n";
    out << m.vertices.size() << " " << m.triangles.size() << " " << m.boundary.size() << "\n";
    char buf[80];
    for (const auto& v : m.vertices) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", v.x, v.y);
        out << buf;
    }
    for (const auto& t : m.triangles)
        out << t.v[0] << " " << t.v[1] << " " << t.v[2] << " " << static_cast<int>(t.region) << "\n";
    for (const auto& e : m.boundary)
        out << e.v[0] << " " << e.v[1] << " " << static_cast<int>(e.tag) << "\n";
    return out.str();
}

Mesh read_mesh_text(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    if (header != "contrast-mesh v1") throw GeometryError("read_mesh_text: bad header");
    std::size_t nv = 0, nt = 0, nb = 0;
    in >> nv >> nt >> nb;
    if (!in) throw GeometryError("read_mesh_text: bad counts");
    Mesh m;
    m.vertices.resize(nv);
    for (auto& v : m.vertices) in >> v.x >> v.y;
    m.triangles.resize(nt);
    for (auto& t : m.triangles) {
        int reg;
        in >> t.v[0] >> t.v[1] >> t.v[2] >> reg;
        t.region = static_cast<Region>(reg);
    }
    m.boundary.resize(nb);
    for (auto& e : m.boundary) {
        int tag;
        in >> e.v[0] >> e.v[1] >> tag;
        e.tag = static_cast<BoundaryTag>(tag);
    }
    if (!in) throw GeometryError("read_mesh_text: truncated file");
    m.x0 = m.x1 = m.vertices.empty() ? 0.0 : m.vertices[0].x;
    m.y0 = m.y1 = m.vertices.empty() ? 0.0 : m.vertices[0].y;
    for (const auto& v : m.vertices) {
        m.x0 = std::min(m.x0, v.x);
        m.x1 = std::max(m.x1, v.x);
        m.y0 = std::min(m.y0, v.y);
        m.y1 = std::max(m.y1, v.y);
    }
    return m;
}

void save_mesh(const Mesh& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw GeometryError("save_mesh: cannot write " + path);
    out << write_mesh_text(m);
}

Mesh load_mesh(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GeometryError("load_mesh: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return read_mesh_text(ss.str());
}

}  // namespace contrast
