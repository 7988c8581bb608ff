#include "hhk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "hhk/errors.hpp"

namespace hhk {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& field, std::size_t line) {
    const char* begin = field.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0') {
        throw IoError("scan csv line " + std::to_string(line) + ": bad number '" + field + "'");
    }
    return v;
}

Json real(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
}

Json vec_json(const Vec3& v) { return Json::array({real(v.x()), real(v.y()), real(v.z())}); }

}  // namespace

// --------------------------------------------------------------------- CSV

void write_scan_csv(std::ostream& os, const std::vector<ScanSample>& rows) {
    os << kScanCsvHeader << '\n';
    for (const ScanSample& s : rows) {
        os << fmt17(s.x) << ',' << fmt17(s.y) << ',' << s.sheet << ',' << fmt17(s.z) << ','
           << fmt17(s.K) << ',' << fmt17(s.r1) << ',' << fmt17(s.r2) << ',' << fmt17(s.Rh) << ','
           << fmt17(s.boundary_distance) << '\n';
    }
}

std::vector<ScanSample> read_scan_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kScanCsvHeader) {
        throw IoError("scan csv: missing or unexpected header");
    }
    std::vector<ScanSample> rows;
    std::size_t line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (fields.size() != 9) {
            throw IoError("scan csv line " + std::to_string(line_no) + ": expected 9 fields");
        }
        ScanSample s;
        s.x = parse_real(fields[0], line_no);
        s.y = parse_real(fields[1], line_no);
        const double sheet = parse_real(fields[2], line_no);
        if (sheet != 1.0 && sheet != -1.0) {
            throw IoError("scan csv line " + std::to_string(line_no) + ": sheet must be 1 or -1");
        }
        s.sheet = static_cast<int>(sheet);
        s.z = parse_real(fields[3], line_no);
        s.K = parse_real(fields[4], line_no);
        s.r1 = parse_real(fields[5], line_no);
        s.r2 = parse_real(fields[6], line_no);
        s.Rh = parse_real(fields[7], line_no);
        s.boundary_distance = parse_real(fields[8], line_no);
        rows.push_back(s);
    }
    return rows;
}

// -------------------------------------------------------------------- JSON

Json to_json(const Interval& v) {
    if (v.is_empty()) return nullptr;
    return Json::array({real(v.lo()), real(v.hi())});
}

Json to_json(const IntervalBox& b) {
    return Json{{"xlo", real(b.xlo())}, {"xhi", real(b.xhi())}, {"ylo", real(b.ylo())},
                {"yhi", real(b.yhi())}, {"depth", b.depth}};
}

Json to_json(const ScanSample& s) {
    return Json{{"x", real(s.x)},   {"y", real(s.y)},   {"sheet", s.sheet}, {"z", real(s.z)},
                {"K", real(s.K)},   {"r1", real(s.r1)}, {"r2", real(s.r2)}, {"Rh", real(s.Rh)},
                {"boundary_distance", real(s.boundary_distance)}};
}

Json to_json(const ScanReport& r) {
    Json j{{"quantity", r.quantity},
           {"resolution", r.resolution},
           {"margin", real(r.margin)},
           {"t", real(r.t)},
           {"samples", r.samples},
           {"min", real(r.min_value)},
           {"max", real(r.max_value)},
           {"violation_count", r.violation_count},
           {"near_singular", r.near_singular},
           {"seconds", r.seconds}};
    if (r.has_radii) {
        j["radii"] = Json{{"min_r1", real(r.min_r1)}, {"max_r1", real(r.max_r1)},
                          {"min_r2", real(r.min_r2)}, {"max_r2", real(r.max_r2)},
                          {"min_Rh", real(r.min_Rh)}, {"max_Rh", real(r.max_Rh)},
                          {"max_reciprocal_error", real(r.max_reciprocal_error)}};
    }
    Json rows = Json::array();
    for (const ScanSample& s : r.violations) rows.push_back(to_json(s));
    j["violations"] = std::move(rows);
    return j;
}

Json to_json(const SignCertificate& c) {
    Json worst = to_json(c.worst_box);
    worst["enclosure"] = to_json(c.worst_enclosure);
    Json contacts = Json::array();
    for (const auto& b : c.contact_boxes) contacts.push_back(to_json(b));
    Json residual = Json::array();
    for (const auto& b : c.residual_boxes) residual.push_back(to_json(b));
    return Json{{"expr", c.expr},
                {"region", c.region},
                {"sign", to_string(c.claim)},
                {"verdict", to_string(c.verdict)},
                {"boxes", c.boxes_processed},
                {"depth", Json{{"max", c.max_depth}, {"reached", c.max_depth_reached}}},
                {"budget", c.budget},
                {"worst_box", std::move(worst)},
                {"bounds", to_json(c.bounds)},
                {"discharged", c.discharged},
                {"excluded", c.excluded},
                {"undischarged", c.undischarged},
                {"pending", c.pending},
                {"contact", Json{{"count", c.contact_count},
                                 {"max_boundary_distance", real(c.max_contact_boundary_distance)},
                                 {"boxes", std::move(contacts)}}},
                {"residual_boxes", std::move(residual)},
                {"seconds", c.seconds}};
}

Json to_json(const SingularSetReport& r) {
    Json limits = Json::array();
    for (const BoundaryLimit& l : r.limits) {
        limits.push_back(Json{{"theta", real(l.theta)},
                              {"point", Json::array({real(l.point.x()), real(l.point.y())})},
                              {"sheet", l.sheet},
                              {"normal", vec_json(l.normal)},
                              {"semicircle_distance", real(l.semicircle_distance)},
                              {"levels", l.used_levels}});
    }
    return Json{{"t", real(r.t)},
                {"n_boundary", r.n_boundary},
                {"max_distance", real(r.max_distance)},
                {"mean_distance", real(r.mean_distance)},
                {"max_abs_z", real(r.max_abs_z)},
                {"max_equator_error", real(r.max_equator_error)},
                {"median_equator_error", real(r.median_equator_error)},
                {"limits", std::move(limits)}};
}

Json to_json(const CuspFanReport& r) {
    Json levels = Json::array();
    for (const CuspFanLevel& l : r.levels) {
        levels.push_back(Json{{"gap", real(l.gap)},
                              {"max_distance", real(l.max_distance)},
                              {"min_abs_z", real(l.min_abs_z)},
                              {"max_abs_z", real(l.max_abs_z)}});
    }
    return Json{{"t", real(r.t)},
                {"levels", std::move(levels)},
                {"extrapolated_distance", real(r.extrapolated_distance)},
                {"cusp_normal_error", real(r.cusp_normal_error)}};
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw IoError("cannot write to stdout");
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    os.close();
    if (!os) throw IoError("write to '" + path + "' failed");
}

// -------------------------------------------------------------------- mesh

void validate_mesh(const MeshData& mesh) {
    if (mesh.normals.size() != mesh.vertices.size()) {
        throw InvalidArgument("mesh: one normal per vertex required");
    }
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        if (!mesh.vertices[i].allFinite()) throw InvalidArgument("mesh: non-finite vertex");
        if (!(std::abs(mesh.normals[i].norm() - 1.0) <= 1e-9)) {
            throw InvalidArgument("mesh: normal " + std::to_string(i) + " is not unit");
        }
    }
    const auto n = static_cast<int>(mesh.vertices.size());
    for (const auto& f : mesh.faces) {
        for (int v : f) {
            if (v < 0 || v >= n) throw InvalidArgument("mesh: face index out of range");
        }
    }
}

namespace {

// Polar chart of D: the ring of radius ρ is |x|^(4/5) + |y|^(4/5) = ρ^(4/5).
Vec2 polar_chart(double rho, double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {rho * std::copysign(std::pow(std::abs(c), 2.5), c),
            rho * std::copysign(std::pow(std::abs(s), 2.5), s)};
}

double ring_theta(int j, int n) { return 2.0 * std::numbers::pi * (j + 0.5) / n; }

// Limit of the oriented normal at a non-cusp point of ∂D when the radical
// term is present, the same for both sheets: horizontal, along sign(t·x·y)
// times the outward normal of ∂D.
Vec3 boundary_limit_normal(double t, const Vec2& p) {
    const Vec2 outward(std::copysign(std::pow(std::abs(p.x()), -0.2), p.x()),
                       std::copysign(std::pow(std::abs(p.y()), -0.2), p.y()));
    const double sign = (t > 0.0 ? 1.0 : -1.0) * (p.x() * p.y() > 0.0 ? 1.0 : -1.0);
    const Vec2 d = sign * outward.normalized();
    return {d.x(), d.y(), 0.0};
}

struct PolarSheet {
    GraphSurfaceSpec spec;
    bool radical;  // f-term present, normal horizontal on ∂D
    double t;
};

void check_polar_n(int n) {
    if (n < 3 || n > 4096) throw InvalidArgument("mesh: n must be in [3, 4096]");
}

// Sheets share the boundary ring; the first sheet is wound counter-clockwise.
MeshData polar_mesh(const std::vector<PolarSheet>& sheets, int n) {
    MeshData mesh;
    const int interior_rings = n - 2;

    // Shared boundary ring.
    std::vector<int> boundary(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        const Vec2 p = polar_chart(1.0, ring_theta(j, n));
        const PolarSheet& s0 = sheets.front();
        boundary[static_cast<std::size_t>(j)] = static_cast<int>(mesh.vertices.size());
        mesh.vertices.emplace_back(p.x(), p.y(), s0.spec.height(p.x(), p.y()));
        mesh.normals.push_back(s0.radical ? boundary_limit_normal(s0.t, p)
                                          : gauss_map(s0.spec, p.x(), p.y()).vec());
    }

    for (std::size_t k = 0; k < sheets.size(); ++k) {
        const GraphSurfaceSpec& spec = sheets[k].spec;
        const bool ccw = k == 0;
        const int centre = static_cast<int>(mesh.vertices.size());
        mesh.vertices.emplace_back(0.0, 0.0, spec.height(0.0, 0.0));
        mesh.normals.push_back(gauss_map(spec, 0.0, 0.0).vec());
        const int first = static_cast<int>(mesh.vertices.size());
        for (int i = 1; i <= interior_rings; ++i) {
            const double rho = static_cast<double>(i) / (n - 1);
            for (int j = 0; j < n; ++j) {
                const Vec2 p = polar_chart(rho, ring_theta(j, n));
                mesh.vertices.emplace_back(p.x(), p.y(), spec.height(p.x(), p.y()));
                mesh.normals.push_back(gauss_map(spec, p.x(), p.y()).vec());
            }
        }
        // Ring 0 is the centre, ring n-1 the boundary.
        auto at = [&](int ring, int j) {
            j %= n;
            if (ring == n - 1) return boundary[static_cast<std::size_t>(j)];
            return first + (ring - 1) * n + j;
        };
        auto tri = [&](int a, int b, int c) {
            mesh.faces.push_back(ccw ? std::array<int, 3>{a, b, c} : std::array<int, 3>{a, c, b});
        };
        for (int j = 0; j < n; ++j) tri(centre, at(1, j), at(1, j + 1));
        for (int i = 1; i < n - 1; ++i) {
            for (int j = 0; j < n; ++j) {
                tri(at(i, j), at(i + 1, j), at(i + 1, j + 1));
                tri(at(i, j), at(i + 1, j + 1), at(i, j + 1));
            }
        }
    }
    return mesh;
}

}  // namespace

MeshData glued_surface_mesh(const ExactReal& t, int n) {
    check_polar_n(n);
    const bool radical = !t.is_zero();
    return polar_mesh({{GraphSurfaceSpec::counterexample(t, +1), radical, t.value()},
                       {GraphSurfaceSpec::counterexample(t, -1), radical, t.value()}},
                      n);
}

MeshData graph_mesh(const GraphSurfaceSpec& spec, int n) {
    check_polar_n(n);
    bool radical = false;
    double t = 0.0;
    if (const auto* mm = std::get_if<MMCounterexample>(&spec.kind())) {
        radical = !mm->t.is_zero();
        t = mm->t.value();
    } else if (std::holds_alternative<CrossCapGraph>(spec.kind())) {
        throw InvalidArgument("graph_mesh: the cross-cap graph is not defined over D; use crosscap_mesh");
    } else if (std::holds_alternative<CustomHeight>(spec.kind())) {
        throw InvalidArgument("graph_mesh: custom heights have no polar chart");
    }
    return polar_mesh({{spec, radical, t}}, n);
}

MeshData crosscap_mesh(int n) {
    if (n < 2 || n > 4096) throw InvalidArgument("crosscap_mesh: n must be in [2, 4096]");
    MeshData mesh;
    for (int i = 0; i < n; ++i) {
        const double u = -1.0 + 2.0 * i / (n - 1);
        for (int j = 0; j < n; ++j) {
            const double v = -1.0 + 2.0 * j / (n - 1);
            mesh.vertices.push_back(crosscap_point(u, v));
            // Partials divided by r²: r⁴(u,1,uv) has ∂u = r²A, ∂v = r²B.
            const double r2 = u * u + v * v;
            const Vec3 base(u, 1.0, u * v);
            const Vec3 a = 4.0 * u * base + r2 * Vec3(1.0, 0.0, v);
            const Vec3 b = 4.0 * v * base + r2 * Vec3(0.0, 0.0, u);
            const Vec3 c = a.cross(b);
            // The chart collapses at u = v = 0.
            mesh.normals.push_back(c.norm() > 1e-300 ? Vec3(c.normalized()) : Vec3::UnitY());
        }
    }
    auto at = [n](int i, int j) { return i * n + j; };
    for (int i = 0; i + 1 < n; ++i) {
        for (int j = 0; j + 1 < n; ++j) {
            mesh.faces.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1)});
            mesh.faces.push_back({at(i, j), at(i + 1, j + 1), at(i, j + 1)});
        }
    }
    return mesh;
}

void write_obj(std::ostream& os, const MeshData& mesh) {
    validate_mesh(mesh);
    for (const Vec3& v : mesh.vertices) {
        os << "v " << fmt17(v.x()) << ' ' << fmt17(v.y()) << ' ' << fmt17(v.z()) << '\n';
    }
    for (const Vec3& n : mesh.normals) {
        os << "vn " << fmt17(n.x()) << ' ' << fmt17(n.y()) << ' ' << fmt17(n.z()) << '\n';
    }
    for (const auto& f : mesh.faces) {
        os << 'f';
        for (int v : f) os << ' ' << v + 1 << "//" << v + 1;
        os << '\n';
    }
}

MeshData read_obj(std::istream& is) {
    MeshData mesh;
    std::string line;
    std::size_t line_no = 0;
    auto fail = [&](const std::string& what) {
        throw IoError("obj line " + std::to_string(line_no) + ": " + what);
    };
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string tag;
        if (!(ss >> tag) || tag[0] == '#') continue;
        if (tag == "v" || tag == "vn") {
            Vec3 p;
            if (!(ss >> p.x() >> p.y() >> p.z())) fail("expected three coordinates");
            (tag == "v" ? mesh.vertices : mesh.normals).push_back(p);
        } else if (tag == "f") {
            std::array<int, 3> f{};
            for (int& idx : f) {
                std::string ref;
                if (!(ss >> ref)) fail("expected three vertex references");
                idx = std::atoi(ref.substr(0, ref.find('/')).c_str()) - 1;
            }
            mesh.faces.push_back(f);
        }
    }
    return mesh;
}

}  // namespace hhk
