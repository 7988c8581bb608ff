#include "hhk/cli.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "hhk/errors.hpp"
#include "hhk/graph_surface.hpp"
#include "hhk/projection_index.hpp"

namespace hhk::cli {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Format format_or(const RunConfig& c, Format fallback) { return c.format.value_or(fallback); }

int verdict_code(Verdict v) {
    switch (v) {
        case Verdict::Certified: return kOk;
        case Verdict::BoundaryContact: return kBoundaryContact;
        default: return kUndecided;
    }
}

// One stage of verify: named checks, each with its own failure code.
class Stage {
public:
    explicit Stage(std::string name) : name_(std::move(name)), start_(Clock::now()) {}

    void check(const std::string& what, bool ok, int code_on_failure, Json detail = Json::object()) {
        detail["name"] = what;
        detail["passed"] = ok;
        checks_.push_back(std::move(detail));
        if (!ok && code_ == kOk) code_ = code_on_failure;
    }
    void attach(const std::string& key, Json value) { extra_[key] = std::move(value); }
    bool passed() const { return code_ == kOk; }
    int code() const { return code_; }

    Json finish() const {
        Json j{{"name", name_}, {"passed", passed()}, {"exit_code", code_},
               {"seconds", seconds_since(start_)}, {"checks", checks_}};
        for (const auto& [k, v] : extra_.items()) j[k] = v;
        return j;
    }

private:
    std::string name_;
    Clock::time_point start_;
    int code_ = kOk;
    Json checks_ = Json::array();
    Json extra_ = Json::object();
};

Json measured(double value, double tolerance) {
    return Json{{"value", std::isfinite(value) ? Json(value) : Json(std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf"))},
                {"tolerance", tolerance}};
}

Vec2 boundary_point(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {std::copysign(std::pow(std::abs(c), 2.5), c), std::copysign(std::pow(std::abs(s), 2.5), s)};
}

// Exact cusp normals (upper sheet; the lower sheet is the antipode), written
// out independently of the library's closed form.
Vec3 expected_cusp_normal(int cusp, int sheet) {
    static const Vec3 upper[4] = {Vec3(-4, 0, 3) / 5.0, Vec3(0, 4, 3) / 5.0, Vec3(4, 0, 3) / 5.0,
                                  Vec3(0, -4, 3) / 5.0};
    return sheet > 0 ? upper[cusp] : Vec3(-upper[cusp]);
}

struct SpotCheck {
    int checked = 0;
    int excluded = 0;
    int mismatches = 0;
    Json failures = Json::array();
};

// ray_index of the restriction against ν⁺ - ν⁻ at `count` stable points.
SpotCheck projection_spot_checks(const SupportField& field, const UnitVec3& n, int count, std::mt19937_64& rng) {
    SpotCheck out;
    const PlanarHedgehog ph = restrict_to_circle(field, n);
    const SphericalGrid grid = sph_grid(24, 48, n);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int attempt = 0; out.checked < count && attempt < 20 * count; ++attempt) {
        const Vec2 x(1.5 * unit(rng), 1.5 * unit(rng));
        try {
            const IndexResult ir = ray_index(ph, x);
            if (ir.degenerate) {
                ++out.excluded;
                continue;
            }
            const ProjectionCounts pc = projection_counts(field, n, x, grid);
            // Regular-value check: the counts must not move under ±1e-7 shifts.
            bool stable = true;
            for (const Vec2& d : {Vec2(1e-7, 0.0), Vec2(0.0, 1e-7), Vec2(-1e-7, 0.0), Vec2(0.0, -1e-7)}) {
                if (projection_counts(field, n, x + d, grid).difference() != pc.difference()) stable = false;
            }
            if (!stable) {
                ++out.excluded;
                continue;
            }
            ++out.checked;
            if (pc.difference() != ir.index) {
                ++out.mismatches;
                out.failures.push_back(Json{{"x", {x.x(), x.y()}},
                                            {"ray_index", ir.index},
                                            {"elliptic", pc.elliptic},
                                            {"hyperbolic", pc.hyperbolic}});
            }
        } catch (const OnCurve&) {
            ++out.excluded;
        } catch (const DegenerateRay&) {
            ++out.excluded;
        } catch (const ParabolicAmbiguity&) {
            ++out.excluded;
        }
    }
    return out;
}

Json spot_json(const SpotCheck& s) {
    return Json{{"checked", s.checked}, {"excluded", s.excluded}, {"mismatches", s.mismatches},
                {"failures", s.failures}};
}

}  // namespace

SupportField perturbed_convex_field() {
    return SupportField::sum(SupportField::constant(1.0),
                             SupportField::trig_polynomial({{0.06, 2, 1, 0}, {-0.04, 0, 0, 3}, {0.05, 1, 1, 1}}));
}

// --------------------------------------------------------------- commands

int cmd_scan(const RunConfig& c, std::ostream& err) {
    const Format format = format_or(c, Format::Csv);
    if (format == Format::Obj) throw InvalidArgument("scan: format must be csv or json");
    ScanOptions opts;
    opts.keep_rows = c.all_rows;
    const int n = c.resolution.value_or(512);
    const double margin = c.margin.value_or(1e-3);
    const ScanReport r = c.radii ? shape_radii_scan(c.t, n, margin, opts) : curvature_scan(c.t, n, margin, opts);

    std::string text;
    if (format == Format::Json) {
        Json j = to_json(r);
        if (c.all_rows) {
            Json rows = Json::array();
            for (const ScanSample& s : r.rows) rows.push_back(to_json(s));
            j["rows"] = std::move(rows);
        }
        text = dump(j);
    } else {
        std::ostringstream os;
        write_scan_csv(os, c.all_rows ? r.rows : r.violations);
        text = os.str();
    }
    write_text(c.output, text);
    err << "scan " << (c.radii ? "radii" : "K") << ": " << r.samples << " samples, " << r.violation_count
        << " violations, max " << r.max_value << '\n';
    return r.violation_count == 0 ? kOk : kScanViolation;
}

int cmd_certify(const RunConfig& c, std::ostream& err) {
    if (format_or(c, Format::Json) != Format::Json) throw InvalidArgument("certify: format must be json");
    CertExpr expr;
    ClaimedSign fallback = ClaimedSign::NonNegative;
    double margin = 0.0;
    if (c.expr == "radicand") {
        expr = CertExpr::radicand();
    } else if (c.expr == "curvature") {
        expr = CertExpr::curvature_numerator(c.t, c.sheet);
        fallback = ClaimedSign::Negative;
        margin = 1e-2;
    } else {
        throw InvalidArgument("certify: --expr must be radicand or curvature");
    }
    const SignCertificate cert = certify_sign(expr, Region{c.margin.value_or(margin)}, c.sign.value_or(fallback),
                                              c.max_depth.value_or(24), c.budget);
    write_text(c.output, dump(to_json(cert)));
    err << "certify " << cert.expr << " " << to_string(cert.claim) << " on " << cert.region << ": "
        << to_string(cert.verdict) << " after " << cert.boxes_processed << " boxes\n";
    return verdict_code(cert.verdict);
}

int cmd_mesh(const RunConfig& c, std::ostream& err) {
    if (format_or(c, Format::Obj) != Format::Obj) throw InvalidArgument("mesh: format must be obj");
    const int n = c.resolution.value_or(128);
    MeshData mesh;
    if (c.surface == "mm") {
        mesh = glued_surface_mesh(c.t, n);
    } else if (c.surface == "basegraph") {
        mesh = graph_mesh(GraphSurfaceSpec::base_g(), n);
    } else if (c.surface == "crosscap") {
        mesh = crosscap_mesh(n);
    } else {
        throw InvalidArgument("mesh: --surface must be mm, crosscap or basegraph");
    }
    std::ostringstream os;
    write_obj(os, mesh);
    write_text(c.output, os.str());
    err << "mesh " << c.surface << ": " << mesh.vertices.size() << " vertices, " << mesh.faces.size()
        << " faces\n";
    return kOk;
}

int cmd_index(const RunConfig& c, std::ostream& err) {
    if (format_or(c, Format::Json) != Format::Json) throw InvalidArgument("index: format must be json");
    std::optional<SupportField> field;
    std::optional<PlanarHedgehog> planar;
    if (c.hedgehog == "sphere") {
        field = SupportField::constant(1.0);
    } else if (c.hedgehog == "perturbed") {
        field = perturbed_convex_field();
    } else if (c.hedgehog == "circle") {
        planar = PlanarHedgehog::constant(1.0);
    } else if (c.hedgehog == "cos2") {
        planar = PlanarHedgehog::harmonics(0.0, {{2, 1.0, 0.0}});
    } else if (c.hedgehog == "quartic") {
        planar = PlanarHedgehog::quartic_boundary();
    } else {
        throw InvalidArgument("index: --hedgehog must be sphere, perturbed, circle, cos2 or quartic");
    }
    const UnitVec3 n(c.normal);
    if (field) planar = restrict_to_circle(*field, n);

    const IndexResult ir = ray_index(*planar, c.point);
    Json j{{"hedgehog", c.hedgehog},
           {"x", {c.point.x(), c.point.y()}},
           {"direction", {ir.direction.x(), ir.direction.y()}},
           {"crossings", ir.crossings},
           {"index", ir.index},
           {"degenerate", ir.degenerate}};
    int code = kOk;
    if (field) {
        const ProjectionCounts pc = projection_counts(*field, n, c.point, sph_grid(48, 96, n));
        const bool match = pc.difference() == ir.index;
        j["normal"] = {n.x(), n.y(), n.z()};
        j["elliptic"] = pc.elliptic;
        j["hyperbolic"] = pc.hyperbolic;
        j["match"] = match;
        if (!match && !ir.degenerate) code = kProjectionMismatch;
    }
    write_text(c.output, dump(j));
    err << "index " << c.hedgehog << ": " << ir.index << (ir.degenerate ? " (degenerate)" : "") << '\n';
    return code;
}

// ----------------------------------------------------------------- verify

VerifyResult verify_pipeline(const RunConfig& c, std::ostream& err) {
    const auto start = Clock::now();
    const int n = c.resolution.value_or(c.full ? 512 : 128);
    const int depth = c.max_depth.value_or(c.full ? 24 : 16);
    const std::size_t budget = c.budget;
    const ExactReal& t = c.t;
    std::mt19937_64 rng(c.seed);
    Json stages = Json::array();
    int exit_code = kOk;
    auto close = [&](const Stage& s) {
        stages.push_back(s.finish());
        if (exit_code == kOk) exit_code = s.code();
        err << "verify: " << stages.back()["name"].get<std::string>() << ' '
            << (s.passed() ? "passed" : "FAILED (exit " + std::to_string(s.code()) + ")") << '\n';
    };

    {
        Stage st("radicand");
        const double z1 = mm_radicand(1.0, 0.0);
        const double d = std::pow(2.0, -1.25);
        const double z2 = mm_radicand(d, d);
        st.check("boundary zeros", std::abs(z1) <= 1e-12 && std::abs(z2) <= 1e-12, kScanViolation,
                 Json{{"at_cusp", z1}, {"at_diagonal", z2}, {"tolerance", 1e-12}});
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            const Vec2 p = boundary_point(angle(rng));
            worst = std::max(worst, std::abs(mm_radicand_raw(p.x(), p.y())));
        }
        st.check("boundary samples", worst <= 1e-9, kScanViolation, measured(worst, 1e-9));
        double lowest = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double x = -1.0 + 2.0 * i / (n - 1);
                const double y = -1.0 + 2.0 * j / (n - 1);
                if (boundary_distance(x, y) > 0.0) lowest = std::min(lowest, mm_radicand_raw(x, y));
            }
        }
        st.check("interior grid minimum", lowest >= -1e-12, kScanViolation, measured(lowest, -1e-12));

        const SignCertificate nonneg =
            certify_sign(CertExpr::radicand(), Region{}, ClaimedSign::NonNegative, depth, budget);
        const bool confined = nonneg.verdict == Verdict::Certified ||
                              (nonneg.verdict == Verdict::BoundaryContact &&
                               nonneg.max_contact_boundary_distance <= 1e-2);
        st.check("certificate >= 0 on D", confined,
                 nonneg.verdict == Verdict::Undecided ? kUndecided : kBoundaryContact,
                 Json{{"certificate", to_json(nonneg)}});
        const SignCertificate pos =
            certify_sign(CertExpr::radicand(), Region{1e-2}, ClaimedSign::Positive, depth, budget);
        st.check("certificate > 0 on D[1e-2]", pos.verdict == Verdict::Certified, verdict_code(pos.verdict),
                 Json{{"certificate", to_json(pos)}});
        const EnclosureAudit audit = audit_enclosures(CertExpr::radicand(), Region{}, 10000, c.seed);
        st.check("enclosure audit", audit.violations == 0 && audit.points > 0, kUndecided,
                 Json{{"boxes", audit.boxes}, {"points", audit.points}, {"violations", audit.violations}});
        close(st);
    }

    {
        Stage st("curvature");
        const ScanReport scan = curvature_scan(t, n, 1e-3);
        st.check("scan K < 0", scan.violation_count == 0, kScanViolation,
                 Json{{"samples", scan.samples}, {"violations", scan.violation_count}, {"max_K", scan.max_value}});
        if (scan.violation_count == 0) {
            const SignCertificate cert = certify_sign(CertExpr::curvature_numerator(t), Region{1e-2},
                                                      ClaimedSign::Negative, depth, budget);
            st.check("certificate < 0 on D[1e-2]", cert.verdict == Verdict::Certified, verdict_code(cert.verdict),
                     Json{{"certificate", to_json(cert)}});
            const EnclosureAudit audit =
                audit_enclosures(CertExpr::curvature_numerator(t), Region{1e-2}, 10000, c.seed + 1);
            st.check("enclosure audit", audit.violations == 0 && audit.points > 0, kUndecided,
                     Json{{"boxes", audit.boxes}, {"points", audit.points}, {"violations", audit.violations}});
        } else {
            st.attach("certificate", "skipped: the scan already found K >= 0");
        }
        close(st);
    }

    {
        Stage st("singular_set");
        const SingularSetReport ss = singular_set_check(t, 200);
        st.check("boundary limits on semicircles", ss.max_distance <= 1e-3, kSingularSet,
                 Json{{"max_distance", ss.max_distance}, {"mean_distance", ss.mean_distance},
                      {"median_equator_error", ss.median_equator_error}, {"tolerance", 1e-3}});
        double cusp_error = 0.0;
        double cusp_set_distance = 0.0;
        for (int i = 0; i < 4; ++i) {
            for (int sheet : {+1, -1}) {
                const Vec2 p = cusp_point(i);
                const UnitVec3 nrm = gauss_map(GraphSurfaceSpec::counterexample(t, sheet), p.x(), p.y());
                cusp_error = std::max(cusp_error, angle_between(nrm.vec(), expected_cusp_normal(i, sheet)));
                cusp_set_distance = std::max(cusp_set_distance, singular_set_distance(nrm));
            }
        }
        st.check("cusp normals", cusp_error <= 1e-10 && cusp_set_distance <= 1e-10, kSingularSet,
                 Json{{"max_angle_error", cusp_error}, {"max_set_distance", cusp_set_distance},
                      {"tolerance", 1e-10}});
        st.attach("cusp_fan", to_json(cusp_fan_check(t, 64, {1e-3, 1e-5, 1e-7, 1e-9})));
        close(st);
    }

    {
        Stage st("shape_radii");
        ScanOptions opts;
        opts.keep_rows = true;
        const ScanReport radii = shape_radii_scan(t, n, 1e-3, opts);
        st.check("radii scan", radii.violation_count == 0, kScanViolation,
                 Json{{"samples", radii.samples}, {"violations", radii.violation_count},
                      {"max_reciprocal_error", radii.max_reciprocal_error}});
        const double r_star = convexify_radius(radii);
        st.check("convexify radius finite", std::isfinite(r_star), kScanViolation, Json{{"R_star", r_star}});
        const ShiftedRadiiCheck shift = shifted_radii_check(radii, r_star + 0.01);
        st.check("r1 < 0 < r2 everywhere", shift.not_hyperbolic == 0, kScanViolation,
                 Json{{"not_hyperbolic", shift.not_hyperbolic}});
        st.check("shifted radii", shift.min_shifted_r1 >= -1e-9 && shift.max_identity_error <= 1e-14,
                 kScanViolation,
                 Json{{"R", shift.radius}, {"min_shifted_r1", shift.min_shifted_r1},
                      {"max_identity_error", shift.max_identity_error}});
        close(st);
    }

    {
        Stage st("projection");
        std::normal_distribution<double> gauss;
        Vec3 dir(gauss(rng), gauss(rng), gauss(rng));
        const UnitVec3 tilted(dir);
        const SpotCheck sphere_z = projection_spot_checks(SupportField::constant(1.0), UnitVec3(), 20, rng);
        const SpotCheck sphere_t = projection_spot_checks(SupportField::constant(1.0), tilted, 20, rng);
        const SpotCheck perturbed = projection_spot_checks(perturbed_convex_field(), tilted, 20, rng);
        for (const auto& [name, s] : {std::pair<const char*, const SpotCheck&>{"unit sphere, n = e3", sphere_z},
                                      {"unit sphere, random n", sphere_t},
                                      {"perturbed convex field", perturbed}}) {
            st.check(name, s.mismatches == 0 && s.checked == 20, kProjectionMismatch, spot_json(s));
        }
        const PlanarHedgehog cos2 = PlanarHedgehog::harmonics(0.0, {{2, 1.0, 0.0}});
        const double r0 = planar_radius(cos2, 0.0);
        const double r1 = planar_radius(cos2, std::numbers::pi / 4);
        const double r2 = planar_radius(cos2, std::numbers::pi / 2);
        st.check("planar radius law",
                 std::abs(r0 + 3.0) <= 1e-12 && std::abs(r1) <= 1e-12 && std::abs(r2 - 3.0) <= 1e-12,
                 kProjectionMismatch, Json{{"values", {r0, r1, r2}}, {"expected", {-3.0, 0.0, 3.0}}});
        close(st);
    }

    VerifyResult out;
    out.exit_code = exit_code;
    out.document = Json{{"mode", c.full ? "full" : "quick"},
                        {"t", t.text()},
                        {"resolution", n},
                        {"depth", depth},
                        {"budget", budget},
                        {"seed", c.seed},
                        {"exit_code", exit_code},
                        {"seconds", seconds_since(start)},
                        {"stages", std::move(stages)}};
    return out;
}

int cmd_verify(const RunConfig& c, std::ostream& err) {
    const VerifyResult r = verify_pipeline(c, err);
    write_text(c.output, dump(r.document));
    err << "verify: exit " << r.exit_code << " after " << r.document["seconds"].get<double>() << " s\n";
    return r.exit_code;
}

int run(const RunConfig& c, std::ostream& err) {
    try {
        if (c.subcommand == "scan") return cmd_scan(c, err);
        if (c.subcommand == "certify") return cmd_certify(c, err);
        if (c.subcommand == "mesh") return cmd_mesh(c, err);
        if (c.subcommand == "index") return cmd_index(c, err);
        if (c.subcommand == "verify") return cmd_verify(c, err);
        throw InvalidArgument("unknown subcommand '" + c.subcommand + "'");
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << '\n';
        return kIoOrArgument;
    }
}

// -------------------------------------------------------------- parsing

int run_cli(int argc, const char* const* argv, std::ostream& err) {
    CLI::App app{"Hedgehog and counterexample-surface toolkit", "hhk"};
    app.require_subcommand(1);
    RunConfig c;
    std::string t_text = "1/12";
    std::string format_text;
    std::string sign_text;
    std::string sheet_text = "both";
    std::vector<double> point;
    std::vector<double> normal;
    int n = 0;
    double margin = 0.0;
    int depth = 0;
    double budget = 5e6;

    auto add_t = [&](CLI::App* sub) {
        sub->add_option("--t", t_text, "Parameter t: decimal, scientific or p/q (default 1/12)");
    };
    auto add_output = [&](CLI::App* sub) {
        sub->add_option("-o,--output", c.output, "Output path, '-' for stdout");
    };

    CLI::App* scan = app.add_subcommand("scan", "Curvature or principal-radii grid scan");
    add_t(scan);
    auto* scan_n = scan->add_option("--n", n, "Grid resolution per axis (default 512)");
    auto* scan_margin = scan->add_option("--margin", margin, "Minimum boundary distance (default 1e-3)");
    scan->add_flag("--radii", c.radii, "Scan principal radii instead of K");
    scan->add_flag("--all-rows", c.all_rows, "Write every sample, not only violations");
    scan->add_option("--format", format_text, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_output(scan);

    CLI::App* certify = app.add_subcommand("certify", "Interval sign certificate");
    add_t(certify);
    certify->add_option("--expr", c.expr, "radicand or curvature")->check(CLI::IsMember({"radicand", "curvature"}));
    auto* cert_margin = certify->add_option("--margin", margin, "Region margin (default 0 / 1e-2)");
    certify->add_option("--sign", sign_text, "Claimed sign: <0, >0 or >=0")->check(CLI::IsMember({"<0", ">0", ">=0"}));
    certify->add_option("--sheet", sheet_text, "+1, -1 or both")->check(CLI::IsMember({"+1", "1", "-1", "both"}));
    auto* cert_depth = certify->add_option("--depth", depth, "Maximum size level (default 24)");
    certify->add_option("--budget", budget, "Box budget (default 5e6)");
    add_output(certify);

    CLI::App* mesh = app.add_subcommand("mesh", "OBJ mesh export");
    add_t(mesh);
    mesh->add_option("--surface", c.surface, "mm, crosscap or basegraph")
        ->check(CLI::IsMember({"mm", "crosscap", "basegraph"}));
    auto* mesh_n = mesh->add_option("--n", n, "Grid resolution (default 128)");
    add_output(mesh);

    CLI::App* index = app.add_subcommand("index", "Hedgehog index by signed ray crossings");
    index->add_option("--hedgehog", c.hedgehog, "sphere, perturbed, circle, cos2 or quartic")
        ->check(CLI::IsMember({"sphere", "perturbed", "circle", "cos2", "quartic"}));
    index->add_option("--x", point, "Query point a,b")->delimiter(',')->expected(2)->required();
    index->add_option("--normal", normal, "Projection direction a,b,c (default 0,0,1)")
        ->delimiter(',')
        ->expected(3);
    add_output(index);

    CLI::App* verify = app.add_subcommand("verify", "End-to-end verification pipeline");
    add_t(verify);
    auto* quick_flag = verify->add_flag("--quick", "n = 128, depth 16 (default)");
    verify->add_flag("--full", c.full, "n = 512, depth 24")->excludes(quick_flag);
    auto* verify_n = verify->add_option("--n", n, "Override the grid resolution");
    auto* verify_depth = verify->add_option("--depth", depth, "Override the certificate depth");
    verify->add_option("--budget", budget, "Box budget (default 5e6)");
    verify->add_option("--seed", c.seed, "Seed of the randomized audits (default 0)");
    add_output(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, err, err);
        return code == 0 ? kOk : kIoOrArgument;
    }

    try {
        c.t = ExactReal::parse(t_text);
        if (*scan_n || *mesh_n || *verify_n) c.resolution = n;
        if (*scan_margin || *cert_margin) c.margin = margin;
        if (*cert_depth || *verify_depth) c.max_depth = depth;
        if (!(budget >= 1.0 && budget <= 1e9)) throw InvalidArgument("--budget must be in [1, 1e9]");
        c.budget = static_cast<std::size_t>(budget);
        if (format_text == "csv") c.format = Format::Csv;
        if (format_text == "json") c.format = Format::Json;
        if (sign_text == "<0") c.sign = ClaimedSign::Negative;
        if (sign_text == ">0") c.sign = ClaimedSign::Positive;
        if (sign_text == ">=0") c.sign = ClaimedSign::NonNegative;
        c.sheet = sheet_text == "both" ? 0 : (sheet_text == "-1" ? -1 : 1);
        if (!point.empty()) c.point = Vec2(point[0], point[1]);
        if (!normal.empty()) c.normal = Vec3(normal[0], normal[1], normal[2]);
    } catch (const Error& e) {
        err << "error[" << e.code() << "]: " << e.what() << '\n';
        return kIoOrArgument;
    }
    c.subcommand = app.get_subcommands().front()->get_name();
    return run(c, err);
}

}  // namespace hhk::cli
