// Acceptance criteria 1-10. One PASS/FAIL line per criterion; exit status is
// the number of failed criteria. argv[1] is the path of the hhk executable.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "hhk/cli.hpp"
#include "hhk/errors.hpp"
#include "hhk/graph_surface.hpp"
#include "hhk/projection_index.hpp"
#include "hhk/support_field.hpp"

using namespace hhk;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = false;
    std::string detail;
};

class Report {
public:
    void run(int id, const std::string& title, const std::function<Outcome()>& body) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("%s  criterion %2d  %-44s %8.2fs  %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), s,
                    o.detail.c_str());
        std::fflush(stdout);
        if (!o.pass) ++failed_;
    }
    int failed() const { return failed_; }

private:
    int failed_ = 0;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double seconds_of(const std::function<void()>& f) {
    const auto start = Clock::now();
    f();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

UnitVec3 random_unit(std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    return UnitVec3(g(rng), g(rng), g(rng));
}

Vec2 boundary_point(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {std::copysign(std::pow(std::abs(c), 2.5), c), std::copysign(std::pow(std::abs(s), 2.5), s)};
}

// ---------------------------------------------------------------- criteria

Outcome trivial_identities() {
    std::mt19937_64 rng(101);
    const double r = 1.75;
    const SupportField sphere = SupportField::constant(r);
    const SupportField point = SupportField::linear(Vec3(0.4, -0.3, 1.1));
    double worst_sphere = 0.0;
    double worst_point = 0.0;
    const double s = seconds_of([&] {
        for (int k = 0; k < 1000; ++k) {
            const UnitVec3 p = random_unit(rng);
            const HedgehogJet j = hedgehog_jet(sphere, p);
            worst_sphere = std::max({worst_sphere, (j.x - r * p.vec()).norm(), std::abs(j.r1 - r),
                                     std::abs(j.r2 - r), std::abs(j.curvature - r * r)});
            worst_point = std::max(worst_point, std::abs(curvature_function(point, p)));
        }
    });
    return {worst_sphere <= 1e-12 && worst_point <= 1e-12 && s < 1.0,
            fmt("sphere err %.1e, linear R_h %.1e, %.3fs (limit 1e-12, 1s)", worst_sphere, worst_point, s)};
}

Outcome euler_consistency() {
    std::mt19937_64 rng(102);
    const std::vector<std::pair<const char*, SupportField>> fields = {
        {"constant", SupportField::constant(1.3)},
        {"linear", SupportField::linear(Vec3(0.2, 0.5, -0.1))},
        {"sphere_offset", add_ball(SupportField::trig_polynomial({{0.3, 1, 2, 0}}), 1.0)},
        {"sum", cli::perturbed_convex_field()},
        {"trig", SupportField::trig_polynomial({{0.5, 2, 0, 1}, {-0.2, 0, 3, 0}, {0.1, 1, 1, 2}})}};
    double euler = 0.0;
    double grad_rel = 0.0;
    double hess_rel = 0.0;
    for (const auto& [name, f] : fields) {
        auto phi = [&f](const Vec3& u) { return f.phi(u); };
        for (int k = 0; k < 100; ++k) {
            const UnitVec3 p = random_unit(rng);
            const PhiJet j = f.jet(p.vec());
            euler = std::max(euler, (j.hess * p.vec()).norm());
            grad_rel = std::max(grad_rel, (fd_gradient(phi, p.vec()) - j.grad).norm() / std::max(1.0, j.grad.norm()));
            hess_rel = std::max(hess_rel, (fd_hessian(phi, p.vec()) - j.hess).norm() / std::max(1.0, j.hess.norm()));
        }
    }
    return {euler <= 1e-8 && grad_rel <= 1e-6 && hess_rel <= 1e-6,
            fmt("|Hess p| %.1e (1e-8), grad rel %.1e, Hess rel %.1e (1e-6)", euler, grad_rel, hess_rel)};
}

Outcome radicand_zeros() {
    const double d = std::pow(2.0, -1.25);
    const double z1 = std::abs(mm_radicand(1.0, 0.0));
    const double z2 = std::abs(mm_radicand(d, d));
    std::mt19937_64 rng(103);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    double on_boundary = 0.0;
    double lowest = 1e300;
    const double s = seconds_of([&] {
        for (int k = 0; k < 1000; ++k) {
            const Vec2 p = boundary_point(angle(rng));
            on_boundary = std::max(on_boundary, std::abs(mm_radicand_raw(p.x(), p.y())));
        }
        const int n = 1024;
        for (int i = 0; i < n; ++i) {
            const double x = -1.0 + 2.0 * i / (n - 1);
            for (int j = 0; j < n; ++j) {
                const double y = -1.0 + 2.0 * j / (n - 1);
                if (boundary_distance(x, y) > 0.0) lowest = std::min(lowest, mm_radicand_raw(x, y));
            }
        }
    });
    // Both sides of the diagonal zero equal 225√15/1024.
    const long double dl = std::pow(2.0L, -1.25L);
    const long double d4 = dl * dl * dl * dl;
    const long double closed = 225 * std::sqrt(15.0L) / 1024;
    const double lhs = static_cast<double>(std::abs(std::pow(1 - 2 * d4, 2.5L) - closed));
    const double rhs =
        static_cast<double>(std::abs(25 * d4 * std::sqrt(2 * d4 * d4 + 3 * (2 * d4 - d4 * d4) + 1) - closed));
    const bool pass = z1 <= 1e-12 && z2 <= 1e-12 && lhs <= 1e-12 && rhs <= 1e-12 && on_boundary <= 1e-9 &&
                      lowest >= -1e-12 && s < 10.0;
    return {pass, fmt("zeros %.1e %.1e, closed form %.1e %.1e, dD max %.1e, grid min %.3e, %.2fs", z1, z2, lhs,
                      rhs, on_boundary, lowest, s)};
}

Outcome curvature_claim() {
    ScanReport r;
    const double s = seconds_of([&] { r = curvature_scan(ExactReal::rational(1, 12), 512, 1e-3); });
    return {r.violation_count == 0 && r.samples > 0 && s < 10.0,
            fmt("%zu samples, %zu violations, max K %.4e, %.2fs", r.samples, r.violation_count, r.max_value, s)};
}

Outcome certified_upgrade() {
    const SignCertificate rad =
        certify_sign(CertExpr::radicand(), Region{}, ClaimedSign::NonNegative, 24, 5'000'000);
    const bool rad_ok = rad.verdict == Verdict::Certified ||
                        (rad.verdict == Verdict::BoundaryContact && rad.max_contact_boundary_distance <= 1e-2);
    const SignCertificate curv = certify_sign(CertExpr::curvature_numerator(ExactReal::rational(1, 12)),
                                              Region{1e-2}, ClaimedSign::Negative, 24, 5'000'000);
    const bool curv_ok = curv.verdict == Verdict::Certified;
    return {rad_ok && curv_ok && rad.seconds < 120.0 && curv.seconds < 120.0,
            fmt("radicand %s (contacts %zu within %.1e of dD, %.1fs); numerator %s (%zu boxes, %.1fs)",
                to_string(rad.verdict).c_str(), rad.contact_count, rad.max_contact_boundary_distance, rad.seconds,
                to_string(curv.verdict).c_str(), curv.boxes_processed, curv.seconds)};
}

Outcome singular_set() {
    const SingularSetReport r = singular_set_check(ExactReal::rational(1, 12), 200);
    const Vec3 upper[4] = {Vec3(-4, 0, 3) / 5.0, Vec3(0, 4, 3) / 5.0, Vec3(4, 0, 3) / 5.0, Vec3(0, -4, 3) / 5.0};
    double cusp = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int s : {+1, -1}) {
            const Vec2 p = cusp_point(i);
            const UnitVec3 n = gauss_map(GraphSurfaceSpec::counterexample(1.0 / 12.0, s), p.x(), p.y());
            cusp = std::max({cusp, angle_between(n.vec(), s * upper[i]), singular_set_distance(n)});
        }
    }
    return {r.max_distance <= 1e-3 && cusp <= 1e-10,
            fmt("boundary limits max dist %.3e (limit 1e-3, median tilt from horizontal %.1e); cusp normals %.1e",
                r.max_distance, r.median_equator_error, cusp)};
}

Outcome alexandrov_violation() {
    ScanOptions opts;
    opts.keep_rows = true;
    const ScanReport r = shape_radii_scan(ExactReal::rational(1, 12), 512, 1e-3, opts);
    const double r_star = convexify_radius(r);
    const ShiftedRadiiCheck s = shifted_radii_check(r, r_star + 0.01);
    const bool pass = r.violation_count == 0 && s.not_hyperbolic == 0 && std::isfinite(r_star) &&
                      s.min_shifted_r1 >= -1e-9 && s.max_identity_error <= 1e-14;
    return {pass, fmt("%zu samples, not hyperbolic %zu, R* %.6g, min r1+R %.3e, identity %.1e (1e-14)", s.samples,
                      s.not_hyperbolic, r_star, s.min_shifted_r1, s.max_identity_error)};
}

Outcome crosscap() {
    double worst = 0.0;
    for (int i = 0; i < 200; ++i)
        for (int j = 0; j < 200; ++j)
            worst = std::max(worst,
                             crosscap_residual(-1.0 + 2.0 * i / 199, -1.0 + 2.0 * j / 199, CrossCapVariant::X4Y5));
    const double x5y5 = crosscap_residual(1.0, 1.0, CrossCapVariant::X5Y5);
    std::mt19937_64 rng(108);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double graph = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double y = 0.01 + 0.99 * u(rng);
        const double x = (2.0 * u(rng) - 1.0) * std::pow(y, 1.25);
        graph = std::max(graph, crosscap_identity_residual(Vec3(x, y, crosscap_graph_f(x, y)), CrossCapVariant::X4Y5));
    }
    return {worst <= 1e-12 && x5y5 >= 0.5 && graph <= 1e-12,
            fmt("x4y5 grid %.1e, x5y5 at (1,1) %.3f, graph form %.1e", worst, x5y5, graph)};
}

// Stable points: non-degenerate ray index and counts unchanged by ±1e-7 shifts.
struct IdentityTally {
    int checked = 0;
    int excluded = 0;
    int mismatches = 0;
};

IdentityTally identity_checks(const SupportField& field, const UnitVec3& n, std::mt19937_64& rng) {
    IdentityTally t;
    const PlanarHedgehog ph = restrict_to_circle(field, n);
    const SphericalGrid grid = sph_grid(24, 48, n);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    while (t.checked < 20 && t.excluded < 200) {
        const Vec2 x(u(rng), u(rng));
        if (x.norm() > 1.5) continue;
        try {
            const IndexResult ir = ray_index(ph, x);
            const ProjectionCounts pc = projection_counts(field, n, x, grid);
            bool stable = !ir.degenerate;
            for (const Vec2& d : {Vec2(1e-7, 0.0), Vec2(0.0, 1e-7), Vec2(-1e-7, 0.0), Vec2(0.0, -1e-7)})
                stable = stable && projection_counts(field, n, x + d, grid).difference() == pc.difference();
            if (!stable) {
                ++t.excluded;
                continue;
            }
            ++t.checked;
            if (pc.difference() != ir.index) ++t.mismatches;
        } catch (const Error&) {
            ++t.excluded;
        }
    }
    return t;
}

Outcome projection_identity() {
    std::mt19937_64 rng(109);
    const IdentityTally sphere = identity_checks(SupportField::constant(1.0), UnitVec3(), rng);
    const IdentityTally perturbed = identity_checks(cli::perturbed_convex_field(), random_unit(rng), rng);
    const PlanarHedgehog cos2 = PlanarHedgehog::harmonics(0.0, {{2, 1.0, 0.0}});
    const double law = std::max({std::abs(planar_radius(cos2, 0.0) + 3.0),
                                 std::abs(planar_radius(cos2, std::numbers::pi / 4)),
                                 std::abs(planar_radius(cos2, std::numbers::pi / 2) - 3.0)});
    const bool pass = sphere.checked == 20 && sphere.mismatches == 0 && perturbed.checked == 20 &&
                      perturbed.mismatches == 0 && law <= 1e-12;
    return {pass, fmt("sphere %d/%d match (%d excluded), perturbed %d/%d match (%d excluded), h''+h err %.1e",
                      sphere.checked - sphere.mismatches, sphere.checked, sphere.excluded,
                      perturbed.checked - perturbed.mismatches, perturbed.checked, perturbed.excluded, law)};
}

int run_tool(const std::string& tool, const std::string& args, double& seconds) {
    const std::string cmd = "\"" + tool + "\" " + args + " 2>/dev/null";
    int status = 0;
    seconds = seconds_of([&] { status = std::system(cmd.c_str()); });
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome end_to_end(const std::string& tool) {
    const std::string dir = std::filesystem::temp_directory_path().string();
    double quick_s = 0.0;
    double full_s = 0.0;
    const int quick = run_tool(tool, "verify --quick -o " + dir + "/hhk_verify_quick.json", quick_s);
    const int full = run_tool(tool, "verify --full -o " + dir + "/hhk_verify_full.json", full_s);
    std::size_t violations = 0;
    std::size_t points = 0;
    for (const auto& [expr, region] :
         {std::pair{CertExpr::radicand(), Region{}},
          std::pair{CertExpr::curvature_numerator(ExactReal::rational(1, 12)), Region{1e-2}}}) {
        const EnclosureAudit a = audit_enclosures(expr, region, 10000, 0);
        violations += a.violations;
        points += a.points;
    }
    const bool pass = quick == 0 && quick_s < 60.0 && full == 0 && full_s < 600.0 && violations == 0;
    return {pass, fmt("verify --quick exit %d in %.1fs, --full exit %d in %.1fs, audit %zu points %zu violations",
                      quick, quick_s, full, full_s, points, violations)};
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: hhk_acceptance <path to hhk>\n");
        return 2;
    }
    const std::string tool = argv[1];
    Report report;
    report.run(1, "trivial hedgehog identities", trivial_identities);
    report.run(2, "Euler and derivative consistency", euler_consistency);
    report.run(3, "radicand boundary zeros", radicand_zeros);
    report.run(4, "K < 0 at t = 1/12 on both sheets", curvature_claim);
    report.run(5, "certified signs", certified_upgrade);
    report.run(6, "singular set of the Gauss map", singular_set);
    report.run(7, "hyperbolic radii survive the ball shift", alexandrov_violation);
    report.run(8, "cross-cap identities", crosscap);
    report.run(9, "index equals signed projection count", projection_identity);
    report.run(10, "end-to-end verify", [&] { return end_to_end(tool); });
    std::printf("%d of 10 criteria failed\n", report.failed());
    return report.failed();
}
