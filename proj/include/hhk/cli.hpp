#pragma once

// The `hhk` command line: scan, certify, mesh, index and verify.
//
// Exit codes are a total function of the outcome:
//   0 success, 1 IO or argument error, 2 scan violation, 3 BoundaryContact,
//   4 Undecided (or enclosure audit failure), 5 singular-set mismatch,
//   6 projection identity mismatch.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "hhk/certify.hpp"
#include "hhk/exact_real.hpp"
#include "hhk/io.hpp"
#include "hhk/support_field.hpp"

namespace hhk::cli {

enum ExitCode : int {
    kOk = 0,
    kIoOrArgument = 1,
    kScanViolation = 2,
    kBoundaryContact = 3,
    kUndecided = 4,
    kSingularSet = 5,
    kProjectionMismatch = 6,
};

enum class Format { Csv, Json, Obj };

/// Unset optionals take the subcommand's default: scan n = 512, margin 1e-3;
/// certify depth 24, budget 5e6, margin 0 (radicand) or 1e-2 (curvature);
/// mesh n = 128; verify n = 128, depth 16 (quick) or n = 512, depth 24 (full).
struct RunConfig {
    std::string subcommand;
    ExactReal t = ExactReal::rational(1, 12);
    std::optional<int> resolution;
    std::optional<double> margin;
    std::optional<int> max_depth;
    std::size_t budget = 5'000'000;
    std::string output = "-";
    std::optional<Format> format;

    // scan
    bool radii = false;      // shape_radii_scan instead of curvature_scan
    bool all_rows = false;   // every sample instead of the violations only
    // certify
    std::string expr = "radicand";  // radicand | curvature
    std::optional<ClaimedSign> sign;
    int sheet = 0;
    // mesh
    std::string surface = "mm";  // mm | crosscap | basegraph
    // index
    std::string hedgehog = "sphere";  // sphere | perturbed | circle | cos2 | quartic
    Vec2 point = Vec2::Zero();
    Vec3 normal = Vec3::UnitZ();
    // verify
    bool full = false;
    std::uint64_t seed = 0;
};

/// Parses argv (argv[0] is the program name) and runs the subcommand.
/// Diagnostics go to err; reports go to the configured output.
int run_cli(int argc, const char* const* argv, std::ostream& err);

/// Runs a parsed configuration.
int run(const RunConfig& config, std::ostream& err);

int cmd_scan(const RunConfig& config, std::ostream& err);
int cmd_certify(const RunConfig& config, std::ostream& err);
int cmd_mesh(const RunConfig& config, std::ostream& err);
int cmd_index(const RunConfig& config, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& err);

/// Unit sphere plus a small cubic perturbation; all radii stay positive.
SupportField perturbed_convex_field();

struct VerifyResult {
    int exit_code = kOk;
    Json document;
};

/// The end-to-end pipeline behind `verify`. Every stage runs; the exit code
/// is that of the first failing stage in order radicand, curvature,
/// singular_set, shape_radii, projection.
VerifyResult verify_pipeline(const RunConfig& config, std::ostream& err);

}  // namespace hhk::cli
