#pragma once

// Interval sign certification by adaptive box subdivision.
//
// Every enclosure is taken over box ∩ region, where the region is
// { 1 - |x|^(4/5) - |y|^(4/5) >= margin }. Boxes are first contracted to the
// bounding extent of the region, then evaluated with the natural interval
// extension intersected with a mean-value form where the latter is valid.
// The radicand is additionally enclosed through its exact factorisation, which
// carries the region functional as a factor and so is nonnegative on D.
//
// The curvature numerator det Hess u is enclosed at the points of the box
// where the radicand is positive; the radicand's positivity on a region is a
// separate (strict) claim.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hhk/exact_real.hpp"
#include "hhk/interval.hpp"

namespace hhk {

struct IntervalBox {
    Interval x;
    Interval y;
    /// Size level: largest L with longest edge <= 2^(1-L), after contraction.
    int depth = 0;

    double xlo() const { return x.lo(); }
    double xhi() const { return x.hi(); }
    double ylo() const { return y.lo(); }
    double yhi() const { return y.hi(); }
    double width() const { return std::max(x.width(), y.width()); }
};

enum class ExprKind { Radicand, CurvatureNumerator };

struct CertExpr {
    ExprKind kind = ExprKind::Radicand;
    ExactReal t;
    /// +1 or -1 for one sheet; 0 encloses both sheets at once.
    int sheet = 0;

    static CertExpr radicand();
    static CertExpr curvature_numerator(const ExactReal& t, int sheet = 0);
    std::string id() const;
};

struct Region {
    double margin = 0.0;
    std::string descriptor() const;
};

enum class ClaimedSign { Negative, Positive, NonNegative };
enum class Verdict { Certified, BoundaryContact, Undecided };
enum class EnclosureMode { Natural, MeanValue };

std::string to_string(ClaimedSign s);
std::string to_string(Verdict v);

struct BoxEnclosure {
    bool outside = false;  // box ∩ region is empty
    IntervalBox box;       // contracted box
    Interval value = Interval::empty();
    Interval boundary = Interval::empty();  // 1 - |x|^(4/5) - |y|^(4/5) on box
};

/// Enclosure of the expression over box ∩ region.
BoxEnclosure enclose(const CertExpr& expr, const IntervalBox& box, const Region& region,
                     EnclosureMode mode = EnclosureMode::MeanValue);

/// Enclosure over box ∩ D. Throws DomainViolation when the box misses D.
Interval interval_eval(const CertExpr& expr, const IntervalBox& box,
                       EnclosureMode mode = EnclosureMode::MeanValue);

struct CertifyOptions {
    EnclosureMode mode = EnclosureMode::MeanValue;
    /// Contact and residual boxes kept in the certificate (all are counted).
    std::size_t box_cap = 32;
};

struct SignCertificate {
    std::string expr;
    std::string region;
    ClaimedSign claim = ClaimedSign::Negative;
    Verdict verdict = Verdict::Undecided;
    std::size_t boxes_processed = 0;
    std::size_t discharged = 0;
    std::size_t excluded = 0;      // contracted to nothing
    std::size_t undischarged = 0;  // at max depth, claim not shown
    std::size_t pending = 0;       // left over when the budget ran out
    int max_depth = 0;
    int max_depth_reached = 0;
    std::size_t budget = 0;
    /// Most violating remaining box, or the tightest discharged one when
    /// everything was discharged.
    IntervalBox worst_box;
    Interval worst_enclosure = Interval::empty();
    /// Hull of the enclosures of all terminal boxes.
    Interval bounds = Interval::empty();
    /// Undischarged and pending boxes, worst first (capped).
    std::vector<IntervalBox> residual_boxes;
    std::size_t contact_count = 0;
    std::vector<IntervalBox> contact_boxes;
    /// Largest upper bound of the boundary functional over contact boxes.
    double max_contact_boundary_distance = 0.0;
    double seconds = 0.0;
};

/// Bisects the longest edge, level by level in worst-first order, until every
/// box is discharged or has size level max_depth, or budget boxes were
/// evaluated.
/// Throws InvalidArgument unless 0 <= max_depth <= 40 and budget >= 1.
SignCertificate certify_sign(const CertExpr& expr, const Region& region, ClaimedSign claim,
                             int max_depth, std::size_t budget, const CertifyOptions& opts = {});

struct EnclosureAudit {
    std::size_t boxes = 0;
    std::size_t points = 0;
    std::size_t violations = 0;
    /// Largest distance of a point value outside its box enclosure.
    double worst_excess = 0.0;
};

/// Draws n random boxes meeting the region (half of them centred on its
/// boundary, widths 1e-8 ... 1e-1) and one region point in each, and checks
/// that the double-precision point value lies in the box enclosure up to
/// 1e-9·max(1, |value|). Deterministic in seed.
EnclosureAudit audit_enclosures(const CertExpr& expr, const Region& region, std::size_t n,
                                std::uint64_t seed);

}  // namespace hhk
