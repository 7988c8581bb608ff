#pragma once

// Report serialization: CSV scan rows, JSON documents with stable key order,
// and OBJ triangle meshes of the graph surfaces and the cross-cap.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "hhk/certify.hpp"
#include "hhk/graph_surface.hpp"
#include "hhk/sphere_math.hpp"

namespace hhk {

using Json = nlohmann::ordered_json;

// --------------------------------------------------------------------- CSV

inline constexpr const char* kScanCsvHeader = "x,y,sheet,z,K,r1,r2,Rh,boundary_distance";

/// Header row then one LF-terminated row per sample, reals as %.17g.
void write_scan_csv(std::ostream& os, const std::vector<ScanSample>& rows);
/// Inverse of write_scan_csv. Throws IoError on a bad header or row.
std::vector<ScanSample> read_scan_csv(std::istream& is);

// -------------------------------------------------------------------- JSON

/// [lo, hi]; infinite endpoints become the strings "-inf" and "inf", the
/// empty interval becomes null.
Json to_json(const Interval& v);
Json to_json(const IntervalBox& b);
Json to_json(const ScanSample& s);
/// Summary fields plus the capped violation rows.
Json to_json(const ScanReport& r);
Json to_json(const SignCertificate& c);
Json to_json(const SingularSetReport& r);
Json to_json(const CuspFanReport& r);

/// Writes text to path, or to stdout when path is "-". Throws IoError.
void write_text(const std::string& path, const std::string& text);

// -------------------------------------------------------------------- mesh

struct MeshData {
    std::vector<Vec3> vertices;
    std::vector<Vec3> normals;  // per vertex, unit
    std::vector<std::array<int, 3>> faces;
};

/// Throws InvalidArgument unless indices are in range, coordinates finite
/// and normals unit to 1e-9.
void validate_mesh(const MeshData& mesh);

/// Both sheets over D on a polar-like grid: n rings from the centre to ∂D,
/// n angular samples per ring at half steps (no sample on a cusp), and the
/// boundary ring shared by the sheets. 2n² - 3n + 2 vertices. The upper
/// sheet is wound counter-clockwise seen from +z, the lower one clockwise.
MeshData glued_surface_mesh(const ExactReal& t, int n);
/// One sheet of a graph spec over D on the same polar grid.
MeshData graph_mesh(const GraphSurfaceSpec& spec, int n);
/// crosscap_point over an n × n grid of [-1, 1]².
MeshData crosscap_mesh(int n);

/// `v`, `vn` and `f v//vn` records, reals as %.17g, 1-based indices.
void write_obj(std::ostream& os, const MeshData& mesh);
/// Reads the records written by write_obj. Throws IoError.
MeshData read_obj(std::istream& is);

}  // namespace hhk
