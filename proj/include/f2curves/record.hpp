#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "f2curves/count.hpp"
#include "f2curves/genusbounds.hpp"
#include "f2curves/irred.hpp"
#include "f2curves/polyrep.hpp"
#include "f2curves/singular.hpp"

#include "json.hpp"

namespace f2c {

struct SingularEntry {
  SingularPoint point;
  BlowupEstimate blowup;
  Resolution resolution;
};

/// Everything observed over one field F_q.
struct FieldRecord {
  std::uint32_t q = 0;
  std::uint64_t total = 0;
  std::uint64_t smooth = 0;
  /// F_q-rational singular points.
  std::vector<SingularEntry> singular;
  ModelBounds model;
};

/// A singular point over the algebraic closure, seen in some scanned field.
struct GeometricSingularity {
  int k = 1;  // minimal field GF(2^k)
  int multiplicity = 2;
  int delta = 1;
  bool delta_exact = true;

  friend bool operator==(const GeometricSingularity&, const GeometricSingularity&) = default;
  friend auto operator<=>(const GeometricSingularity&, const GeometricSingularity&) = default;
};

struct CurveRecord {
  PolyMask f;
  std::string text;
  std::uint32_t orbit_size = 0;
  std::vector<FieldRecord> fields;  // ascending q
  std::vector<GeometricSingularity> geometric;  // sorted
  GenusInterval genus;
  IrreducibilityStatus irreducibility;
  std::vector<std::string> flags;

  const FieldRecord* field_record(std::uint32_t q) const noexcept;
};

/// Degrees m of the fields GF(2^m) scanned for singular points when
/// computing the genus interval. Every point of degree k <= 11 over GF(2)
/// lies in one of them.
inline constexpr int kSingularScanDegrees[] = {3, 4, 5, 6, 7, 8, 9, 10, 11};

struct AnalysisOptions {
  const BoundTable* bounds = nullptr;  // nullptr: BoundTable::shipped()
  bool certify = true;
};

/// Thrown by verify for inputs that are not curves worth analyzing.
class RejectedCurve : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Full analysis from per-field counts (one PointCount per field of
/// interest, any order). Scans the remaining kSingularScanDegrees fields
/// for singular points.
CurveRecord build_record(const PolyMask& f, std::uint32_t orbit_size, std::vector<PointCount> counts,
                         const AnalysisOptions& options = {});

/// Single-curve entry point. Throws RejectedCurve for trivially reducible
/// input and std::invalid_argument for q outside 2..2048.
CurveRecord verify(const PolyMask& f, std::span<const std::uint32_t> qs, const AnalysisOptions& options = {});
CurveRecord verify(const PolyMask& f, std::uint32_t q, const AnalysisOptions& options = {});

/// "u^2 + u*v + (g^3)*v^2"
std::string form_text(const BinaryForm& form, const FieldTable& F);

using Json = nlohmann::ordered_json;

Json to_json(const CurveRecord& r);
/// One catalog line.
std::string to_catalog_line(const CurveRecord& r);

/// The catalog fields needed for tallies.
struct CatalogSummary {
  PolyMask f;
  GenusInterval genus;
  struct Field {
    std::uint32_t q = 0;
    std::int64_t smooth = 0;
    std::int64_t n_lo = 0;
    std::int64_t n_hi = 0;
  };
  std::vector<Field> fields;
  std::string absolute;
};

/// Throws std::invalid_argument on malformed lines.
CatalogSummary summary_from_json(const Json& j);

}  // namespace f2c
