#pragma once

#include <array>
#include <cstdint>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "koszul/bundle.hpp"

namespace koszul {

/// Integer point as written in a curve file.
struct PointSpec {
  std::array<std::int64_t, 3> coords{};
  int multiplicity = 1;
  int line = 0;
};

struct BundleSpec {
  std::string name;
  int twist = 0;
  std::vector<PointSpec> minus;
  int line = 0;
};

/// Parsed curve file. Lines:
///   prime <p>
///   degree <d>
///   <e1> <e2> <e3> <coeff>
///   point <a> <b> <c>
///   bundle <name> twist <k>
///   minus <a> <b> <c> <mult>      (applies to the preceding bundle)
/// Blank lines and text after '#' are ignored.
struct CurveFile {
  std::string source;
  std::optional<std::uint64_t> prime;
  int degree = 0;
  std::vector<std::pair<Monomial, std::int64_t>> terms;
  std::vector<PointSpec> points;
  std::vector<BundleSpec> bundles;

  const BundleSpec* find_bundle(const std::string& name) const;
};

/// Throws InputError with "source:line: message" on malformed input.
CurveFile parse_curve_file(std::istream& in, const std::string& source = "<input>");
CurveFile load_curve_file(const std::string& path);

/// A curve file instantiated over one prime field.
struct Realization {
  std::uint32_t prime = 0;
  std::shared_ptr<const PlaneCurve> curve;
  std::shared_ptr<SectionCache> cache;
  std::vector<CurvePoint> pinned;
  std::map<std::string, LineBundle> bundles;
  /// Point substitutions and similar adjustments.
  std::vector<std::string> notes;

  /// Named bundle; "B" falls back to O_C when the file does not define it.
  LineBundle bundle(const std::string& name) const;
};

/// Reduces the file modulo `prime` and validates the curve. With
/// `substitute_points`, pinned and divisor points that are not smooth points of
/// the reduced curve are replaced by scanned points (recorded in notes);
/// otherwise such points are input errors. A non-empty `only` restricts the
/// realized bundles to those names.
Realization realize(const CurveFile& file, std::uint64_t prime, bool substitute_points = false,
                    const std::vector<std::string>& only = {});

}  // namespace koszul
