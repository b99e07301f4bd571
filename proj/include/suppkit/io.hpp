#pragma once

// File formats:
//   matrix JSON        {"kind":..., "dim":m, "entries":[...]} row-major; sign
//                      matrices as +-1 integers, complex ones as [re, im]
//   distribution JSON  {"modes":m, "photons":n, "collision_free":b,
//                       "entries":[{"output":[MAL], "p":x}, ...]}
//   census CSV         one header line plus one row per report

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "suppkit/census.hpp"
#include "suppkit/distribution.hpp"
#include "suppkit/suppression.hpp"
#include "suppkit/unitaries.hpp"

namespace suppkit {

using Json = nlohmann::json;

Json sign_matrix_to_json(const SignMatrix& h);
Json unitary_to_json(const UnitaryMatrix& u, InterferometerKind kind);
/// Sign payloads come back as Sylvester specs (checked against H(m));
/// complex payloads as custom specs, validated for unitarity.
InterferometerSpec spec_from_json(const Json& j);

Json distribution_to_json(const Distribution& d);
Distribution distribution_from_json(const Json& j);

Json verdict_to_json(const SuppressionVerdict& v);
Json violation_to_json(const ViolationReport& v);

std::string census_csv_header();
std::string census_csv_row(const CensusReport& r);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

// ---------------------------------------------------------------------------
// Suppression grid figure

enum class Cell : unsigned char { Allowed, SuppressedExact, SuppressedLaw };

struct GridFigure {
  int modes = 0;
  int photons = 0;
  InterferometerKind kind = InterferometerKind::Sylvester;
  std::vector<ModeAssignmentList> labels;  // Q_{n,m}, rows = inputs, columns = outputs
  std::vector<Cell> cells;                 // row-major

  std::size_t size() const { return labels.size(); }
  Cell at(std::size_t row, std::size_t col) const { return cells[row * labels.size() + col]; }
  std::uint64_t suppressed_count() const;
  std::uint64_t law_count() const;
};

inline constexpr std::size_t kMaxGridSide = 1000;

GridFigure build_grid(const InterferometerSpec& spec, int n);

struct Rgb {
  unsigned char r, g, b;
};
inline constexpr Rgb kRed{200, 30, 30};
inline constexpr Rgb kDarkRed{120, 0, 0};
inline constexpr Rgb kGreen{30, 160, 60};

Rgb cell_color(Cell c);

/// Binary P6, cell_size x cell_size pixels per cell.
std::string render_ppm(const GridFigure& grid, int cell_size = 8);
std::string render_svg(const GridFigure& grid, int cell_size = 8);

}  // namespace suppkit
