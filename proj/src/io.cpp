#include "suppkit/io.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "suppkit/error.hpp"
#include "suppkit/fock.hpp"

namespace suppkit {

Json sign_matrix_to_json(const SignMatrix& h) {
  Json entries = Json::array();
  for (int i = 0; i < h.dim(); ++i) {
    for (int j = 0; j < h.dim(); ++j) entries.push_back(h(i, j));
  }
  return Json{{"kind", "sylvester"}, {"dim", h.dim()}, {"entries", std::move(entries)}};
}

Json unitary_to_json(const UnitaryMatrix& u, InterferometerKind kind) {
  Json entries = Json::array();
  for (int i = 0; i < u.dim(); ++i) {
    for (int j = 0; j < u.dim(); ++j) entries.push_back(Json::array({u(i, j).real(), u(i, j).imag()}));
  }
  return Json{{"kind", to_string(kind)}, {"dim", u.dim()}, {"entries", std::move(entries)}};
}

InterferometerSpec spec_from_json(const Json& j) {
  try {
    const auto kind = parse_kind(j.at("kind").get<std::string>());
    const int dim = j.at("dim").get<int>();
    const auto& entries = j.at("entries");
    if (dim < 1 || entries.size() != static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim)) {
      throw Error(ErrorKind::Parse, "matrix JSON entry count does not match dim");
    }
    if (entries.empty() || entries.front().is_number()) {
      IntMatrix signs(dim, dim);
      for (int r = 0; r < dim; ++r) {
        for (int c = 0; c < dim; ++c) signs(r, c) = entries.at(static_cast<std::size_t>(r * dim + c)).get<int>();
      }
      const SignMatrix h(signs);
      if (kind != InterferometerKind::Sylvester || !(h == sylvester_sign_matrix(dim))) {
        throw Error(ErrorKind::Parse, "integer matrices must be the Sylvester matrix H(m)");
      }
      return InterferometerSpec::sylvester(dim);
    }
    ComplexMatrix u(dim, dim);
    for (int r = 0; r < dim; ++r) {
      for (int c = 0; c < dim; ++c) {
        const auto& e = entries.at(static_cast<std::size_t>(r * dim + c));
        u(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
    if (kind != InterferometerKind::Custom) {
      const auto reference = InterferometerSpec::make(kind, dim);
      if ((reference.unitary().entries() - u).cwiseAbs().maxCoeff() <= 1e-12) return reference;
      throw Error(ErrorKind::Parse, std::string("entries do not match the ") + to_string(kind) + " matrix");
    }
    return InterferometerSpec::custom(UnitaryMatrix(std::move(u)));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed matrix JSON: ") + e.what());
  }
}

Json distribution_to_json(const Distribution& d) {
  Json entries = Json::array();
  for (const auto& e : d.entries()) entries.push_back(Json{{"output", e.output.modes()}, {"p", e.p}});
  return Json{{"modes", d.modes()},
              {"photons", d.photons()},
              {"collision_free", d.collision_free()},
              {"entries", std::move(entries)}};
}

Distribution distribution_from_json(const Json& j) {
  try {
    const int m = j.at("modes").get<int>();
    const int n = j.at("photons").get<int>();
    const bool cf = j.at("collision_free").get<bool>();
    std::vector<DistributionEntry> entries;
    for (const auto& e : j.at("entries")) {
      ModeAssignmentList out(e.at("output").get<std::vector<int>>());
      if (out.photons() != n || out.max_mode() > m) {
        throw Error(ErrorKind::Parse, "entry " + out.to_string() + " does not fit the header");
      }
      entries.push_back({std::move(out), e.at("p").get<double>()});
    }
    return Distribution(m, n, cf, std::move(entries));
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, std::string("malformed distribution JSON: ") + e.what());
  }
}

Json verdict_to_json(const SuppressionVerdict& v) {
  Json out{{"law_suppressed", v.law_suppressed}};
  out["witness"] = v.witness ? Json(v.witness->columns()) : Json(nullptr);
  out["exact_suppressed"] = v.exact_suppressed ? Json(*v.exact_suppressed) : Json(nullptr);
  return out;
}

Json violation_to_json(const ViolationReport& v) {
  return Json{{"model", v.model}, {"nu", v.nu}, {"forbidden", v.forbidden},
              {"total", v.total}, {"std_error", v.std_error}};
}

std::string census_csv_header() {
  return "kind,m,n,collision_free,pairs_total,suppressed_all,suppressed_test,fraction_all,"
         "fraction_test,mode,N,seed,ci_low_all,ci_high_all,ci_low_test,ci_high_test";
}

std::string census_csv_row(const CensusReport& r) {
  std::ostringstream os;
  os << std::setprecision(10);
  const bool sampled = r.mode == CensusMode::Sampled;
  os << to_string(r.kind) << ',' << r.modes << ',' << r.photons << ','
     << (r.collision_free ? "true" : "false") << ',' << r.pairs_total << ',' << r.suppressed_all << ',';
  if (r.test_applicable) {
    os << r.suppressed_test;
  }
  os << ',' << r.fraction_all() << ',';
  if (r.test_applicable) os << r.fraction_test();
  os << ',' << (sampled ? "sampled" : "exact") << ',';
  if (sampled) os << r.samples << ',' << r.seed;
  else os << ',';
  os << ',' << r.ci_all.low << ',' << r.ci_all.high << ',';
  if (r.test_applicable) os << r.ci_test.low << ',' << r.ci_test.high;
  else os << ',';
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Parse, "'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  out << contents;
}

// ---------------------------------------------------------------------------
// Grid

std::uint64_t GridFigure::suppressed_count() const {
  return static_cast<std::uint64_t>(
      std::count_if(cells.begin(), cells.end(), [](Cell c) { return c != Cell::Allowed; }));
}

std::uint64_t GridFigure::law_count() const {
  return static_cast<std::uint64_t>(std::count(cells.begin(), cells.end(), Cell::SuppressedLaw));
}

GridFigure build_grid(const InterferometerSpec& spec, int n) {
  GridFigure grid;
  grid.modes = spec.dim();
  grid.photons = n;
  grid.kind = spec.kind();
  if (count_states(n, spec.dim(), true) > kMaxGridSide) {
    throw Error(ErrorKind::InvalidArgument, "grid would exceed 1000 states per axis");
  }
  grid.labels = enumerate_mals(n, spec.dim(), true);
  const std::size_t side = grid.labels.size();
  grid.cells.assign(side * side, Cell::Allowed);
  const bool law = spec.kind() == InterferometerKind::Sylvester;
  for (std::size_t a = 0; a < side; ++a) {
    std::optional<WitnessFamily> family;
    if (law) family = find_witness_subsets(mal_to_binary(grid.labels[a], spec.dim()));
    for (std::size_t b = 0; b < side; ++b) {
      Cell c = Cell::Allowed;
      if (pair_suppressed(spec, grid.labels[a], grid.labels[b])) {
        c = Cell::SuppressedExact;
        if (law && test_pair(*family, mal_to_binary(grid.labels[b], spec.dim())).law_suppressed) {
          c = Cell::SuppressedLaw;
        }
      }
      grid.cells[a * side + b] = c;
    }
  }
  return grid;
}

Rgb cell_color(Cell c) {
  switch (c) {
    case Cell::Allowed: return kGreen;
    case Cell::SuppressedExact: return kRed;
    case Cell::SuppressedLaw: return kDarkRed;
  }
  return kGreen;
}

std::string render_ppm(const GridFigure& grid, int cell_size) {
  if (cell_size < 1) throw Error(ErrorKind::InvalidArgument, "cell size must be positive");
  const std::size_t side = grid.size();
  const std::size_t px = side * static_cast<std::size_t>(cell_size);
  std::string out = "P6\n" + std::to_string(px) + " " + std::to_string(px) + "\n255\n";
  out.reserve(out.size() + px * px * 3);
  for (std::size_t y = 0; y < px; ++y) {
    const std::size_t row = y / static_cast<std::size_t>(cell_size);
    for (std::size_t x = 0; x < px; ++x) {
      const Rgb color = cell_color(grid.at(row, x / static_cast<std::size_t>(cell_size)));
      out.push_back(static_cast<char>(color.r));
      out.push_back(static_cast<char>(color.g));
      out.push_back(static_cast<char>(color.b));
    }
  }
  return out;
}

namespace {

std::string svg_color(Rgb c) {
  return "rgb(" + std::to_string(c.r) + "," + std::to_string(c.g) + "," + std::to_string(c.b) + ")";
}

std::string label_text(const ModeAssignmentList& mal) {
  std::string s;
  for (std::size_t i = 0; i < mal.modes().size(); ++i) {
    if (i) s += ',';
    s += std::to_string(mal.modes()[i]);
  }
  return s;
}

}  // namespace

std::string render_svg(const GridFigure& grid, int cell_size) {
  if (cell_size < 1) throw Error(ErrorKind::InvalidArgument, "cell size must be positive");
  const std::size_t side = grid.size();
  const int margin = 12 + 7 * (2 * grid.photons);  // room for "a,b,c" labels
  const std::size_t body = side * static_cast<std::size_t>(cell_size);
  const std::size_t total = body + static_cast<std::size_t>(margin);
  const int font = std::max(4, cell_size - 1);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << total << "\" height=\"" << total
     << "\" viewBox=\"0 0 " << total << ' ' << total << "\">\n";
  os << "<title>" << to_string(grid.kind) << " m=" << grid.modes << " n=" << grid.photons << "</title>\n";
  os << "<g font-family=\"monospace\" font-size=\"" << font << "\">\n";
  for (std::size_t i = 0; i < side; ++i) {
    const std::size_t pos = static_cast<std::size_t>(margin) + i * static_cast<std::size_t>(cell_size) +
                            static_cast<std::size_t>(cell_size) - 1;
    os << "<text x=\"" << margin - 2 << "\" y=\"" << pos << "\" text-anchor=\"end\">"
       << label_text(grid.labels[i]) << "</text>\n";
    os << "<text transform=\"translate(" << pos << ',' << margin - 2
       << ") rotate(-90)\">" << label_text(grid.labels[i]) << "</text>\n";
  }
  os << "</g>\n<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) {
      os << "<rect x=\"" << margin + static_cast<int>(c) * cell_size << "\" y=\""
         << margin + static_cast<int>(r) * cell_size << "\" width=\"" << cell_size << "\" height=\""
         << cell_size << "\" fill=\"" << svg_color(cell_color(grid.at(r, c))) << "\"/>\n";
    }
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace suppkit
