#include "cli.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "suppkit/census.hpp"
#include "suppkit/error.hpp"
#include "suppkit/io.hpp"
#include "suppkit/models.hpp"
#include "suppkit/permanent.hpp"
#include "suppkit/suppression.hpp"

namespace suppkit::cli {

namespace {

struct Options {
  std::string kind = "sylvester";
  int modes = 0;
  int photons = 0;
  bool normalized = false;
  std::string out_path;
  bool json = false;

  // enumerate
  bool allow_collisions = false;
  std::string encoding = "mal";

  // test
  std::string input;
  std::string output;

  // census
  bool exact = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;

  // grid
  std::string format = "ppm";
  int cell_size = 8;

  // violation
  std::string model = "quantum";
  double p_indist = 1.0;
  double gain = 0.12;
  double heralding = kDefaultHeralding;
  double transmission = kDefaultTransmission;
  std::uint64_t samples = 100'000;
  bool monte_carlo = false;
  std::string dump_path;

  // distance
  std::string file_p;
  std::string file_q;
};

void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out_path.empty()) out << text;
  else write_text_file(o.out_path, text);
}

std::string fixed(double x, int digits) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << x;
  return os.str();
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

void cmd_matrix(const Options& o, std::ostream& out) {
  const auto spec = InterferometerSpec::make(parse_kind(o.kind), o.modes);
  const Json j = spec.has_sign_matrix() && !o.normalized ? sign_matrix_to_json(spec.sign_matrix())
                                                         : unitary_to_json(spec.unitary(), spec.kind());
  emit(o, out, j.dump() + "\n");
}

void cmd_enumerate(const Options& o, std::ostream& out) {
  const bool cf = !o.allow_collisions;
  if (o.encoding != "mal" && o.encoding != "occupation" && o.encoding != "binary") {
    throw Error(ErrorKind::InvalidArgument, "unknown encoding '" + o.encoding + "'");
  }
  if (o.encoding == "binary") bit_width_for(o.modes);
  std::ostringstream os;
  Json list = Json::array();
  for_each_mal(o.photons, o.modes, cf, [&](std::span<const int> modes) {
    const ModeAssignmentList mal(std::vector<int>(modes.begin(), modes.end()));
    if (o.json) {
      if (o.encoding == "occupation") list.push_back(mal_to_occupation(mal, o.modes).counts());
      else if (o.encoding == "binary") list.push_back(mal_to_binary(mal, o.modes).to_string());
      else list.push_back(mal.modes());
      return;
    }
    if (o.encoding == "occupation") os << mal_to_occupation(mal, o.modes).to_string() << '\n';
    else if (o.encoding == "binary") os << mal_to_binary(mal, o.modes).to_string() << '\n';
    else os << mal.to_string() << '\n';
  });
  emit(o, out, o.json ? list.dump() + "\n" : os.str());
}

void cmd_test(const Options& o, std::ostream& out) {
  const auto spec = InterferometerSpec::make(parse_kind(o.kind), o.modes);
  const auto in = parse_mal(o.input, o.modes);
  const auto outp = parse_mal(o.output, o.modes);
  const auto amp = transition_amplitude(spec, TransitionPair(mal_to_occupation(in, o.modes), mal_to_occupation(outp, o.modes)));
  SuppressionVerdict verdict;
  if (spec.has_sign_matrix()) {
    verdict = test_pair_exact(spec.sign_matrix(), in, outp);
  } else {
    verdict.exact_suppressed = amp.suppressed;
  }
  Json j = verdict_to_json(verdict);
  j["amplitude"] = complex_json(amp.amplitude);
  j["probability"] = amp.probability;
  if (amp.integer_permanent) j["integer_permanent"] = to_string(*amp.integer_permanent);
  emit(o, out, j.dump() + "\n");
}

void cmd_census(const Options& o, std::ostream& out) {
  const auto spec = InterferometerSpec::make(parse_kind(o.kind), o.modes);
  const bool cf = !o.allow_collisions;
  CensusReport r;
  if (o.sample > 0) {
    r = census_sampled(spec, o.photons, cf, o.sample, o.seed);
  } else {
    CensusOptions opts;
    opts.budget = o.budget;
    r = census_exact(spec, o.photons, cf, opts);
  }
  if (o.json) {
    Json j{{"kind", to_string(r.kind)},
           {"m", r.modes},
           {"n", r.photons},
           {"collision_free", r.collision_free},
           {"mode", r.mode == CensusMode::Exact ? "exact" : "sampled"},
           {"pairs_total", r.pairs_total},
           {"suppressed_all", r.suppressed_all},
           {"fraction_all", r.fraction_all()},
           {"ci_all", {r.ci_all.low, r.ci_all.high}}};
    if (r.test_applicable) {
      j["suppressed_test"] = r.suppressed_test;
      j["fraction_test"] = r.fraction_test();
      j["ci_test"] = {r.ci_test.low, r.ci_test.high};
    }
    if (r.mode == CensusMode::Sampled) {
      j["N"] = r.samples;
      j["seed"] = r.seed;
    }
    emit(o, out, j.dump() + "\n");
    return;
  }
  emit(o, out, census_csv_header() + "\n" + census_csv_row(r) + "\n");
}

void cmd_grid(const Options& o, std::ostream& out) {
  if (o.format != "ppm" && o.format != "svg") {
    throw Error(ErrorKind::InvalidArgument, "format must be ppm or svg");
  }
  const auto spec = InterferometerSpec::make(parse_kind(o.kind), o.modes);
  const auto grid = build_grid(spec, o.photons);
  const std::string image = o.format == "ppm" ? render_ppm(grid, o.cell_size) : render_svg(grid, o.cell_size);
  write_text_file(o.out_path, image);
  const Json j{{"side", grid.size()}, {"cells", grid.size() * grid.size()},
               {"red", grid.suppressed_count()}, {"law", grid.law_count()}};
  if (o.json) {
    out << j.dump() << '\n';
  } else {
    out << grid.size() << 'x' << grid.size() << " cells, " << grid.suppressed_count() << " red ("
        << grid.law_count() << " law-detected)\n";
  }
}

ModelConfig model_config(const Options& o, int m) {
  ModelConfig cfg;
  cfg.kind = parse_model(o.model);
  cfg.p_indist = o.p_indist;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.force_monte_carlo = o.monte_carlo;
  if (cfg.kind == ModelKind::Noisy) {
    cfg.noise = NoiseParams::uniform(m, o.gain, o.p_indist, o.heralding, o.transmission);
    cfg.noise.validate(m);
  }
  if (o.p_indist < 0.0 || o.p_indist > 1.0) {
    throw Error(ErrorKind::InvalidArgument, "p must lie in [0, 1]");
  }
  return cfg;
}

// Over all of G_{n,m}; the noisy model only yields two-click patterns.
Distribution model_distribution(const InterferometerSpec& spec, const ModeAssignmentList& input,
                                const ModelConfig& cfg) {
  const auto occ = mal_to_occupation(input, spec.dim());
  switch (cfg.kind) {
    case ModelKind::Quantum: return output_distribution(spec, occ, false);
    case ModelKind::Distinguishable: return distinguishable_distribution(spec, occ, false);
    case ModelKind::Mixed: return mixed_distribution(spec, occ, cfg.p_indist);
    case ModelKind::Noisy: {
      if (input.photons() != 2) {
        throw Error(ErrorKind::InvalidArgument, "the noisy source model is a two-photon model");
      }
      return noisy_event_model(spec, cfg.noise, input[0], input[1]).patterns;
    }
    case ModelKind::MeanField: {
      auto mf = MeanFieldSpec::for_input(input, cfg.samples, cfg.seed);
      if (cfg.force_monte_carlo) mf.sampling = PhaseSampling::MonteCarlo;
      return meanfield_distribution(spec, mf, false).distribution;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown model");
}

void cmd_violation(const Options& o, std::ostream& out) {
  const auto spec = InterferometerSpec::make(parse_kind(o.kind), o.modes);
  const auto cfg = model_config(o, o.modes);
  Json j;
  if (!o.input.empty()) {
    const auto input = parse_mal(o.input, o.modes);
    if (!input.collision_free()) throw Error(ErrorKind::InvalidState, "input must be collision-free");
    if (!o.dump_path.empty()) {
      write_text_file(o.dump_path, distribution_to_json(model_distribution(spec, input, cfg)).dump() + "\n");
    }
    j = violation_to_json(input_violation(spec, input, cfg));
    j["input"] = input.modes();
  } else {
    if (!o.dump_path.empty()) throw Error(ErrorKind::InvalidArgument, "--dump needs --input");
    const auto avg = average_violation(spec, o.photons, cfg);
    j = violation_to_json(avg.average);
    j["inputs"] = avg.per_input.size();
  }
  j["kind"] = to_string(spec.kind());
  j["m"] = o.modes;
  j["n"] = o.input.empty() ? o.photons : parse_mal(o.input, o.modes).photons();
  emit(o, out, j.dump() + "\n");
}

void cmd_distance(const Options& o, std::ostream& out) {
  const auto p = distribution_from_json(read_json_file(o.file_p));
  const auto q = distribution_from_json(read_json_file(o.file_q));
  const double d = total_variation_distance(p, q);
  if (o.json) out << Json{{"distance", d}}.dump() << '\n';
  else out << fixed(d, 12) << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Suppression laws in Sylvester and Fourier interferometers"};
  app.require_subcommand(1);
  Options o;

  auto add_kind = [&](CLI::App* c) { c->add_option("--kind", o.kind, "sylvester | fourier")->capture_default_str(); };
  auto add_modes = [&](CLI::App* c) { c->add_option("-m,--modes", o.modes, "number of modes")->required(); };
  auto add_photons = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("-n,--photons", o.photons, "number of photons");
    if (required) opt->required();
  };

  auto* matrix = app.add_subcommand("matrix", "print the interferometer matrix as JSON");
  add_kind(matrix);
  add_modes(matrix);
  matrix->add_flag("--normalized", o.normalized, "emit the unitary instead of the +-1 matrix");
  matrix->add_option("-o,--out", o.out_path, "output file");

  auto* enumerate = app.add_subcommand("enumerate", "list the states of G_{n,m} or Q_{n,m}");
  add_modes(enumerate);
  add_photons(enumerate, true);
  enumerate->add_flag("--allow-collisions", o.allow_collisions, "include states with repeated modes");
  enumerate->add_option("--encoding", o.encoding, "mal | occupation | binary")->capture_default_str();
  enumerate->add_flag("--json", o.json);
  enumerate->add_option("-o,--out", o.out_path, "output file");

  auto* test = app.add_subcommand("test", "check one transition for suppression");
  add_kind(test);
  add_modes(test);
  test->add_option("--input", o.input, "input state, e.g. 1,2,3,4 or [1,1,1,1,0,0,0,0]")->required();
  test->add_option("--output", o.output, "output state")->required();
  test->add_flag("--json", o.json, "accepted for symmetry; output is always JSON");

  auto* census = app.add_subcommand("census", "count suppressed input/output pairs");
  add_kind(census);
  add_modes(census);
  add_photons(census, true);
  auto* exact = census->add_flag("--exact", o.exact, "enumerate every pair (default)");
  census->add_option("--sample", o.sample, "estimate from N uniformly drawn pairs")->excludes(exact);
  census->add_option("--seed", o.seed)->capture_default_str();
  census->add_option("--budget", o.budget, "largest exact pair count")->capture_default_str();
  census->add_flag("--allow-collisions", o.allow_collisions, "count over G_{n,m} instead of Q_{n,m}");
  census->add_flag("--json", o.json);
  census->add_option("-o,--out", o.out_path, "output file");

  auto* grid = app.add_subcommand("grid", "render the suppression grid");
  add_kind(grid);
  add_modes(grid);
  add_photons(grid, true);
  grid->add_option("--format", o.format, "ppm | svg")->capture_default_str();
  grid->add_option("--cell-size", o.cell_size, "pixels per cell")->capture_default_str();
  grid->add_option("-o,--out", o.out_path, "image file")->required();
  grid->add_flag("--json", o.json);

  auto* violation = app.add_subcommand("violation", "degree of violation under a model");
  add_kind(violation);
  add_modes(violation);
  add_photons(violation, false);
  violation->add_option("--model", o.model, "quantum | distinguishable | meanfield | mixed | noisy")
      ->capture_default_str();
  violation->add_option("--input", o.input, "single input (default: average over all of Q_{n,m})");
  violation->add_option("--p", o.p_indist, "indistinguishability")->capture_default_str();
  violation->add_option("--gain", o.gain, "source gain g (noisy model)")->capture_default_str();
  violation->add_option("--heralding", o.heralding, "heralding efficiency")->capture_default_str();
  violation->add_option("--transmission", o.transmission, "transmission tau")->capture_default_str();
  violation->add_option("--samples", o.samples, "mean-field phase samples")->capture_default_str();
  violation->add_flag("--monte-carlo", o.monte_carlo, "sample phases even when n = 2");
  violation->add_option("--seed", o.seed)->capture_default_str();
  violation->add_option("--dump", o.dump_path, "write the model distribution over G_{n,m} (needs --input)");
  violation->add_flag("--json", o.json, "accepted for symmetry; output is always JSON");
  violation->add_option("-o,--out", o.out_path, "output file");

  auto* distance = app.add_subcommand("distance", "total variation distance of two distribution files");
  distance->add_option("P", o.file_p)->required();
  distance->add_option("Q", o.file_q)->required();
  distance->add_flag("--json", o.json);

  std::vector<std::string> rest(args.size() > 1 ? args.begin() + 1 : args.end(), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (matrix->parsed()) cmd_matrix(o, out);
    else if (enumerate->parsed()) cmd_enumerate(o, out);
    else if (test->parsed()) cmd_test(o, out);
    else if (census->parsed()) cmd_census(o, out);
    else if (grid->parsed()) cmd_grid(o, out);
    else if (violation->parsed()) {
      if (o.input.empty() && o.photons == 0) throw Error(ErrorKind::InvalidArgument, "need --photons or --input");
      cmd_violation(o, out);
    } else if (distance->parsed()) cmd_distance(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace suppkit::cli
