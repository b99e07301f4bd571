#include "suppkit/census.hpp"

#include <algorithm>
#include <cmath>

#include "suppkit/error.hpp"
#include "suppkit/parallel.hpp"
#include "suppkit/permanent.hpp"
#include "suppkit/suppression.hpp"

namespace suppkit {

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
  if (trials == 0) return {0.0, 1.0};
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  const double centre = (p + z2 / (2.0 * n)) / (1.0 + z2 / n);
  const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / (1.0 + z2 / n);
  return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double CensusReport::fraction_all() const {
  const auto t = trials();
  return t == 0 ? 0.0 : static_cast<double>(suppressed_all) / static_cast<double>(t);
}

double CensusReport::fraction_test() const {
  const auto t = trials();
  return t == 0 ? 0.0 : static_cast<double>(suppressed_test) / static_cast<double>(t);
}

// ---------------------------------------------------------------------------
// Orbits under mode translation
//
// Sylvester: H[i ^ c][j] = H[i][j] (-1)^{popcount(c & j)}, so shifting every
// input mode label by XOR c flips the signs of whole columns of the
// submatrix, leaving |Per| and the witness family unchanged. The same holds
// for outputs; there the law's parity changes by n * parity(d & A), which is
// even whenever a witness exists. Fourier: F[i + c][j] = F[i][j] w^{c j}
// multiplies columns by phases.

namespace {

using ShiftFn = int (*)(int mode0, int shift, int m);

int xor_shift(int mode0, int shift, int /*m*/) { return mode0 ^ shift; }
int cyclic_shift(int mode0, int shift, int m) { return (mode0 + shift) % m; }

ShiftFn shift_for(InterferometerKind kind) {
  switch (kind) {
    case InterferometerKind::Sylvester: return xor_shift;
    case InterferometerKind::Fourier: return cyclic_shift;
    case InterferometerKind::Custom: break;
  }
  return nullptr;
}

}  // namespace

std::vector<Orbit> translation_orbits(InterferometerKind kind, int n, int m, bool collision_free) {
  std::vector<Orbit> orbits;
  const ShiftFn shift = shift_for(kind);
  if (kind == InterferometerKind::Sylvester) bit_width_for(m);
  std::vector<int> image(static_cast<std::size_t>(n));
  for_each_mal(n, m, collision_free, [&](std::span<const int> mal) {
    if (!shift) {
      orbits.push_back({ModeAssignmentList(std::vector<int>(mal.begin(), mal.end())), 1});
      return;
    }
    int stabilizer = 0;
    bool representative = true;
    for (int c = 0; c < m && representative; ++c) {
      for (std::size_t i = 0; i < mal.size(); ++i) image[i] = shift(mal[i] - 1, c, m) + 1;
      std::sort(image.begin(), image.end());
      const auto cmp = std::lexicographical_compare_three_way(image.begin(), image.end(),
                                                              mal.begin(), mal.end());
      if (cmp < 0) representative = false;
      if (cmp == 0) ++stabilizer;
    }
    if (representative) {
      orbits.push_back({ModeAssignmentList(std::vector<int>(mal.begin(), mal.end())),
                        static_cast<std::uint64_t>(m / stabilizer)});
    }
  });
  return orbits;
}

bool pair_suppressed(const InterferometerSpec& spec, const ModeAssignmentList& input,
                     const ModeAssignmentList& output) {
  if (spec.has_sign_matrix()) {
    return permanent_ryser(sign_submatrix(spec.sign_matrix(), input.modes(), output.modes())) == 0;
  }
  return std::abs(permanent_ryser(unitary_submatrix(spec.unitary(), input.modes(), output.modes()))) <=
         kFloatZeroTolerance;
}

namespace {

// Evaluates one pair from raw MAL storage with a caller-provided buffer.
class PairEvaluator {
 public:
  explicit PairEvaluator(const InterferometerSpec& spec, int n)
      : spec_(spec), n_(n), ints_(static_cast<std::size_t>(n * n)), cplx_(static_cast<std::size_t>(n * n)) {}

  bool suppressed(std::span<const int> in, std::span<const int> out) {
    if (spec_.has_sign_matrix()) {
      const auto& h = spec_.sign_matrix();
      for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) ints_[static_cast<std::size_t>(i * n_ + j)] = h(in[i] - 1, out[j] - 1);
      }
      return permanent_ryser(std::span<const int>(ints_), n_) == 0;
    }
    const auto& u = spec_.unitary();
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) cplx_[static_cast<std::size_t>(i * n_ + j)] = u(in[i] - 1, out[j] - 1);
    }
    return std::abs(permanent_ryser(std::span<const Complex>(cplx_), n_)) <= kFloatZeroTolerance;
  }

 private:
  const InterferometerSpec& spec_;
  int n_;
  std::vector<int> ints_;
  std::vector<Complex> cplx_;
};

std::vector<BinaryMatrix::Row> to_rows(const ModeAssignmentList& mal) {
  std::vector<BinaryMatrix::Row> rows;
  rows.reserve(mal.modes().size());
  for (int mode : mal.modes()) rows.push_back(static_cast<BinaryMatrix::Row>(mode - 1));
  return rows;
}

struct Tally {
  std::uint64_t all = 0;
  std::uint64_t test = 0;
  std::uint64_t forward = 0;
  std::uint64_t violations = 0;
};

CensusReport blank_report(const InterferometerSpec& spec, int n, bool collision_free) {
  CensusReport report;
  report.kind = spec.kind();
  report.modes = spec.dim();
  report.photons = n;
  report.collision_free = collision_free;
  report.test_applicable = spec.kind() == InterferometerKind::Sylvester;
  const std::uint64_t states = count_states(n, spec.dim(), collision_free);
  if (states > (std::uint64_t{1} << 32)) {
    throw Error(ErrorKind::InvalidArgument, "state space too large to count pairs");
  }
  report.pairs_total = states * states;
  return report;
}

}  // namespace

CensusReport census_exact(const InterferometerSpec& spec, int n, bool collision_free,
                          const CensusOptions& options) {
  auto report = blank_report(spec, n, collision_free);
  const int m = spec.dim();
  const auto kind = options.use_symmetry ? spec.kind() : InterferometerKind::Custom;
  const auto orbits = translation_orbits(kind, n, m, collision_free);
  const std::uint64_t evaluations = static_cast<std::uint64_t>(orbits.size()) * orbits.size();
  if (evaluations > options.budget) {
    throw Error(ErrorKind::BudgetExceeded,
                "exact census needs " + std::to_string(evaluations) +
                    " permanent evaluations, over budget; use census_sampled");
  }
  report.permanent_evaluations = evaluations;

  const bool with_law = report.test_applicable;
  std::vector<WitnessFamily> families;
  std::vector<std::vector<BinaryMatrix::Row>> rows;
  if (with_law) {
    const int w = bit_width_for(m);
    for (const auto& o : orbits) {
      rows.push_back(to_rows(o.representative));
      families.push_back(find_witness_subsets(rows.back(), w));
    }
  }

  std::vector<Tally> tallies(orbits.size());
  parallel_for(
      orbits.size(),
      [&](std::size_t a) {
        PairEvaluator eval(spec, n);
        Tally& t = tallies[a];
        const auto& in = orbits[a].representative.modes();
        for (std::size_t b = 0; b < orbits.size(); ++b) {
          const std::uint64_t weight = orbits[a].size * orbits[b].size;
          const bool zero = eval.suppressed(in, orbits[b].representative.modes());
          if (zero) t.all += weight;
          if (with_law) {
            const bool forward = first_odd_witness(families[a], rows[b]) >= 0;
            if (forward) t.forward += weight;
            if (forward || first_odd_witness(families[b], rows[a]) >= 0) {
              t.test += weight;
              if (!zero) t.violations += weight;
            }
          }
        }
      },
      options.threads);

  for (const auto& t : tallies) {
    report.suppressed_all += t.all;
    report.suppressed_test += t.test;
    report.suppressed_test_forward += t.forward;
    report.law_violations += t.violations;
  }
  report.ci_all = {report.fraction_all(), report.fraction_all()};
  report.ci_test = {report.fraction_test(), report.fraction_test()};
  return report;
}

CensusReport census_sampled(const InterferometerSpec& spec, int n, bool collision_free,
                            std::uint64_t samples, std::uint64_t seed, int threads) {
  if (samples < 1) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  auto report = blank_report(spec, n, collision_free);
  report.mode = CensusMode::Sampled;
  report.samples = samples;
  report.seed = seed;
  report.permanent_evaluations = samples;
  const int m = spec.dim();
  const auto states = enumerate_mals(n, m, collision_free);
  const bool with_law = report.test_applicable;
  std::vector<WitnessFamily> families;
  std::vector<std::vector<BinaryMatrix::Row>> rows;
  if (with_law) {
    const int w = bit_width_for(m);
    families.reserve(states.size());
    rows.reserve(states.size());
    for (const auto& s : states) {
      rows.push_back(to_rows(s));
      families.push_back(find_witness_subsets(rows.back(), w));
    }
  }

  constexpr std::uint64_t kChunk = 8192;
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Tally> tallies(chunks);
  parallel_for(
      chunks,
      [&](std::size_t chunk) {
        auto rng = substream(seed, chunk);
        std::uniform_int_distribution<std::size_t> pick(0, states.size() - 1);
        PairEvaluator eval(spec, n);
        Tally& t = tallies[chunk];
        const std::uint64_t count = std::min(kChunk, samples - chunk * kChunk);
        for (std::uint64_t k = 0; k < count; ++k) {
          const std::size_t a = pick(rng);
          const std::size_t b = pick(rng);
          const bool zero = eval.suppressed(states[a].modes(), states[b].modes());
          if (zero) ++t.all;
          if (with_law) {
            const bool forward = first_odd_witness(families[a], rows[b]) >= 0;
            if (forward) ++t.forward;
            if (forward || first_odd_witness(families[b], rows[a]) >= 0) {
              ++t.test;
              if (!zero) ++t.violations;
            }
          }
        }
      },
      threads);

  for (const auto& t : tallies) {
    report.suppressed_all += t.all;
    report.suppressed_test += t.test;
    report.suppressed_test_forward += t.forward;
    report.law_violations += t.violations;
  }
  report.ci_all = wilson_interval(report.suppressed_all, samples);
  report.ci_test = wilson_interval(report.suppressed_test, samples);
  return report;
}

// ---------------------------------------------------------------------------
// Violation

ViolationReport violation_degree(const Distribution& dist,
                                 const std::vector<ModeAssignmentList>& suppressed,
                                 std::string model) {
  ViolationReport report;
  report.model = std::move(model);
  report.total = dist.total();
  for (const auto& s : suppressed) report.forbidden += dist.probability(s);
  if (report.total <= 0.0) throw Error(ErrorKind::InvalidArgument, "distribution has no mass");
  report.nu = report.forbidden / report.total;
  return report;
}

ViolationReport violation_degree(std::uint64_t forbidden_events, std::uint64_t total_events,
                                 std::string model) {
  if (total_events == 0) throw Error(ErrorKind::InvalidArgument, "no events recorded");
  if (forbidden_events > total_events) {
    throw Error(ErrorKind::InvalidArgument, "more forbidden events than events");
  }
  ViolationReport report;
  report.model = std::move(model);
  report.forbidden = static_cast<double>(forbidden_events);
  report.total = static_cast<double>(total_events);
  report.nu = report.forbidden / report.total;
  return report;
}

const char* to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::Quantum: return "quantum";
    case ModelKind::Distinguishable: return "distinguishable";
    case ModelKind::MeanField: return "meanfield";
    case ModelKind::Mixed: return "mixed";
    case ModelKind::Noisy: return "noisy";
  }
  return "unknown";
}

ModelKind parse_model(const std::string& text) {
  for (auto kind : {ModelKind::Quantum, ModelKind::Distinguishable, ModelKind::MeanField,
                    ModelKind::Mixed, ModelKind::Noisy}) {
    if (text == to_string(kind)) return kind;
  }
  throw Error(ErrorKind::Parse, "unknown model '" + text + "'");
}

std::vector<ModeAssignmentList> exact_suppressed_outputs(const InterferometerSpec& spec,
                                                         const ModeAssignmentList& input) {
  std::vector<ModeAssignmentList> out;
  for (auto& s : enumerate_mals(input.photons(), spec.dim(), true)) {
    if (pair_suppressed(spec, input, s)) out.push_back(std::move(s));
  }
  return out;
}

ViolationReport input_violation(const InterferometerSpec& spec, const ModeAssignmentList& input,
                                const ModelConfig& model) {
  const int m = spec.dim();
  const auto occ = mal_to_occupation(input, m);
  const auto suppressed = exact_suppressed_outputs(spec, input);
  const std::string tag = to_string(model.kind);
  switch (model.kind) {
    case ModelKind::Quantum:
      return violation_degree(output_distribution(spec, occ, true), suppressed, tag);
    case ModelKind::Distinguishable:
      return violation_degree(distinguishable_distribution(spec, occ, true), suppressed, tag);
    case ModelKind::Mixed:
      return violation_degree(post_select_collision_free(mixed_distribution(spec, occ, model.p_indist)),
                              suppressed, tag);
    case ModelKind::Noisy: {
      if (input.photons() != 2) {
        throw Error(ErrorKind::InvalidArgument, "the noisy source model is a two-photon model");
      }
      const auto result = noisy_event_model(spec, model.noise, input[0], input[1]);
      return violation_degree(result.patterns, suppressed, tag);
    }
    case ModelKind::MeanField: {
      auto mf = MeanFieldSpec::for_input(input, model.samples, model.seed);
      if (model.force_monte_carlo) mf.sampling = PhaseSampling::MonteCarlo;
      const auto est = meanfield_violation(spec, mf, [&](const ModeAssignmentList& s) {
        return std::binary_search(suppressed.begin(), suppressed.end(), s);
      });
      ViolationReport report;
      report.model = tag;
      report.nu = est.value;
      report.forbidden = est.value;
      report.total = 1.0;
      report.std_error = est.std_error;
      return report;
    }
  }
  throw Error(ErrorKind::InvalidArgument, "unknown model");
}

AverageViolation average_violation(const InterferometerSpec& spec, int n, const ModelConfig& model) {
  const auto inputs = enumerate_mals(n, spec.dim(), true);
  AverageViolation result;
  result.per_input.resize(inputs.size());
  parallel_for(inputs.size(), [&](std::size_t idx) {
    ModelConfig local = model;
    // distinct, reproducible phase streams per input
    local.seed = model.seed + 0x9E3779B97F4A7C15ULL * (idx + 1);
    result.per_input[idx] = {inputs[idx], input_violation(spec, inputs[idx], local)};
  });
  double var = 0.0;
  for (const auto& iv : result.per_input) {
    result.average.nu += iv.report.nu;
    result.average.forbidden += iv.report.forbidden;
    result.average.total += iv.report.total;
    var += iv.report.std_error * iv.report.std_error;
  }
  const double count = static_cast<double>(inputs.size());
  result.average.nu /= count;
  result.average.std_error = std::sqrt(var) / count;
  result.average.model = to_string(model.kind);
  return result;
}

double total_variation_distance(const Distribution& p, const Distribution& q) {
  if (!p.same_space(q)) {
    throw Error(ErrorKind::MismatchedSpaces, "distributions are over different outcome spaces");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.entries().size(); ++i) {
    sum += std::abs(p.entries()[i].p - q.entries()[i].p);
  }
  return 0.5 * sum;
}

double nocollision_ratio(int n, int m) {
  if (n < 0 || m < 1 || n > m) throw Error(ErrorKind::InvalidArgument, "need 0 <= n <= m");
  // C(m,n)/C(m+n-1,n) = prod_{i<n} (m - i) / (m + n - 1 - i)
  long double ratio = 1.0L;
  for (int i = 0; i < n; ++i) {
    ratio *= static_cast<long double>(m - i) / static_cast<long double>(m + n - 1 - i);
  }
  return static_cast<double>(ratio);
}

}  // namespace suppkit
