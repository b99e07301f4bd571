#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "suppkit/distribution.hpp"
#include "suppkit/fock.hpp"
#include "suppkit/models.hpp"
#include "suppkit/unitaries.hpp"

namespace suppkit {

enum class CensusMode { Exact, Sampled };

struct Interval {
  double low = 0.0;
  double high = 0.0;
};

/// Wilson score interval for k successes in n trials at z standard errors.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z = 1.959963984540054);

/// Suppressed ordered (input, output) pairs. In exact mode the counts are
/// over all pairs; in sampled mode they count hits among `samples` draws.
struct CensusReport {
  InterferometerKind kind = InterferometerKind::Sylvester;
  int modes = 0;
  int photons = 0;
  bool collision_free = true;
  std::uint64_t pairs_total = 0;
  std::uint64_t suppressed_all = 0;
  /// Pairs the law detects in either direction (r -> s or s -> r; the
  /// Sylvester amplitude is symmetric). Only meaningful for Sylvester specs.
  std::uint64_t suppressed_test = 0;
  /// Pairs detected with r as the input only.
  std::uint64_t suppressed_test_forward = 0;
  bool test_applicable = false;
  CensusMode mode = CensusMode::Exact;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  Interval ci_all;
  Interval ci_test;
  std::uint64_t permanent_evaluations = 0;
  /// Law-detected pairs whose exact permanent was nonzero (must stay 0).
  std::uint64_t law_violations = 0;

  double fraction_all() const;
  double fraction_test() const;
  std::uint64_t trials() const { return mode == CensusMode::Exact ? pairs_total : samples; }
};

struct CensusOptions {
  std::uint64_t budget = 100'000'000;
  /// Reduce pairs to orbits of the mode-translation group (XOR shifts for
  /// Sylvester, cyclic shifts for Fourier). Counts are unchanged.
  bool use_symmetry = true;
  int threads = 0;
};

CensusReport census_exact(const InterferometerSpec& spec, int n, bool collision_free,
                          const CensusOptions& options = {});

CensusReport census_sampled(const InterferometerSpec& spec, int n, bool collision_free,
                            std::uint64_t samples, std::uint64_t seed, int threads = 0);

/// A state orbit under mode translations: representative and orbit size.
struct Orbit {
  ModeAssignmentList representative;
  std::uint64_t size = 1;
};

/// Orbits of the states of G_{n,m} (or Q_{n,m}) under the translation group
/// matching `kind`; custom specs get singleton orbits.
std::vector<Orbit> translation_orbits(InterferometerKind kind, int n, int m, bool collision_free);

/// Exact suppression test for one pair: integer permanent for Sylvester
/// specs, |Per| <= kFloatZeroTolerance otherwise.
bool pair_suppressed(const InterferometerSpec& spec, const ModeAssignmentList& input,
                     const ModeAssignmentList& output);

// ---------------------------------------------------------------------------
// Degree of violation

struct ViolationReport {
  double nu = 0.0;
  double forbidden = 0.0;
  double total = 0.0;
  std::string model;
  /// Standard error when the value comes from Monte Carlo.
  double std_error = 0.0;
};

ViolationReport violation_degree(const Distribution& dist,
                                 const std::vector<ModeAssignmentList>& suppressed,
                                 std::string model = "");
ViolationReport violation_degree(std::uint64_t forbidden_events, std::uint64_t total_events,
                                 std::string model = "");

enum class ModelKind { Quantum, Distinguishable, MeanField, Mixed, Noisy };

const char* to_string(ModelKind kind);
ModelKind parse_model(const std::string& text);

struct ModelConfig {
  ModelKind kind = ModelKind::Quantum;
  double p_indist = 1.0;
  NoiseParams noise;
  /// Mean-field phase averaging: closed form at n = 2 unless forced.
  bool force_monte_carlo = false;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;
};

struct InputViolation {
  ModeAssignmentList input;
  ViolationReport report;
};

struct AverageViolation {
  ViolationReport average;
  std::vector<InputViolation> per_input;
};

/// Outputs in Q_{n,m} with an exactly vanishing amplitude from `input`.
std::vector<ModeAssignmentList> exact_suppressed_outputs(const InterferometerSpec& spec,
                                                         const ModeAssignmentList& input);

/// nu for one collision-free input, post-selected on collision-free outputs.
ViolationReport input_violation(const InterferometerSpec& spec, const ModeAssignmentList& input,
                                const ModelConfig& model);

/// nu averaged uniformly over every collision-free input.
AverageViolation average_violation(const InterferometerSpec& spec, int n, const ModelConfig& model);

/// d = 1/2 sum |P - Q|; throws MismatchedSpaces if the outcome spaces differ.
double total_variation_distance(const Distribution& p, const Distribution& q);

/// |Q_{n,m}| / |G_{n,m}| = C(m, n) / C(m + n - 1, n).
double nocollision_ratio(int n, int m);

}  // namespace suppkit
