#pragma once

// Alternative and imperfect-source models for the output statistics:
// distinguishable particles, random-phase mean-field states, the two-photon
// partial-indistinguishability mixture, and heralded PDC sources with
// multi-pair emission seen through bucket detectors.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "suppkit/distribution.hpp"
#include "suppkit/fock.hpp"
#include "suppkit/unitaries.hpp"

namespace suppkit {

/// P(s) = Per(|U_{r,s}|^2) / prod_k s_k!.
Distribution distinguishable_distribution(const InterferometerSpec& spec,
                                          const OccupationState& input,
                                          bool collision_free = false);

enum class PhaseSampling { ClosedForm, MonteCarlo };

struct MeanFieldSpec {
  /// Modes (1-based) the single-particle wavefunction is spread over.
  std::vector<int> input_modes;
  int photons = 0;
  PhaseSampling sampling = PhaseSampling::ClosedForm;
  std::uint64_t samples = 100'000;
  std::uint64_t seed = 0;

  /// Closed form for two photons, Monte Carlo otherwise.
  static MeanFieldSpec for_input(const ModeAssignmentList& input, std::uint64_t samples = 100'000,
                                 std::uint64_t seed = 0);
};

struct MeanFieldEstimate {
  Distribution distribution;
  /// Standard error of each entry (zero for the closed form).
  std::vector<double> std_error;
};

/// Each of n particles independently lands in mode k with probability
/// q_k = |sum_{r in A} e^{i theta_r} U_{j_r,k}|^2 / n; the multinomial
/// outcome is averaged over uniform phases. With collision_free the result
/// is post-selected on Q_{n,m}.
MeanFieldEstimate meanfield_distribution(const InterferometerSpec& spec, const MeanFieldSpec& mf,
                                         bool collision_free);

struct RatioEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

/// Collision-free post-selected mass on outputs flagged by `suppressed`
/// (delta-method standard error for the Monte Carlo ratio).
RatioEstimate meanfield_violation(const InterferometerSpec& spec, const MeanFieldSpec& mf,
                                  const std::function<bool(const ModeAssignmentList&)>& suppressed);

/// p * quantum + (1 - p) * distinguishable, over G_{2,m}.
Distribution mixed_distribution(const InterferometerSpec& spec, const OccupationState& input,
                                double p_indist);

/// V = (P_D - P_Q) / P_D at `output`.
double hom_visibility(const Distribution& quantum, const Distribution& distinguishable,
                      const ModeAssignmentList& output);

struct NoiseParams {
  /// Per-source nonlinear gain, one source per input mode.
  std::vector<double> gain;
  double p_indist = 1.0;
  /// Per-source heralding efficiency.
  std::vector<double> heralding;
  /// Probability that an injected photon reaches and fires its detector.
  double transmission = 1.0;

  static NoiseParams uniform(int m, double gain, double p_indist, double heralding,
                             double transmission);
  void validate(int m) const;
};

inline constexpr double kDefaultHeralding = 0.15;
inline constexpr double kDefaultTransmission = 0.015;

struct NoisyEventResult {
  /// Two-click output patterns, normalized over the post-selected events.
  Distribution patterns;
  /// Unnormalized rates per pattern (same order as patterns.entries()).
  std::vector<double> rates;
  double correct_rate = 0.0;
  double three_source_rate = 0.0;
  double double_pair_rate = 0.0;

  double event_rate() const { return correct_rate + three_source_rate + double_pair_rate; }
};

/// Events heralded on inputs (i, j) followed by exactly two output clicks.
/// Weights relative to g_i^2 g_j^2: the correct pair (eta_i eta_j); a third
/// source k emitting unheralded (g_k^2 (1 - eta_k) eta_i eta_j); a double
/// pair from i (g_i^2 (1 - (1 - eta_i)^2) eta_j) or likewise from j. Emission beyond three pairs in
/// total is dropped. Photons are lost independently with 1 - transmission
/// and detectors do not resolve photon number.
NoisyEventResult noisy_event_model(const InterferometerSpec& spec, const NoiseParams& params,
                                   int herald_i, int herald_j);

/// Visibility of a two-source HOM dip on a 50:50 splitter under the noisy
/// model, as seen in coincidence rates.
double noisy_hom_visibility(double p_indist, double gain, double heralding, double transmission);

/// Inverts noisy_hom_visibility for p in [0, 1]; p = V exactly when gain = 0.
double p_from_visibility(double visibility, double gain, double heralding = kDefaultHeralding,
                         double transmission = kDefaultTransmission);

}  // namespace suppkit
