#pragma once

// Matrix permanents and permanent-based transition amplitudes.
//
// Per(M) = sum over permutations s of prod_i M(i, s(i)). Two evaluators:
// the factorial-time definition (oracle only, n <= 8) and Ryser's
// inclusion-exclusion formula walked in Gray-code order, O(2^n n).
//
// Integer permanents are exact. The Ryser sum runs in wrapping 128-bit
// arithmetic, which is exact whenever the true |Per| < 2^127; a
// row-sum / n! bound is checked up front.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>

#include "suppkit/distribution.hpp"
#include "suppkit/fock.hpp"
#include "suppkit/unitaries.hpp"

namespace suppkit {

using Int128 = __int128;

std::string to_string(Int128 value);

inline constexpr int kMaxNaiveDim = 8;
inline constexpr int kMaxRyserDim = 30;

/// Normalized-permanent magnitude below which a float amplitude counts as
/// suppressed. Equivalent to |Per| <= 1e-9 m^{n/2} on the unit-modulus
/// (unnormalized) matrix.
inline constexpr double kFloatZeroTolerance = 1e-9;

// Square matrices passed as contiguous n*n storage. Layout (row- or
// column-major) does not matter because Per(M) = Per(M^T).
Int128 permanent_naive(std::span<const int> a, int n);
double permanent_naive(std::span<const double> a, int n);
Complex permanent_naive(std::span<const Complex> a, int n);

Int128 permanent_ryser(std::span<const int> a, int n);
double permanent_ryser(std::span<const double> a, int n);
Complex permanent_ryser(std::span<const Complex> a, int n);

Int128 permanent_naive(const IntMatrix& m);
Complex permanent_naive(const ComplexMatrix& m);
Int128 permanent_ryser(const IntMatrix& m);
double permanent_ryser(const Eigen::MatrixXd& m);
Complex permanent_ryser(const ComplexMatrix& m);

struct TransitionPair {
  TransitionPair(OccupationState input, OccupationState output);

  OccupationState input;
  OccupationState output;
};

struct AmplitudeResult {
  Complex amplitude;
  double probability = 0.0;
  /// Integer permanent is exactly zero (sign-matrix specs only).
  bool exact_zero = false;
  /// Exact zero for sign matrices, |Per| <= kFloatZeroTolerance otherwise.
  bool suppressed = false;
  /// Set for sign-matrix specs: Per of the unnormalized +-1 submatrix.
  std::optional<Int128> integer_permanent;
};

/// [M]_{ij} = H[in_i - 1][out_j - 1] from MAL indices (rows repeat for
/// multiply occupied inputs, columns for outputs).
IntMatrix sign_submatrix(const SignMatrix& h, std::span<const int> in_mal,
                         std::span<const int> out_mal);
ComplexMatrix unitary_submatrix(const UnitaryMatrix& u, std::span<const int> in_mal,
                                std::span<const int> out_mal);

/// Integer +-1 submatrix for Sylvester specs (normalization deferred),
/// complex submatrix of the unitary otherwise.
std::variant<IntMatrix, ComplexMatrix> build_submatrix(const InterferometerSpec& spec,
                                                       const TransitionPair& pair);

/// prod_k r_k! * prod_k s_k!, exact while it fits a long double mantissa.
long double factorial_normalization(const OccupationState& input, const OccupationState& output);

AmplitudeResult transition_amplitude(const InterferometerSpec& spec, const TransitionPair& pair);

/// Full quantum output distribution. With collision_free the result is
/// renormalized over Q_{n,m} and raw_mass() reports the mass kept.
Distribution output_distribution(const InterferometerSpec& spec, const OccupationState& input,
                                 bool collision_free);

}  // namespace suppkit
