#pragma once

// Suppression law for Sylvester interferometers.
//
// An input R (bit-matrix form) admits a witness column set A when negating
// the columns in A maps R onto itself up to a row permutation. For such an
// A, every output S whose columns A hold an odd total number of ones has a
// vanishing transition amplitude R -> S.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "suppkit/fock.hpp"
#include "suppkit/unitaries.hpp"

namespace suppkit {

/// Set of 1-based bit-matrix columns, stored as the XOR mask it applies.
class ColumnSet {
 public:
  ColumnSet(BinaryMatrix::Row mask, int width) : mask_(mask), width_(width) {}
  static ColumnSet from_columns(std::span<const int> columns, int width);

  BinaryMatrix::Row mask() const noexcept { return mask_; }
  int width() const noexcept { return width_; }
  std::vector<int> columns() const;
  std::string to_string() const;

  bool operator==(const ColumnSet&) const = default;
  /// Lexicographic order of the sorted column lists: {1} < {1,2} < {2}.
  bool operator<(const ColumnSet& other) const;

 private:
  BinaryMatrix::Row mask_;
  int width_;
};

struct WitnessFamily {
  int width = 0;
  /// Every nonempty A with N^A(R) ~ R, in lexicographic order.
  std::vector<ColumnSet> subsets;
  /// Number of independent subsets (GF(2) rank of their masks).
  int dimension = 0;

  bool empty() const noexcept { return subsets.empty(); }
};

struct SuppressionVerdict {
  bool law_suppressed = false;
  std::optional<ColumnSet> witness;
  /// Filled when the exact permanent was evaluated.
  std::optional<bool> exact_suppressed;
};

/// Rank over GF(2) of the given bit vectors.
int gf2_rank(std::span<const BinaryMatrix::Row> vectors);

/// True iff sorting rows and rows ^ mask gives the same multiset.
bool invariant_under_negation(std::span<const BinaryMatrix::Row> rows, BinaryMatrix::Row mask);

WitnessFamily find_witness_subsets(std::span<const BinaryMatrix::Row> rows, int width);
WitnessFamily find_witness_subsets(const BinaryMatrix& r);

/// Index into family.subsets of the first A for which the columns A of S
/// hold an odd number of ones, or -1.
int first_odd_witness(const WitnessFamily& family, std::span<const BinaryMatrix::Row> s_rows);

SuppressionVerdict test_pair(const WitnessFamily& family, const BinaryMatrix& s);
SuppressionVerdict test_pair(const BinaryMatrix& r, const BinaryMatrix& s);

/// Law verdict plus exact integer-permanent check on a Sylvester spec.
SuppressionVerdict test_pair_exact(const SignMatrix& h, const ModeAssignmentList& input,
                                   const ModeAssignmentList& output);

struct PredictedOutputs {
  std::vector<ModeAssignmentList> outputs;
  std::uint64_t count = 0;
  std::uint64_t space_size = 0;
};

/// Every output (over G, or Q when collision_free) that the law flags for
/// input R. Empty when R has no witness.
PredictedOutputs predicted_suppressed_outputs(const BinaryMatrix& r, bool collision_free);

/// Older law for inputs (1 + nc, ..., n + nc) with n = 2^q photons on
/// m = 2^(k+q) modes: outputs whose binary mode labels XOR to nonzero in
/// the low q bits are suppressed. Throws Inapplicable for any other input.
bool bitwise_sum_law(const ModeAssignmentList& input, const ModeAssignmentList& output, int m);
bool bitwise_sum_law_applies(const ModeAssignmentList& input, int m);

struct InputCensus {
  std::uint64_t states = 0;
  std::uint64_t count_with_witness = 0;
  /// (m - 1) C((n + m)/2 - 1, n/2) for even n, 0 for odd n.
  std::uint64_t bound = 0;
};

inline constexpr std::uint64_t kInputCensusLimit = 1'000'000;

InputCensus input_census(int n, int m, bool collision_free);
std::uint64_t input_census_bound(int n, int m);

}  // namespace suppkit
