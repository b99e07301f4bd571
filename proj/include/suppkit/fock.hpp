#pragma once

// Photon-number states of an m-mode interferometer in three encodings:
// occupation counts |r_1,...,r_m>, the sorted list of occupied modes (MAL),
// and the n x w bit matrix whose rows are (mode - 1) in binary (m = 2^w).
//
// Modes are 1-based in the occupation and MAL encodings and 0-based inside
// binary rows.

#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace suppkit {

class OccupationState {
 public:
  OccupationState() = default;
  explicit OccupationState(std::vector<int> counts);
  OccupationState(std::initializer_list<int> counts)
      : OccupationState(std::vector<int>(counts)) {}

  /// All-empty state on m modes.
  static OccupationState vacuum(int m);

  const std::vector<int>& counts() const noexcept { return counts_; }
  int photons() const noexcept { return n_; }
  int modes() const noexcept { return static_cast<int>(counts_.size()); }
  int operator[](int mode) const { return counts_.at(mode - 1); }
  bool collision_free() const noexcept;

  std::string to_string() const;

  auto operator<=>(const OccupationState&) const = default;

 private:
  std::vector<int> counts_;
  int n_ = 0;
};

class ModeAssignmentList {
 public:
  ModeAssignmentList() = default;
  /// Sorts the entries; every entry must be >= 1.
  explicit ModeAssignmentList(std::vector<int> modes);
  ModeAssignmentList(std::initializer_list<int> modes)
      : ModeAssignmentList(std::vector<int>(modes)) {}

  const std::vector<int>& modes() const noexcept { return modes_; }
  int photons() const noexcept { return static_cast<int>(modes_.size()); }
  int operator[](std::size_t i) const { return modes_[i]; }
  bool empty() const noexcept { return modes_.empty(); }
  int max_mode() const noexcept { return modes_.empty() ? 0 : modes_.back(); }
  bool collision_free() const noexcept;

  std::string to_string() const;

  auto operator<=>(const ModeAssignmentList&) const = default;

 private:
  std::vector<int> modes_;
};

/// Bit-matrix encoding. Column 1 is the most significant bit of a row.
class BinaryMatrix {
 public:
  using Row = std::uint32_t;

  BinaryMatrix(std::vector<Row> rows, int width);

  const std::vector<Row>& rows() const noexcept { return rows_; }
  int width() const noexcept { return width_; }
  int photons() const noexcept { return static_cast<int>(rows_.size()); }
  /// Bit at 1-based column `column` of row `row` (0-based).
  int bit(std::size_t row, int column) const;

  std::string to_string() const;

  bool operator==(const BinaryMatrix&) const = default;

 private:
  std::vector<Row> rows_;
  int width_;
};

bool is_power_of_two(long long m) noexcept;
/// log2(m); throws UnsupportedDimension unless m is a power of two.
int bit_width_for(int m);

/// XOR mask selecting the given 1-based columns of a width-w row.
BinaryMatrix::Row column_mask(std::span<const int> columns, int width);

ModeAssignmentList occupation_to_mal(const OccupationState& state);
OccupationState mal_to_occupation(const ModeAssignmentList& mal, int m);
BinaryMatrix mal_to_binary(const ModeAssignmentList& mal, int m);
ModeAssignmentList binary_to_mal(const BinaryMatrix& bm);
BinaryMatrix canonical_form(const BinaryMatrix& bm);
BinaryMatrix negate_columns(const BinaryMatrix& bm, std::span<const int> columns);
BinaryMatrix negate_columns(const BinaryMatrix& bm, std::initializer_list<int> columns);

/// Exact binomial coefficient; throws InvalidArgument on 64-bit overflow.
std::uint64_t binomial(long long n, long long k);

/// |G_{n,m}| = C(m+n-1, n) or |Q_{n,m}| = C(m, n).
std::uint64_t count_states(int n, int m, bool collision_free);

/// Visits every state in lexicographic MAL order. The callback receives
/// the MAL entries (1-based modes).
void for_each_mal(int n, int m, bool collision_free,
                  const std::function<void(std::span<const int>)>& visit);

std::vector<ModeAssignmentList> enumerate_mals(int n, int m, bool collision_free);
std::vector<OccupationState> enumerate_states(int n, int m, bool collision_free);

/// Parses "1,2,3,8" (MAL) or "[1,1,1,0,0,0,0,1]" (occupation) on m modes.
OccupationState parse_state(std::string_view text, int m);
ModeAssignmentList parse_mal(std::string_view text, int m);

}  // namespace suppkit
