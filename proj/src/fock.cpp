#include "suppkit/fock.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "suppkit/error.hpp"

namespace suppkit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidMode: return "invalid-mode";
    case ErrorKind::InvalidState: return "invalid-state";
    case ErrorKind::UnsupportedDimension: return "unsupported-dimension";
    case ErrorKind::ColumnOutOfRange: return "column-out-of-range";
    case ErrorKind::Inapplicable: return "inapplicable";
    case ErrorKind::BudgetExceeded: return "budget-exceeded";
    case ErrorKind::UndefinedVisibility: return "undefined-visibility";
    case ErrorKind::NoRoot: return "no-root";
    case ErrorKind::MismatchedSpaces: return "mismatched-spaces";
    case ErrorKind::InvalidArgument: return "invalid-argument";
    case ErrorKind::Parse: return "parse";
  }
  return "unknown";
}

namespace {

std::string join(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// OccupationState

OccupationState::OccupationState(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) throw Error(ErrorKind::InvalidState, "state needs at least one mode");
  for (int c : counts_) {
    if (c < 0) throw Error(ErrorKind::InvalidState, "negative occupation number");
  }
  n_ = std::accumulate(counts_.begin(), counts_.end(), 0);
}

OccupationState OccupationState::vacuum(int m) {
  return OccupationState(std::vector<int>(static_cast<std::size_t>(m), 0));
}

bool OccupationState::collision_free() const noexcept {
  return std::all_of(counts_.begin(), counts_.end(), [](int c) { return c <= 1; });
}

std::string OccupationState::to_string() const { return "[" + join(counts_) + "]"; }

// ---------------------------------------------------------------------------
// ModeAssignmentList

ModeAssignmentList::ModeAssignmentList(std::vector<int> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
  if (!modes_.empty() && modes_.front() < 1) {
    throw Error(ErrorKind::InvalidMode, "mode indices start at 1");
  }
}

bool ModeAssignmentList::collision_free() const noexcept {
  return std::adjacent_find(modes_.begin(), modes_.end()) == modes_.end();
}

std::string ModeAssignmentList::to_string() const { return "(" + join(modes_) + ")"; }

// ---------------------------------------------------------------------------
// BinaryMatrix

BinaryMatrix::BinaryMatrix(std::vector<Row> rows, int width)
    : rows_(std::move(rows)), width_(width) {
  if (width < 0 || width > 31) {
    throw Error(ErrorKind::UnsupportedDimension, "bit width must be in [0, 31]");
  }
  const Row limit = Row{1} << width;
  for (Row r : rows_) {
    if (r >= limit) throw Error(ErrorKind::InvalidState, "row value exceeds bit width");
  }
}

int BinaryMatrix::bit(std::size_t row, int column) const {
  if (column < 1 || column > width_) {
    throw Error(ErrorKind::ColumnOutOfRange, "column " + std::to_string(column) + " out of range");
  }
  return static_cast<int>((rows_.at(row) >> (width_ - column)) & 1U);
}

std::string BinaryMatrix::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (i) out += ',';
    for (int c = 1; c <= width_; ++c) out += static_cast<char>('0' + bit(i, c));
  }
  return out + ")";
}

// ---------------------------------------------------------------------------

bool is_power_of_two(long long m) noexcept { return m > 0 && (m & (m - 1)) == 0; }

int bit_width_for(int m) {
  if (!is_power_of_two(m)) {
    throw Error(ErrorKind::UnsupportedDimension, "dimension must be a power of two");
  }
  int w = 0;
  while ((1 << w) < m) ++w;
  return w;
}

BinaryMatrix::Row column_mask(std::span<const int> columns, int width) {
  BinaryMatrix::Row mask = 0;
  for (int c : columns) {
    if (c < 1 || c > width) {
      throw Error(ErrorKind::ColumnOutOfRange, "column " + std::to_string(c) + " out of range");
    }
    mask |= BinaryMatrix::Row{1} << (width - c);
  }
  return mask;
}

ModeAssignmentList occupation_to_mal(const OccupationState& state) {
  std::vector<int> modes;
  modes.reserve(static_cast<std::size_t>(state.photons()));
  for (int k = 1; k <= state.modes(); ++k) {
    modes.insert(modes.end(), static_cast<std::size_t>(state[k]), k);
  }
  return ModeAssignmentList(std::move(modes));
}

OccupationState mal_to_occupation(const ModeAssignmentList& mal, int m) {
  if (m < 1) throw Error(ErrorKind::InvalidArgument, "mode count must be positive");
  std::vector<int> counts(static_cast<std::size_t>(m), 0);
  for (int mode : mal.modes()) {
    if (mode < 1 || mode > m) {
      throw Error(ErrorKind::InvalidMode,
                  "mode " + std::to_string(mode) + " outside 1.." + std::to_string(m));
    }
    ++counts[static_cast<std::size_t>(mode - 1)];
  }
  return OccupationState(std::move(counts));
}

BinaryMatrix mal_to_binary(const ModeAssignmentList& mal, int m) {
  const int w = bit_width_for(m);
  std::vector<BinaryMatrix::Row> rows;
  rows.reserve(mal.modes().size());
  for (int mode : mal.modes()) {
    if (mode > m) {
      throw Error(ErrorKind::InvalidMode,
                  "mode " + std::to_string(mode) + " outside 1.." + std::to_string(m));
    }
    rows.push_back(static_cast<BinaryMatrix::Row>(mode - 1));
  }
  return BinaryMatrix(std::move(rows), w);
}

ModeAssignmentList binary_to_mal(const BinaryMatrix& bm) {
  std::vector<int> modes;
  modes.reserve(bm.rows().size());
  for (auto r : bm.rows()) modes.push_back(static_cast<int>(r) + 1);
  return ModeAssignmentList(std::move(modes));
}

BinaryMatrix canonical_form(const BinaryMatrix& bm) {
  auto rows = bm.rows();
  std::sort(rows.begin(), rows.end());
  return BinaryMatrix(std::move(rows), bm.width());
}

BinaryMatrix negate_columns(const BinaryMatrix& bm, std::span<const int> columns) {
  const auto mask = column_mask(columns, bm.width());
  auto rows = bm.rows();
  for (auto& r : rows) r ^= mask;
  return BinaryMatrix(std::move(rows), bm.width());
}

BinaryMatrix negate_columns(const BinaryMatrix& bm, std::initializer_list<int> columns) {
  return negate_columns(bm, std::span<const int>(columns.begin(), columns.size()));
}

std::uint64_t binomial(long long n, long long k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 result = 1;
  for (long long i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step
    result = result * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (result > UINT64_MAX) throw Error(ErrorKind::InvalidArgument, "binomial overflows 64 bits");
  }
  return static_cast<std::uint64_t>(result);
}

std::uint64_t count_states(int n, int m, bool collision_free) {
  if (n < 0 || m < 1) throw Error(ErrorKind::InvalidArgument, "need n >= 0 and m >= 1");
  if (collision_free) {
    if (n > m) throw Error(ErrorKind::InvalidArgument, "collision-free states need n <= m");
    return binomial(m, n);
  }
  return binomial(static_cast<long long>(m) + n - 1, n);
}

void for_each_mal(int n, int m, bool collision_free,
                  const std::function<void(std::span<const int>)>& visit) {
  count_states(n, m, collision_free);  // validates arguments
  std::vector<int> mal(static_cast<std::size_t>(n));
  const int step = collision_free ? 1 : 0;
  for (int i = 0; i < n; ++i) mal[static_cast<std::size_t>(i)] = 1 + step * i;
  if (n == 0) {
    visit(mal);
    return;
  }
  // Largest admissible value at position i.
  auto ceiling = [&](int i) { return collision_free ? m - (n - 1 - i) : m; };
  while (true) {
    visit(mal);
    int i = n - 1;
    while (i >= 0 && mal[static_cast<std::size_t>(i)] == ceiling(i)) --i;
    if (i < 0) return;
    ++mal[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) {
      mal[static_cast<std::size_t>(j)] = mal[static_cast<std::size_t>(j - 1)] + step;
    }
  }
}

std::vector<ModeAssignmentList> enumerate_mals(int n, int m, bool collision_free) {
  std::vector<ModeAssignmentList> out;
  out.reserve(count_states(n, m, collision_free));
  for_each_mal(n, m, collision_free, [&](std::span<const int> mal) {
    out.emplace_back(std::vector<int>(mal.begin(), mal.end()));
  });
  return out;
}

std::vector<OccupationState> enumerate_states(int n, int m, bool collision_free) {
  std::vector<OccupationState> out;
  out.reserve(count_states(n, m, collision_free));
  for_each_mal(n, m, collision_free, [&](std::span<const int> mal) {
    std::vector<int> counts(static_cast<std::size_t>(m), 0);
    for (int mode : mal) ++counts[static_cast<std::size_t>(mode - 1)];
    out.emplace_back(std::move(counts));
  });
  return out;
}

namespace {

std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> values;
  std::size_t pos = 0;
  auto skip_space = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  };
  skip_space();
  if (pos == text.size()) return values;
  while (true) {
    skip_space();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
    if (ec != std::errc()) {
      throw Error(ErrorKind::Parse, "expected an integer in '" + std::string(text) + "'");
    }
    pos = static_cast<std::size_t>(ptr - text.data());
    values.push_back(value);
    skip_space();
    if (pos == text.size()) break;
    if (text[pos] != ',') {
      throw Error(ErrorKind::Parse, "expected ',' in '" + std::string(text) + "'");
    }
    ++pos;
  }
  return values;
}

}  // namespace

OccupationState parse_state(std::string_view text, int m) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (!text.empty() && text.front() == '[') {
    if (text.back() != ']') throw Error(ErrorKind::Parse, "unterminated occupation list");
    auto counts = parse_int_list(text.substr(1, text.size() - 2));
    if (static_cast<int>(counts.size()) != m) {
      throw Error(ErrorKind::Parse, "occupation list has " + std::to_string(counts.size()) +
                                        " entries, expected " + std::to_string(m));
    }
    return OccupationState(std::move(counts));
  }
  return mal_to_occupation(ModeAssignmentList(parse_int_list(text)), m);
}

ModeAssignmentList parse_mal(std::string_view text, int m) {
  return occupation_to_mal(parse_state(text, m));
}

}  // namespace suppkit
