#include "suppkit/suppression.hpp"

#include <algorithm>
#include <array>
#include <bit>

#include "suppkit/error.hpp"
#include "suppkit/permanent.hpp"

namespace suppkit {

ColumnSet ColumnSet::from_columns(std::span<const int> columns, int width) {
  return ColumnSet(column_mask(columns, width), width);
}

std::vector<int> ColumnSet::columns() const {
  std::vector<int> out;
  for (int c = 1; c <= width_; ++c) {
    if ((mask_ >> (width_ - c)) & 1U) out.push_back(c);
  }
  return out;
}

std::string ColumnSet::to_string() const {
  std::string out = "{";
  const auto cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cols[i]);
  }
  return out + "}";
}

bool ColumnSet::operator<(const ColumnSet& other) const {
  const auto a = columns();
  const auto b = other.columns();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

int gf2_rank(std::span<const BinaryMatrix::Row> vectors) {
  std::array<BinaryMatrix::Row, 32> basis{};  // basis[b] has leading bit b
  int rank = 0;
  for (auto v : vectors) {
    for (int b = 31; b >= 0 && v; --b) {
      if (!((v >> b) & 1U)) continue;
      if (!basis[static_cast<std::size_t>(b)]) {
        basis[static_cast<std::size_t>(b)] = v;
        ++rank;
        v = 0;
      } else {
        v ^= basis[static_cast<std::size_t>(b)];
      }
    }
  }
  return rank;
}

namespace {

constexpr std::size_t kStackRows = 64;

// Sorted copy of rows ^ mask into out (out.size() == rows.size()).
void sorted_xor(std::span<const BinaryMatrix::Row> rows, BinaryMatrix::Row mask,
                std::span<BinaryMatrix::Row> out) {
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i] ^ mask;
  std::sort(out.begin(), out.end());
}

}  // namespace

bool invariant_under_negation(std::span<const BinaryMatrix::Row> rows, BinaryMatrix::Row mask) {
  const std::size_t n = rows.size();
  if (n > kStackRows) {
    std::vector<BinaryMatrix::Row> a(n), b(n);
    sorted_xor(rows, 0, a);
    sorted_xor(rows, mask, b);
    return a == b;
  }
  std::array<BinaryMatrix::Row, kStackRows> a{}, b{};
  sorted_xor(rows, 0, std::span(a.data(), n));
  sorted_xor(rows, mask, std::span(b.data(), n));
  return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n), b.begin());
}

WitnessFamily find_witness_subsets(std::span<const BinaryMatrix::Row> rows, int width) {
  WitnessFamily family;
  family.width = width;
  // N^A(R) ~ R forces every column of A to hold n/2 ones, impossible for odd n.
  if (rows.empty() || rows.size() % 2 == 1) return family;
  const BinaryMatrix::Row full = (BinaryMatrix::Row{1} << width) - 1;
  std::vector<BinaryMatrix::Row> masks;
  for (BinaryMatrix::Row mask = 1; mask <= full; ++mask) {
    if (invariant_under_negation(rows, mask)) {
      family.subsets.emplace_back(mask, width);
      masks.push_back(mask);
    }
  }
  std::sort(family.subsets.begin(), family.subsets.end());
  family.dimension = gf2_rank(masks);
  return family;
}

WitnessFamily find_witness_subsets(const BinaryMatrix& r) {
  return find_witness_subsets(r.rows(), r.width());
}

int first_odd_witness(const WitnessFamily& family, std::span<const BinaryMatrix::Row> s_rows) {
  // Parity of the ones in columns A over all rows = parity of (XOR of rows) & A.
  BinaryMatrix::Row folded = 0;
  for (auto r : s_rows) folded ^= r;
  for (std::size_t i = 0; i < family.subsets.size(); ++i) {
    if (std::popcount(folded & family.subsets[i].mask()) & 1) return static_cast<int>(i);
  }
  return -1;
}

SuppressionVerdict test_pair(const WitnessFamily& family, const BinaryMatrix& s) {
  if (!family.empty() && s.width() != family.width) {
    throw Error(ErrorKind::InvalidArgument, "input and output bit widths differ");
  }
  SuppressionVerdict verdict;
  const int idx = first_odd_witness(family, s.rows());
  if (idx >= 0) {
    verdict.law_suppressed = true;
    verdict.witness = family.subsets[static_cast<std::size_t>(idx)];
  }
  return verdict;
}

SuppressionVerdict test_pair(const BinaryMatrix& r, const BinaryMatrix& s) {
  if (r.width() != s.width() || r.photons() != s.photons()) {
    throw Error(ErrorKind::InvalidArgument, "input and output must have the same shape");
  }
  return test_pair(find_witness_subsets(r), s);
}

SuppressionVerdict test_pair_exact(const SignMatrix& h, const ModeAssignmentList& input,
                                   const ModeAssignmentList& output) {
  const int m = h.dim();
  auto verdict = test_pair(mal_to_binary(input, m), mal_to_binary(output, m));
  verdict.exact_suppressed = permanent_ryser(sign_submatrix(h, input.modes(), output.modes())) == 0;
  return verdict;
}

PredictedOutputs predicted_suppressed_outputs(const BinaryMatrix& r, bool collision_free) {
  PredictedOutputs result;
  const int m = 1 << r.width();
  const int n = r.photons();
  result.space_size = count_states(n, m, collision_free);
  const auto family = find_witness_subsets(r);
  if (family.empty()) return result;
  std::vector<BinaryMatrix::Row> rows(static_cast<std::size_t>(n));
  for_each_mal(n, m, collision_free, [&](std::span<const int> mal) {
    for (std::size_t i = 0; i < mal.size(); ++i) rows[i] = static_cast<BinaryMatrix::Row>(mal[i] - 1);
    if (first_odd_witness(family, rows) >= 0) {
      result.outputs.emplace_back(std::vector<int>(mal.begin(), mal.end()));
      ++result.count;
    }
  });
  return result;
}

bool bitwise_sum_law_applies(const ModeAssignmentList& input, int m) {
  const int n = input.photons();
  if (!is_power_of_two(m) || !is_power_of_two(n) || n > m || n < 2) return false;
  const int offset = input[0] - 1;
  if (offset % n != 0) return false;
  for (int i = 0; i < n; ++i) {
    if (input[static_cast<std::size_t>(i)] != offset + i + 1) return false;
  }
  return input.max_mode() <= m;
}

bool bitwise_sum_law(const ModeAssignmentList& input, const ModeAssignmentList& output, int m) {
  if (!bitwise_sum_law_applies(input, m)) {
    throw Error(ErrorKind::Inapplicable,
                "bitwise-sum law needs input (1+nc,...,n+nc) with n and m powers of two");
  }
  if (output.photons() != input.photons() || output.max_mode() > m) {
    throw Error(ErrorKind::InvalidArgument, "output does not match the input's photon/mode counts");
  }
  // The input block spans exactly the low log2(n) bits; only those enter
  // the sum (high bits can XOR to nonzero on allowed outputs).
  int folded = 0;
  for (int mode : output.modes()) folded ^= mode - 1;
  return (folded & (input.photons() - 1)) != 0;
}

std::uint64_t input_census_bound(int n, int m) {
  if (n % 2 == 1) return 0;
  return static_cast<std::uint64_t>(m - 1) * binomial((n + m) / 2 - 1, n / 2);
}

InputCensus input_census(int n, int m, bool collision_free) {
  const int w = bit_width_for(m);
  InputCensus census;
  census.states = count_states(n, m, collision_free);
  if (census.states > kInputCensusLimit) {
    throw Error(ErrorKind::BudgetExceeded, "input census is exhaustive only up to 10^6 states");
  }
  census.bound = input_census_bound(n, m);
  std::vector<BinaryMatrix::Row> rows(static_cast<std::size_t>(n));
  for_each_mal(n, m, collision_free, [&](std::span<const int> mal) {
    for (std::size_t i = 0; i < mal.size(); ++i) rows[i] = static_cast<BinaryMatrix::Row>(mal[i] - 1);
    if (!find_witness_subsets(rows, w).empty()) ++census.count_with_witness;
  });
  return census;
}

}  // namespace suppkit
