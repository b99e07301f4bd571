#include "suppkit/permanent.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <numeric>

#include "suppkit/error.hpp"

namespace suppkit {

std::string to_string(Int128 value) {
  if (value == 0) return "0";
  const bool negative = value < 0;
  unsigned __int128 mag = negative ? -static_cast<unsigned __int128>(value)
                                   : static_cast<unsigned __int128>(value);
  std::string digits;
  while (mag) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(mag % 10)));
    mag /= 10;
  }
  if (negative) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

namespace {

void check_square(std::size_t size, int n) {
  if (n < 0 || size != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw Error(ErrorKind::InvalidArgument, "matrix storage does not match dimension");
  }
}

template <class Acc, class T>
Acc naive_impl(std::span<const T> a, int n) {
  check_square(a.size(), n);
  if (n > kMaxNaiveDim) {
    throw Error(ErrorKind::InvalidArgument, "naive permanent is limited to dimension 8");
  }
  std::array<int, kMaxNaiveDim> perm{};
  std::iota(perm.begin(), perm.begin() + n, 0);
  Acc total{0};
  do {
    Acc prod{1};
    for (int i = 0; i < n; ++i) prod *= static_cast<Acc>(a[static_cast<std::size_t>(i * n + perm[i])]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.begin() + n));
  return total;
}

// Ryser: Per(A) = (-1)^n sum_{S subset of columns} (-1)^{|S|} prod_i sum_{j in S} a_ij,
// with S stepped through Gray-code order so each step adds or removes one column.
template <class T>
T ryser_float(std::span<const T> a, int n) {
  check_square(a.size(), n);
  if (n > kMaxRyserDim) throw Error(ErrorKind::InvalidArgument, "permanent dimension exceeds 30");
  if (n == 0) return T{1};
  std::array<T, kMaxRyserDim> rowsum{};
  T total{0};
  std::uint64_t gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if ((gray >> j) & 1U) {
      for (int i = 0; i < n; ++i) rowsum[i] += a[static_cast<std::size_t>(i * n + j)];
    } else {
      for (int i = 0; i < n; ++i) rowsum[i] -= a[static_cast<std::size_t>(i * n + j)];
    }
    T prod = rowsum[0];
    for (int i = 1; i < n; ++i) prod *= rowsum[i];
    if (std::popcount(gray) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  return (n & 1) ? -total : total;
}

// log2 of an upper bound on |Per|: min(prod of absolute row sums, n! max|a|^n).
long double log2_permanent_bound(std::span<const int> a, int n) {
  long double by_rows = 0.0L;
  int max_abs = 0;
  for (int i = 0; i < n; ++i) {
    long long row = 0;
    for (int j = 0; j < n; ++j) {
      const int v = std::abs(a[static_cast<std::size_t>(i * n + j)]);
      row += v;
      max_abs = std::max(max_abs, v);
    }
    if (row == 0) return -1.0L;  // zero row, permanent is zero
    by_rows += std::log2(static_cast<long double>(row));
  }
  long double by_factorial = n * std::log2(static_cast<long double>(std::max(max_abs, 1)));
  for (int k = 2; k <= n; ++k) by_factorial += std::log2(static_cast<long double>(k));
  return std::min(by_rows, by_factorial);
}

}  // namespace

Int128 permanent_naive(std::span<const int> a, int n) { return naive_impl<Int128>(a, n); }
double permanent_naive(std::span<const double> a, int n) { return naive_impl<double>(a, n); }
Complex permanent_naive(std::span<const Complex> a, int n) { return naive_impl<Complex>(a, n); }

Int128 permanent_ryser(std::span<const int> a, int n) {
  check_square(a.size(), n);
  if (n > kMaxRyserDim) throw Error(ErrorKind::InvalidArgument, "permanent dimension exceeds 30");
  if (n == 0) return 1;
  if (log2_permanent_bound(a, n) >= 126.0L) {
    throw Error(ErrorKind::InvalidArgument, "integer permanent may overflow 128 bits");
  }
  // Intermediate products may exceed 128 bits; arithmetic mod 2^128 still
  // yields the exact result because |Per| < 2^127.
  using U = unsigned __int128;
  std::array<std::int64_t, kMaxRyserDim> rowsum{};
  U total = 0;
  std::uint64_t gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < limit; ++k) {
    const int j = std::countr_zero(k);
    gray ^= std::uint64_t{1} << j;
    if ((gray >> j) & 1U) {
      for (int i = 0; i < n; ++i) rowsum[i] += a[static_cast<std::size_t>(i * n + j)];
    } else {
      for (int i = 0; i < n; ++i) rowsum[i] -= a[static_cast<std::size_t>(i * n + j)];
    }
    U prod = static_cast<U>(static_cast<Int128>(rowsum[0]));
    for (int i = 1; i < n; ++i) prod *= static_cast<U>(static_cast<Int128>(rowsum[i]));
    if (std::popcount(gray) & 1) {
      total -= prod;
    } else {
      total += prod;
    }
  }
  if (n & 1) total = U{0} - total;
  return static_cast<Int128>(total);
}

double permanent_ryser(std::span<const double> a, int n) { return ryser_float<double>(a, n); }
Complex permanent_ryser(std::span<const Complex> a, int n) { return ryser_float<Complex>(a, n); }

Int128 permanent_naive(const IntMatrix& m) {
  return permanent_naive(std::span<const int>(m.data(), static_cast<std::size_t>(m.size())),
                         static_cast<int>(m.rows()));
}
Complex permanent_naive(const ComplexMatrix& m) {
  return permanent_naive(std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size())),
                         static_cast<int>(m.rows()));
}
Int128 permanent_ryser(const IntMatrix& m) {
  return permanent_ryser(std::span<const int>(m.data(), static_cast<std::size_t>(m.size())),
                         static_cast<int>(m.rows()));
}
double permanent_ryser(const Eigen::MatrixXd& m) {
  return permanent_ryser(std::span<const double>(m.data(), static_cast<std::size_t>(m.size())),
                         static_cast<int>(m.rows()));
}
Complex permanent_ryser(const ComplexMatrix& m) {
  return permanent_ryser(std::span<const Complex>(m.data(), static_cast<std::size_t>(m.size())),
                         static_cast<int>(m.rows()));
}

TransitionPair::TransitionPair(OccupationState in, OccupationState out)
    : input(std::move(in)), output(std::move(out)) {
  if (input.photons() != output.photons() || input.modes() != output.modes()) {
    throw Error(ErrorKind::InvalidState, "input and output must share photon and mode counts");
  }
}

IntMatrix sign_submatrix(const SignMatrix& h, std::span<const int> in_mal,
                         std::span<const int> out_mal) {
  const auto n = static_cast<Eigen::Index>(in_mal.size());
  IntMatrix sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = h(in_mal[i] - 1, out_mal[j] - 1);
  }
  return sub;
}

ComplexMatrix unitary_submatrix(const UnitaryMatrix& u, std::span<const int> in_mal,
                                std::span<const int> out_mal) {
  const auto n = static_cast<Eigen::Index>(in_mal.size());
  ComplexMatrix sub(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = u(in_mal[i] - 1, out_mal[j] - 1);
  }
  return sub;
}

std::variant<IntMatrix, ComplexMatrix> build_submatrix(const InterferometerSpec& spec,
                                                       const TransitionPair& pair) {
  if (pair.input.modes() != spec.dim()) {
    throw Error(ErrorKind::InvalidState, "state mode count does not match the interferometer");
  }
  const auto in = occupation_to_mal(pair.input);
  const auto out = occupation_to_mal(pair.output);
  if (spec.has_sign_matrix()) return sign_submatrix(spec.sign_matrix(), in.modes(), out.modes());
  return unitary_submatrix(spec.unitary(), in.modes(), out.modes());
}

long double factorial_normalization(const OccupationState& input, const OccupationState& output) {
  // Small-integer factors multiply exactly until the product passes 2^64.
  long double norm = 1.0L;
  for (const auto* state : {&input, &output}) {
    for (int c : state->counts()) {
      for (int k = 2; k <= c; ++k) norm *= k;
    }
  }
  return norm;
}

AmplitudeResult transition_amplitude(const InterferometerSpec& spec, const TransitionPair& pair) {
  const int n = pair.input.photons();
  if (n > kMaxRyserDim) throw Error(ErrorKind::InvalidArgument, "amplitudes limited to n <= 30");
  const long double norm = factorial_normalization(pair.input, pair.output);
  AmplitudeResult result;
  auto sub = build_submatrix(spec, pair);
  if (auto* signs = std::get_if<IntMatrix>(&sub)) {
    const Int128 per = permanent_ryser(*signs);
    const long double scale = std::pow(static_cast<long double>(spec.dim()), n) * norm;
    const long double amp = static_cast<long double>(per) / std::sqrt(scale);
    result.integer_permanent = per;
    result.exact_zero = per == 0;
    result.suppressed = result.exact_zero;
    result.amplitude = Complex(static_cast<double>(amp), 0.0);
    result.probability = static_cast<double>(amp * amp);
  } else {
    const Complex per = permanent_ryser(std::get<ComplexMatrix>(sub));
    result.amplitude = per / static_cast<double>(std::sqrt(norm));
    result.probability = std::norm(result.amplitude);
    result.suppressed = std::abs(per) <= kFloatZeroTolerance;
  }
  return result;
}

Distribution output_distribution(const InterferometerSpec& spec, const OccupationState& input,
                                 bool collision_free) {
  const int n = input.photons();
  const int m = input.modes();
  std::vector<DistributionEntry> entries;
  for (auto& out : enumerate_states(n, m, false)) {
    const double p = transition_amplitude(spec, TransitionPair(input, out)).probability;
    entries.push_back({occupation_to_mal(out), p});
  }
  Distribution full(m, n, false, std::move(entries));
  if (!collision_free) return full;
  return post_select_collision_free(full);
}

}  // namespace suppkit
