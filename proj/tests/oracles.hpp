#pragma once

// Reference implementations written without the library, used to check it.

#include <algorithm>
#include <bit>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

// Per(M) by summing over all permutations (row-major n x n).
inline long long permanent(const std::vector<long long>& a, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  long long sum = 0;
  do {
    long long prod = 1;
    for (int i = 0; i < n; ++i) prod *= a[static_cast<std::size_t>(i * n + p[static_cast<std::size_t>(i)])];
    sum += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

inline std::complex<double> permanent(const std::vector<std::complex<double>>& a, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::complex<double> sum = 0;
  do {
    std::complex<double> prod = 1;
    for (int i = 0; i < n; ++i) prod *= a[static_cast<std::size_t>(i * n + p[static_cast<std::size_t>(i)])];
    sum += prod;
  } while (std::next_permutation(p.begin(), p.end()));
  return sum;
}

// Sylvester entry for 0-based indices, by the bit-parity formula.
inline int hadamard(int i, int j) { return (std::popcount(static_cast<unsigned>(i & j)) & 1) ? -1 : 1; }

// +-1 submatrix of H(m) with rows from `in`, columns from `out` (1-based modes).
inline std::vector<long long> hadamard_sub(const std::vector<int>& in, const std::vector<int>& out) {
  const int n = static_cast<int>(in.size());
  std::vector<long long> a(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i * n + j)] = hadamard(in[i] - 1, out[j] - 1);
  }
  return a;
}

inline long long choose(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// All sorted n-tuples over 1..m, strictly increasing when `distinct`.
inline void tuples(int n, int m, bool distinct, std::vector<std::vector<int>>& out,
                   std::vector<int>& cur, int start) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int k = start; k <= m; ++k) {
    cur.push_back(k);
    tuples(n, m, distinct, out, cur, distinct ? k + 1 : k);
    cur.pop_back();
  }
}

inline std::vector<std::vector<int>> tuples(int n, int m, bool distinct) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  tuples(n, m, distinct, out, cur, 1);
  return out;
}

// Exact arithmetic in Z[w], w = exp(2 pi i / m) with m a power of two:
// polynomials in w reduced modulo w^(m/2) + 1.
class Cyclotomic {
 public:
  explicit Cyclotomic(int m) : half_(m / 2), c_(static_cast<std::size_t>(std::max(1, m / 2)), 0) {}

  static Cyclotomic power(int m, int k) {
    Cyclotomic z(m);
    if (m == 1) {
      z.c_[0] = 1;
      return z;
    }
    k %= m;
    if (k < z.half_) z.c_[static_cast<std::size_t>(k)] = 1;
    else z.c_[static_cast<std::size_t>(k - z.half_)] = -1;
    return z;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  Cyclotomic operator*(const Cyclotomic& o) const {
    Cyclotomic r(*this);
    std::fill(r.c_.begin(), r.c_.end(), 0);
    const auto d = c_.size();
    for (std::size_t i = 0; i < d; ++i) {
      if (c_[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) {
        const long long v = c_[i] * o.c_[j];
        if (i + j < d) r.c_[i + j] += v;
        else r.c_[i + j - d] -= v;
      }
    }
    return r;
  }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](long long v) { return v == 0; });
  }

 private:
  int half_;
  std::vector<long long> c_;
};

// Exact test Per(F_sub) == 0 for the unnormalized Fourier matrix w^{jk}.
inline bool fourier_permanent_is_zero(int m, const std::vector<int>& in, const std::vector<int>& out) {
  const int n = static_cast<int>(in.size());
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  Cyclotomic sum(m);
  do {
    int exponent = 0;
    for (int i = 0; i < n; ++i) exponent += (in[static_cast<std::size_t>(i)] - 1) * (out[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] - 1);
    sum += Cyclotomic::power(m, exponent % m);
  } while (std::next_permutation(p.begin(), p.end()));
  return sum.is_zero();
}

}  // namespace oracle
