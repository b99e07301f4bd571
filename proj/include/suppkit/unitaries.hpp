#pragma once

#include <complex>
#include <string>
#include <variant>

#include <Eigen/Dense>

namespace suppkit {

using Complex = std::complex<double>;
using IntMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Exact +-1 matrix. Sylvester matrices stay in this form through the
/// suppression pipeline; normalization happens only when a probability is
/// needed.
class SignMatrix {
 public:
  explicit SignMatrix(IntMatrix entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  /// 0-based access.
  int operator()(int i, int j) const { return entries_(i, j); }
  const IntMatrix& entries() const noexcept { return entries_; }

  bool operator==(const SignMatrix& other) const { return entries_ == other.entries_; }

 private:
  IntMatrix entries_;
};

class UnitaryMatrix {
 public:
  /// Does not check unitarity; see verify_unitary.
  explicit UnitaryMatrix(ComplexMatrix entries);

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  Complex operator()(int i, int j) const { return entries_(i, j); }
  const ComplexMatrix& entries() const noexcept { return entries_; }

 private:
  ComplexMatrix entries_;
};

/// H(2^w) by the block recursion H(2m) = [[H, H], [H, -H]].
SignMatrix sylvester_sign_matrix(int m);
/// H(m)_{ij} = (-1)^{popcount(i & j)} with 0-based i, j.
SignMatrix sylvester_sign_matrix_elementwise(int m);
UnitaryMatrix sylvester_unitary(int m);
/// Entry (j,k) = exp(2 pi i j k / m) / sqrt(m), 0-based j, k.
UnitaryMatrix fourier_unitary(int m);

/// max |(U U^dagger - I)_{jk}| <= tol.
bool verify_unitary(const ComplexMatrix& u, double tol);
bool verify_unitary(const UnitaryMatrix& u, double tol);
bool verify_unitary(const SignMatrix& h, double tol);

enum class InterferometerKind { Sylvester, Fourier, Custom };

const char* to_string(InterferometerKind kind);
InterferometerKind parse_kind(const std::string& text);

/// Interferometer description. Sylvester specs carry the exact sign
/// matrix; Fourier and custom specs carry a complex unitary.
class InterferometerSpec {
 public:
  static InterferometerSpec sylvester(int m);
  static InterferometerSpec fourier(int m);
  /// Validated with verify_unitary at tolerance 1e-10.
  static InterferometerSpec custom(UnitaryMatrix u);
  static InterferometerSpec make(InterferometerKind kind, int m);

  InterferometerKind kind() const noexcept { return kind_; }
  int dim() const noexcept { return dim_; }
  bool has_sign_matrix() const noexcept { return std::holds_alternative<SignMatrix>(payload_); }
  const SignMatrix& sign_matrix() const;
  /// Normalized unitary for every kind (H / sqrt(m) for Sylvester).
  const UnitaryMatrix& unitary() const noexcept { return unitary_; }

 private:
  InterferometerSpec(InterferometerKind kind, std::variant<SignMatrix, UnitaryMatrix> payload,
                     UnitaryMatrix unitary);

  InterferometerKind kind_;
  int dim_;
  std::variant<SignMatrix, UnitaryMatrix> payload_;
  UnitaryMatrix unitary_;
};

}  // namespace suppkit
