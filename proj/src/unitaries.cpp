#include "suppkit/unitaries.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "suppkit/error.hpp"
#include "suppkit/fock.hpp"

namespace suppkit {

SignMatrix::SignMatrix(IntMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::InvalidArgument, "sign matrix must be square");
  }
  for (Eigen::Index i = 0; i < entries_.size(); ++i) {
    const int v = entries_.data()[i];
    if (v != 1 && v != -1) throw Error(ErrorKind::InvalidArgument, "sign matrix entries must be +-1");
  }
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw Error(ErrorKind::InvalidArgument, "unitary must be square");
  }
}

SignMatrix sylvester_sign_matrix(int m) {
  const int w = bit_width_for(m);
  IntMatrix h(1, 1);
  h(0, 0) = 1;
  for (int step = 0; step < w; ++step) {
    const auto half = h.rows();
    IntMatrix next(2 * half, 2 * half);
    next.topLeftCorner(half, half) = h;
    next.topRightCorner(half, half) = h;
    next.bottomLeftCorner(half, half) = h;
    next.bottomRightCorner(half, half) = -h;
    h = std::move(next);
  }
  return SignMatrix(std::move(h));
}

SignMatrix sylvester_sign_matrix_elementwise(int m) {
  bit_width_for(m);
  IntMatrix h(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      h(i, j) = (std::popcount(static_cast<unsigned>(i & j)) & 1) ? -1 : 1;
    }
  }
  return SignMatrix(std::move(h));
}

UnitaryMatrix sylvester_unitary(int m) {
  const auto h = sylvester_sign_matrix(m);
  return UnitaryMatrix(h.entries().cast<Complex>() / std::sqrt(static_cast<double>(m)));
}

UnitaryMatrix fourier_unitary(int m) {
  if (m < 1) throw Error(ErrorKind::UnsupportedDimension, "dimension must be positive");
  ComplexMatrix u(m, m);
  const double norm = 1.0 / std::sqrt(static_cast<double>(m));
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      // reduce j*k mod m first so large dimensions keep full phase accuracy
      const long long e = (static_cast<long long>(j) * k) % m;
      const double phase = 2.0 * std::numbers::pi * static_cast<double>(e) / m;
      u(j, k) = std::polar(norm, phase);
    }
  }
  return UnitaryMatrix(std::move(u));
}

bool verify_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix defect = u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols());
  return defect.cwiseAbs().maxCoeff() <= tol;
}

bool verify_unitary(const UnitaryMatrix& u, double tol) { return verify_unitary(u.entries(), tol); }

bool verify_unitary(const SignMatrix& h, double tol) {
  return verify_unitary(ComplexMatrix(h.entries().cast<Complex>()), tol);
}

const char* to_string(InterferometerKind kind) {
  switch (kind) {
    case InterferometerKind::Sylvester: return "sylvester";
    case InterferometerKind::Fourier: return "fourier";
    case InterferometerKind::Custom: return "custom";
  }
  return "unknown";
}

InterferometerKind parse_kind(const std::string& text) {
  if (text == "sylvester") return InterferometerKind::Sylvester;
  if (text == "fourier") return InterferometerKind::Fourier;
  if (text == "custom") return InterferometerKind::Custom;
  throw Error(ErrorKind::Parse, "unknown interferometer kind '" + text + "'");
}

InterferometerSpec::InterferometerSpec(InterferometerKind kind,
                                       std::variant<SignMatrix, UnitaryMatrix> payload,
                                       UnitaryMatrix unitary)
    : kind_(kind),
      dim_(unitary.dim()),
      payload_(std::move(payload)),
      unitary_(std::move(unitary)) {}

InterferometerSpec InterferometerSpec::sylvester(int m) {
  auto h = sylvester_sign_matrix(m);
  UnitaryMatrix u(h.entries().cast<Complex>() / std::sqrt(static_cast<double>(m)));
  return InterferometerSpec(InterferometerKind::Sylvester, std::move(h), std::move(u));
}

InterferometerSpec InterferometerSpec::fourier(int m) {
  auto u = fourier_unitary(m);
  return InterferometerSpec(InterferometerKind::Fourier, u, u);
}

InterferometerSpec InterferometerSpec::custom(UnitaryMatrix u) {
  if (!verify_unitary(u, 1e-10)) {
    throw Error(ErrorKind::InvalidArgument, "custom matrix is not unitary within 1e-10");
  }
  return InterferometerSpec(InterferometerKind::Custom, u, u);
}

InterferometerSpec InterferometerSpec::make(InterferometerKind kind, int m) {
  switch (kind) {
    case InterferometerKind::Sylvester: return sylvester(m);
    case InterferometerKind::Fourier: return fourier(m);
    case InterferometerKind::Custom: break;
  }
  throw Error(ErrorKind::InvalidArgument, "custom interferometers are loaded from a file");
}

const SignMatrix& InterferometerSpec::sign_matrix() const {
  if (const auto* h = std::get_if<SignMatrix>(&payload_)) return *h;
  throw Error(ErrorKind::InvalidArgument, "interferometer has no sign matrix");
}

}  // namespace suppkit
