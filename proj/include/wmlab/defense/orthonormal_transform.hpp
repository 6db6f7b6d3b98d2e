#pragma once

#include <cmath>
#include <cstdint>

#include <Eigen/Core>
#include <Eigen/QR>

#include "wmlab/core/errors.hpp"
#include "wmlab/core/rng.hpp"

namespace wmlab {

/// Dense orthonormal Q on R^d. apply = Q x, invert = Q^T y; the inverse is
/// never formed explicitly.
template <typename Scalar = double>
class OrthonormalTransform {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  OrthonormalTransform() = default;
  explicit OrthonormalTransform(Matrix q) : q_(std::move(q)) {
    if (q_.rows() != q_.cols()) throw InvalidArgument("OrthonormalTransform: matrix must be square");
  }

  static OrthonormalTransform identity(Eigen::Index dim) {
    return OrthonormalTransform(Matrix::Identity(dim, dim));
  }

  [[nodiscard]] Eigen::Index dim() const { return q_.rows(); }
  [[nodiscard]] const Matrix& matrix() const { return q_; }

  template <typename Derived>
  [[nodiscard]] Vector apply(const Eigen::MatrixBase<Derived>& x) const {
    require_same_dim(x.size(), dim(), "OrthonormalTransform::apply");
    return q_ * x;
  }

  template <typename Derived>
  [[nodiscard]] Vector invert(const Eigen::MatrixBase<Derived>& y) const {
    require_same_dim(y.size(), dim(), "OrthonormalTransform::invert");
    return q_.transpose() * y;
  }

  /// ||Q^T Q - I||_F.
  [[nodiscard]] Scalar orthonormality_residual() const {
    return (q_.transpose() * q_ - Matrix::Identity(dim(), dim())).norm();
  }

  [[nodiscard]] std::uint64_t storage_bytes() const {
    return static_cast<std::uint64_t>(q_.size()) * sizeof(Scalar);
  }

 private:
  Matrix q_;
};

/// Haar-distributed orthonormal matrix: QR of an i.i.d. Gaussian matrix
/// with each column of Q multiplied by the sign of the matching diagonal
/// entry of R. Without that correction QR output is not Haar.
template <typename Scalar = double>
OrthonormalTransform<Scalar> haar_sample(Eigen::Index dim, const RngSeed& seed) {
  using Matrix = typename OrthonormalTransform<Scalar>::Matrix;
  if (dim < 1) throw InvalidArgument("haar_sample: dim must be >= 1");
  Rng rng(seed);
  Matrix a(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = static_cast<Scalar>(rng.gaussian());
  }
  Eigen::HouseholderQR<Eigen::Ref<Matrix>> qr(a);
  Matrix q = qr.householderQ();
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (qr.matrixQR()(j, j) < 0) q.col(j) = -q.col(j);
  }
  return OrthonormalTransform<Scalar>(std::move(q));
}

/// Closed-form size of a dense d x d transform.
constexpr std::uint64_t transform_storage_bytes(std::uint64_t d, std::uint64_t element_bytes) {
  return d * d * element_bytes;
}

}  // namespace wmlab
