#include "modent/linalg.hpp"

#include <Eigen/SVD>

#include "modent/errors.hpp"

namespace modent::la {

Eigen::VectorXd realify(const Eigen::VectorXcd& z) {
  const int n = static_cast<int>(z.size());
  Eigen::VectorXd u(2 * n);
  u.head(n) = z.real();
  u.tail(n) = z.imag();
  return u;
}

Eigen::VectorXcd unrealify(const Eigen::VectorXd& u) {
  const int n = static_cast<int>(u.size()) / 2;
  Eigen::VectorXcd z(n);
  z.real() = u.head(n);
  z.imag() = u.tail(n);
  return z;
}

Eigen::MatrixXd realify_columns(const Eigen::MatrixXcd& z) {
  const int n = static_cast<int>(z.rows());
  Eigen::MatrixXd u(2 * n, z.cols());
  u.topRows(n) = z.real();
  u.bottomRows(n) = z.imag();
  return u;
}

Eigen::MatrixXcd unrealify_columns(const Eigen::MatrixXd& u) {
  const int n = static_cast<int>(u.rows()) / 2;
  Eigen::MatrixXcd z(n, u.cols());
  z.real() = u.topRows(n);
  z.imag() = u.bottomRows(n);
  return z;
}

Eigen::MatrixXd mult_i(int n) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  m.topRightCorner(n, n) = -Eigen::MatrixXd::Identity(n, n);
  m.bottomLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
  return m;
}

Eigen::MatrixXd realify_linear(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  Eigen::MatrixXd r(2 * n, 2 * n);
  r.topLeftCorner(n, n) = a.real();
  r.topRightCorner(n, n) = -a.imag();
  r.bottomLeftCorner(n, n) = a.imag();
  r.bottomRightCorner(n, n) = a.real();
  return r;
}

Eigen::MatrixXcd unrealify_linear(const Eigen::MatrixXd& r) {
  const int n = static_cast<int>(r.rows()) / 2;
  Eigen::MatrixXcd a(n, n);
  // average the two copies of Re and Im carried by a complex-linear map
  a.real() = 0.5 * (r.topLeftCorner(n, n) + r.bottomRightCorner(n, n));
  a.imag() = 0.5 * (r.bottomLeftCorner(n, n) - r.topRightCorner(n, n));
  return a;
}

Eigen::MatrixXd orth_basis(const Eigen::MatrixXd& span, double tol) {
  if (span.rows() == 0 || span.cols() == 0)
    return Eigen::MatrixXd(span.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeThinU);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > tol)
    ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXcd orth_basis_complex(const Eigen::MatrixXcd& span, double tol) {
  if (span.rows() == 0 || span.cols() == 0)
    return Eigen::MatrixXcd(span.rows(), 0);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(span, Eigen::ComputeThinU);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > tol)
    ++rank;
  return svd.matrixU().leftCols(rank);
}

Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0)
    return Eigen::MatrixXd::Identity(a.cols(), a.cols());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullV);
  int rank = 0;
  while (rank < svd.singularValues().size() &&
         svd.singularValues()(rank) > tol)
    ++rank;
  return svd.matrixV().rightCols(a.cols() - rank);
}

Eigen::MatrixXd intersect(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2,
                          double tol) {
  if (q1.cols() == 0 || q2.cols() == 0)
    return Eigen::MatrixXd(q1.rows(), 0);
  Eigen::MatrixXd combined(q1.rows(), q1.cols() + q2.cols());
  combined << q1, -q2;
  const Eigen::MatrixXd kernel = null_space(combined, tol);
  if (kernel.cols() == 0) return Eigen::MatrixXd(q1.rows(), 0);
  return orth_basis(q1 * kernel.topRows(q1.cols()), tol);
}

Eigen::MatrixXd complement_within(const Eigen::MatrixXd& q,
                                  const Eigen::MatrixXd& qsub, double tol) {
  if (qsub.cols() == 0) return q;
  return orth_basis(q - qsub * (qsub.transpose() * q), tol);
}

Eigen::MatrixXcd complement_within_complex(const Eigen::MatrixXcd& q,
                                           const Eigen::MatrixXcd& qsub,
                                           double tol) {
  if (qsub.cols() == 0) return q;
  return orth_basis_complex(q - qsub * (qsub.adjoint() * q), tol);
}

double subspace_distance(const Eigen::MatrixXd& q1,
                         const Eigen::MatrixXd& q2) {
  const Eigen::MatrixXd diff =
      q1 * q1.transpose() - q2 * q2.transpose();
  return operator_norm(diff);
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

double operator_norm_complex(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

}  // namespace modent::la
