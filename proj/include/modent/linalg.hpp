#pragma once

#include <Eigen/Dense>
#include <complex>

namespace modent::la {

using Complex = std::complex<double>;

inline constexpr double kRankTol = 1e-10;

// ---------------------------------------------------------------------------
// Realification.  A vector z in C^n is stored as [Re z; Im z] in R^{2n}.
// Multiplication by i becomes the block matrix [[0, -I], [I, 0]]; a map is
// complex-linear iff its real matrix commutes with it and anti-linear iff it
// anti-commutes.  The Euclidean dot product on R^{2n} equals Re<z, w>, and
// Im<z, w> = realify(z)^T * mult_i * realify(w), with <z, w> linear in the
// first slot.  Adjoints (complex or anti-linear) realify to transposes.
// ---------------------------------------------------------------------------

Eigen::VectorXd realify(const Eigen::VectorXcd& z);
Eigen::VectorXcd unrealify(const Eigen::VectorXd& u);

// per-column realification of a set of complex vectors
Eigen::MatrixXd realify_columns(const Eigen::MatrixXcd& z);
Eigen::MatrixXcd unrealify_columns(const Eigen::MatrixXd& u);

Eigen::MatrixXd mult_i(int n);

// real 2n x 2n matrix of the complex-linear map z -> a*z
Eigen::MatrixXd realify_linear(const Eigen::MatrixXcd& a);

// inverse of realify_linear; requires r to commute with mult_i up to roundoff
Eigen::MatrixXcd unrealify_linear(const Eigen::MatrixXd& r);

// <z, w>, linear in the first slot (= sum_k z_k * conj(w_k))
inline Complex cinner(const Eigen::VectorXcd& z, const Eigen::VectorXcd& w) {
  return w.dot(z);
}

// ---------------------------------------------------------------------------
// Subspace utilities.  Subspaces are represented by matrices with orthonormal
// columns; rank decisions use absolute singular-value thresholds (inputs are
// built from orthonormal or O(1) data).
// ---------------------------------------------------------------------------

// orthonormal basis of the column span (rank-revealing)
Eigen::MatrixXd orth_basis(const Eigen::MatrixXd& span, double tol = kRankTol);
Eigen::MatrixXcd orth_basis_complex(const Eigen::MatrixXcd& span,
                                    double tol = kRankTol);

// orthonormal basis of ker(a)
Eigen::MatrixXd null_space(const Eigen::MatrixXd& a, double tol = kRankTol);

// basis of span(q1) intersected with span(q2); q1, q2 orthonormal
Eigen::MatrixXd intersect(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2,
                          double tol = kRankTol);

// orthogonal complement of span(qsub) inside span(q); qsub subset of span(q)
Eigen::MatrixXd complement_within(const Eigen::MatrixXd& q,
                                  const Eigen::MatrixXd& qsub,
                                  double tol = kRankTol);
Eigen::MatrixXcd complement_within_complex(const Eigen::MatrixXcd& q,
                                           const Eigen::MatrixXcd& qsub,
                                           double tol = kRankTol);

// spectral norm of the difference of orthogonal projectors (sin of the
// largest principal angle when dimensions agree)
double subspace_distance(const Eigen::MatrixXd& q1, const Eigen::MatrixXd& q2);

double operator_norm(const Eigen::MatrixXd& a);
double operator_norm_complex(const Eigen::MatrixXcd& a);

}  // namespace modent::la
