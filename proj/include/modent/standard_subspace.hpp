#pragma once

#include <Eigen/Dense>

#include "modent/linalg.hpp"
#include "modent/rng.hpp"

namespace modent::standard_subspace {

struct Tolerances {
  double rank = 1e-10;            // standardness / rank decisions
  double eigenvalue_one = 1e-9;   // |lambda - 1| band treated as the fixed part
  double condition_cap = 1e12;    // reject modular operators beyond this
};

inline const Tolerances& default_tols() {
  static const Tolerances t{};
  return t;
}

// Closed real-linear subspace of C^n, held as a complex spanning set plus a
// cached orthonormal basis of its realification in R^{2n}.
class RealSubspace {
 public:
  // span: columns are complex spanning vectors (need not be independent)
  static RealSubspace from_complex_span(const Eigen::MatrixXcd& span,
                                        double tol = la::kRankTol);
  // basis vectors already realified (2n x k); orthonormalized on entry
  static RealSubspace from_realified_span(int ambient_dim,
                                          const Eigen::MatrixXd& span,
                                          double tol = la::kRankTol);

  int ambient_dim() const { return ambient_dim_; }
  int real_dim() const { return static_cast<int>(basis_.cols()); }
  // orthonormal basis of the realification, 2n x real_dim
  const Eigen::MatrixXd& basis() const { return basis_; }
  const Eigen::MatrixXcd& span() const { return span_; }

  // realified orthonormal basis of i*H
  Eigen::MatrixXd basis_times_i() const;
  // complex orthonormal basis of the complex span H + iH
  Eigen::MatrixXcd complex_span_basis(double tol = la::kRankTol) const;

 private:
  int ambient_dim_ = 0;
  Eigen::MatrixXcd span_;
  Eigen::MatrixXd basis_;
};

struct Standardness {
  bool separating = false;  // H intersect iH = {0}
  bool generating = false;  // H + iH dense
  bool standard() const { return separating && generating; }
  double separating_margin = 0.0;  // smallest singular value of [B, iB]
};

Standardness is_standard(const RealSubspace& h,
                         const Tolerances& tol = default_tols());

// H' = { v : Im<v, h> = 0 for all h in H }
RealSubspace symplectic_complement(const RealSubspace& h,
                                   double tol = la::kRankTol);

bool is_abelian(const RealSubspace& h, double tol = la::kRankTol);
bool is_factorial(const RealSubspace& h, double tol = la::kRankTol);

// Realified Tomita operator S(phi + i psi) = phi - i psi on H + iH;
// requires a standard subspace.
Eigen::MatrixXd tomita_realified(const RealSubspace& h,
                                 const Tolerances& tol = default_tols());

struct ModularData {
  Eigen::VectorXd delta_eigenvalues;    // ascending, size n (complex count)
  Eigen::MatrixXcd delta_eigenvectors;  // complex-orthonormal columns
  Eigen::MatrixXcd j_unitary;           // J = j_unitary composed with conj
  Eigen::MatrixXd s_real;               // realified S
  Eigen::MatrixXd delta_real;           // realified Delta = S^T S
  Eigen::MatrixXd j_real;               // realified J = S Delta^{-1/2}
  Eigen::MatrixXd log_delta_real;       // realified log Delta
  double condition = 1.0;               // lambda_max / lambda_min

  // complex matrix functions of Delta through the eigensystem
  Eigen::MatrixXcd delta_power(double exponent) const;
  Eigen::MatrixXcd delta_it(double t) const;  // Delta^{it}
};

ModularData modular_data(const RealSubspace& h,
                         const Tolerances& tol = default_tols());

// Idempotent with range H and kernel H'; standard factorial subspaces only.
Eigen::MatrixXd cutting_projection(const RealSubspace& h,
                                   const Tolerances& tol = default_tols());

struct FactorialDecomposition {
  RealSubspace abelian_part;      // H_a = H intersect H', inside its ambient
  RealSubspace factorial_part;    // H_f, inside its ambient
  Eigen::MatrixXcd abelian_ambient;    // columns: ambient basis of span_C(H_a)
  Eigen::MatrixXcd factorial_ambient;  // columns: ambient basis of span_C(H_f)
};

// Split of a standard subspace along the Delta-eigenvalue-1 block.
FactorialDecomposition factorial_decomposition(
    const RealSubspace& h, const Tolerances& tol = default_tols());

// S = 2 Re<phi, (1 - E) phi> with E the Re-orthogonal projection of H + iH
// onto H; requires an abelian subspace whose complex span is the ambient.
double abelian_entropy(const RealSubspace& h, const Eigen::VectorXcd& phi,
                       const Tolerances& tol = default_tols());

// Vector entropy S^H_phi for an arbitrary closed real subspace; reduces to
// the standard component, splits off the abelian part, and evaluates
// Im<phi_f, P i log(Delta) phi_f> on the factorial part.
double entropy(const RealSubspace& h, const Eigen::VectorXcd& phi,
               const Tolerances& tol = default_tols());

// -sum_{lambda < 1} log(lambda) |E({lambda}) phi|^2
double finiteness_functional(const RealSubspace& h, const Eigen::VectorXcd& phi,
                             const Tolerances& tol = default_tols());

RealSubspace unitary_transport(const Eigen::MatrixXcd& u, const RealSubspace& h,
                               double tol = la::kRankTol);

RealSubspace direct_sum(const RealSubspace& a, const RealSubspace& b);

// Test helpers --------------------------------------------------------------

// Standard subspace obtained as the fixed points of S = P J0 P^{-1} with J0 a
// random anti-unitary involution and P positive with spectrum in
// [1/spread, spread]; standard by construction, condition number capped.
RealSubspace random_standard_subspace(int n, CounterRng& rng,
                                      double spread = 1.6);

// Fixed points of S(a, b) = (lambda^{-1/2} conj(b), lambda^{1/2} conj(a)) in
// C^2; Delta eigenvalues {lambda, 1/lambda}.
RealSubspace thermal_pair_subspace(double lambda);

// distance between the realified subspaces (projector norm)
double distance(const RealSubspace& a, const RealSubspace& b);

}  // namespace modent::standard_subspace
