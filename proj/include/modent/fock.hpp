#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "modent/standard_subspace.hpp"

namespace modent::fock {

// ---------------------------------------------------------------------------
// Truncated Bose-Fock space over C^m (m <= 3): occupation basis indexed by
// multi-indices n with |n| <= cutoff, enumerated by total level ascending and,
// within a level, with earlier modes carrying as much occupation as possible.
// ---------------------------------------------------------------------------

class FockBasis {
 public:
  FockBasis(int modes, int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  int dim() const { return static_cast<int>(index_.size()); }

  const std::array<int, 3>& occupation(int k) const { return index_.at(k); }
  int level(int k) const;
  // position of a multi-index, -1 when |n| exceeds the cutoff
  int position(const std::array<int, 3>& n) const;

 private:
  int modes_ = 0;
  int cutoff_ = 0;
  std::vector<std::array<int, 3>> index_;
  std::vector<int> lookup_;  // dense (cutoff+1)^modes table
};

struct TruncatedFockVector {
  int modes = 0;
  int cutoff = 0;
  Eigen::VectorXcd coeff;
  double tail = 0.0;  // upper bound on the squared norm discarded at build

  double norm() const { return coeff.norm(); }
};

// upper bound on sum_{k > cutoff} x^k / k! for x = norm_sq >= 0
double coherent_tail_bound(double norm_sq, int cutoff);

// e^phi = sum_n phi^{x n}/sqrt(n!): components prod_j phi_j^{n_j}/sqrt(n_j!).
// CutoffTooSmall when the discarded mass exceeds max_tail.
TruncatedFockVector coherent_vector(const FockBasis& basis,
                                    const Eigen::VectorXcd& phi,
                                    double max_tail = 1e-8);

// ladder operators on the truncation: a^dag_j |n> = sqrt(n_j + 1) |n + e_j>
Eigen::MatrixXcd creation_matrix(const FockBasis& basis, int mode);
Eigen::MatrixXcd annihilation_matrix(const FockBasis& basis, int mode);

// W(psi) = exp(a^dag(psi) - a(psi)); exactly unitary on the truncation.  In
// the library convention (inner products linear in the first slot) the Weyl
// relations read  W(psi) W(phi) = e^{+i Im<psi, phi>} W(psi + phi)  and the
// coherent action is  W(psi) e^phi = e^{-|psi|^2/2 - <phi, psi>} e^{psi+phi},
// both up to truncation-edge mass.
Eigen::MatrixXcd weyl_matrix(const FockBasis& basis,
                             const Eigen::VectorXcd& psi);

TruncatedFockVector weyl_apply(const FockBasis& basis,
                               const Eigen::VectorXcd& psi,
                               const TruncatedFockVector& v);

// <xi, W(psi) xi> -> exp(-|psi|^2 / 2) as the cutoff grows
std::complex<double> vacuum_expectation(const Eigen::VectorXcd& psi,
                                        int cutoff);

// Eigenvalues of the second quantization Gamma(Delta_H) on the truncation:
// products of one-particle eigenvalues over occupation multi-indices,
// aligned with the basis enumeration.  H must be standard with ambient
// dimension equal to basis.modes().
Eigen::VectorXd second_quantized_modular(const standard_subspace::RealSubspace& h,
                                         const FockBasis& basis);

// ---------------------------------------------------------------------------
// Density matrices on the truncated one-mode space and the relative-entropy
// oracle for coherent states against the thermal vacuum.
// ---------------------------------------------------------------------------

class DensityMatrix {
 public:
  // hermitizes, eigendecomposes; NumericallySingular if an eigenvalue falls
  // below -1e-12 (relative to the trace scale)
  explicit DensityMatrix(const Eigen::MatrixXcd& rho);

  const Eigen::MatrixXcd& matrix() const { return rho_; }
  double trace() const { return trace_; }
  const Eigen::VectorXd& eigenvalues() const { return eig_; }  // ascending
  const Eigen::MatrixXcd& eigenvectors() const { return vec_; }
  double von_neumann_entropy() const;  // -sum lambda log lambda

 private:
  Eigen::MatrixXcd rho_;
  Eigen::VectorXd eig_;
  Eigen::MatrixXcd vec_;
  double trace_ = 0.0;
};

// Tr rho (log rho - log sigma); NumericallySingular when rho carries mass on
// sigma eigenvalues at or below support_tol.  Arbitrarily small positive
// reference eigenvalues are genuine support (thermal weights decay
// geometrically), so only nonpositive ones count as kernel by default.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol = 0.0);

struct OracleReport {
  double relative_entropy = 0.0;  // Tr rho_phi (log rho_phi - log rho_vac)
  double theta = 0.0;             // modular parameter: spectrum {e^-t, e^t}
  double displacement_abs = 0.0;  // |delta|, the H-mode component of phi
  double thermal_tail = 0.0;      // q^{N+1}, trace mass beyond the cutoff
  double displacement_tail = 0.0; // coherent tail bound at |delta|^2
  double gamma_ratio_defect = 0.0;  // geometric-weight consistency check
};

// Independent second-quantized route to the vector entropy of a coherent
// excitation on the algebra of a thermal standard subspace H in C^2: the
// vacuum restricts to the thermal density matrix with mean occupation
// n = 1/(e^theta - 1), the coherent state of phi to its displacement by
// delta = sqrt(n+1) phi_1 - sqrt(n) conj(phi_2) in the modular eigenbasis.
// Agrees with standard_subspace::entropy(h, phi) within the oracle tolerance.
OracleReport araki_relative_entropy_oracle(
    const standard_subspace::RealSubspace& h, const Eigen::VectorXcd& phi,
    int cutoff, double thermal_tail_max = 1e-10,
    double displacement_tail_max = 1e-8);

}  // namespace modent::fock
