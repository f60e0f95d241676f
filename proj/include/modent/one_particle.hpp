#pragma once

#include <Eigen/Dense>
#include <vector>

#include "modent/linalg.hpp"
#include "modent/rng.hpp"
#include "modent/standard_subspace.hpp"

namespace modent::one_particle {

// ---------------------------------------------------------------------------
// Finite-dimensional phase space (R^m, sigma) together with the covariance
// form mu of a quasi-free state.  The one-particle map kappa realizes
//   Re<kappa f, kappa g> = mu(f, g),   Im<kappa f, kappa g> = sigma(f, g)
// with <., .> linear in the first slot; positivity of the combined form is
// equivalent to the Hermitian kernel mu - i sigma being positive
// semi-definite, which encodes the Cauchy-Schwarz domination
// sigma(f, g)^2 <= mu(f, f) mu(g, g).
// ---------------------------------------------------------------------------

struct SymplecticData {
  Eigen::MatrixXd sigma;  // antisymmetric
  Eigen::MatrixXd mu;     // symmetric, dominating sigma
  int dim() const { return static_cast<int>(sigma.rows()); }
};

// shape checks (DimensionMismatch) and (anti)symmetry checks (SchemaError)
void validate(const SymplecticData& data, double tol = 1e-12);

// Ordering of the kernel eigendecomposition; both orderings yield unitarily
// equivalent structures (identical Gram data).
enum class EigenOrder { ascending, descending };

class OneParticleStructure {
 public:
  OneParticleStructure(Eigen::MatrixXcd kappa, Eigen::VectorXd spectrum,
                       int source_dim);

  // rank x m complex matrix applied to real coordinate vectors
  const Eigen::MatrixXcd& kappa() const { return kappa_; }
  // eigenvalues of mu - i sigma in the order used by the build
  const Eigen::VectorXd& kernel_spectrum() const { return spectrum_; }
  int source_dim() const { return source_dim_; }
  int rank() const { return static_cast<int>(kappa_.rows()); }
  // generators lost to the kernel quotient (warning-level, not an error)
  bool degenerate() const { return rank() < source_dim_; }
  int dropped_dimensions() const { return source_dim_ - rank(); }

  Eigen::VectorXcd map(const Eigen::VectorXd& f) const;
  // G_{jk} = <kappa e_j, kappa e_k> = mu(j, k) + i sigma(j, k)
  Eigen::MatrixXcd gram() const;

 private:
  Eigen::MatrixXcd kappa_;
  Eigen::VectorXd spectrum_;
  int source_dim_ = 0;
};

// kappa = Lambda_+^{1/2} V^H restricted to the support of mu - i sigma;
// DominationViolated when the kernel has an eigenvalue below -tol (relative
// to its largest eigenvalue), kernel directions are quotiented away.
OneParticleStructure build_one_particle(
    const SymplecticData& data, EigenOrder order = EigenOrder::ascending,
    double tol = la::kRankTol);

// quasi-free expectation of the Weyl generator: exp(-mu(f, f) / 2)
double quasifree_expectation(const SymplecticData& data,
                             const Eigen::VectorXd& f);

// ---------------------------------------------------------------------------
// Single bosonic mode in thermal equilibrium: sigma = [[0, 1], [-1, 0]],
// mu = coth(beta omega / 2) I, dynamics(t) = clockwise rotation by omega t.
// The modular operator of the kappa-image subspace has spectrum
// {e^{-beta omega}, e^{+beta omega}} and satisfies, exactly on the
// two-dimensional target,
//   Delta^{-is} kappa(f) = kappa(dynamics(beta s) f).
// ---------------------------------------------------------------------------

struct ThermalMode {
  double omega = 0.0;
  double beta = 0.0;
  SymplecticData data;
  Eigen::Matrix2d dynamics(double t) const;
};

// NonPositiveParameters unless omega > 0 and beta > 0
ThermalMode thermal_mode(double omega, double beta);

// Real span of {kappa(e_j) : j in mask}; masks with vanishing sigma-block
// between them give symplectically commuting subspaces.
standard_subspace::RealSubspace local_subspace(
    const OneParticleStructure& structure, const std::vector<int>& mask);

// Test helper: strictly dominated pair from a random complex Gram matrix
// A^H A with A of size (m + slack) x m; negative slack forces a kernel.
SymplecticData random_dominated_pair(int m, CounterRng& rng, int slack = 2);

}  // namespace modent::one_particle
