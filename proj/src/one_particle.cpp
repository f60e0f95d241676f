#include "modent/one_particle.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <string>

#include "modent/errors.hpp"

namespace modent::one_particle {

namespace {

// phase-fix columns so the first component above threshold is real positive
void canonicalize_columns(Eigen::MatrixXcd& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
      const std::complex<double> z = v(r, c);
      if (std::abs(z) > 1e-8) {
        v.col(c) *= std::conj(z) / std::abs(z);
        break;
      }
    }
  }
}

}  // namespace

void validate(const SymplecticData& data, double tol) {
  const int m = data.dim();
  if (data.sigma.rows() != data.sigma.cols() ||
      data.mu.rows() != data.mu.cols())
    throw DimensionMismatch("sigma and mu must be square");
  if (data.mu.rows() != m)
    throw DimensionMismatch("sigma and mu must share one dimension");
  if (m == 0) return;
  const double scale = std::max(
      1.0, std::max(data.sigma.cwiseAbs().maxCoeff(),
                    data.mu.cwiseAbs().maxCoeff()));
  if ((data.sigma + data.sigma.transpose()).cwiseAbs().maxCoeff() >
      tol * scale)
    throw SchemaError("sigma must be antisymmetric");
  if ((data.mu - data.mu.transpose()).cwiseAbs().maxCoeff() > tol * scale)
    throw SchemaError("mu must be symmetric");
}

OneParticleStructure::OneParticleStructure(Eigen::MatrixXcd kappa,
                                           Eigen::VectorXd spectrum,
                                           int source_dim)
    : kappa_(std::move(kappa)),
      spectrum_(std::move(spectrum)),
      source_dim_(source_dim) {}

Eigen::VectorXcd OneParticleStructure::map(const Eigen::VectorXd& f) const {
  if (f.size() != source_dim_)
    throw DimensionMismatch("kappa argument has size " +
                            std::to_string(f.size()) + ", phase space has " +
                            std::to_string(source_dim_));
  return kappa_ * f.cast<std::complex<double>>();
}

Eigen::MatrixXcd OneParticleStructure::gram() const {
  // G_{jk} = <col_j, col_k> = (kappa^H kappa)_{kj}
  return (kappa_.adjoint() * kappa_).transpose();
}

OneParticleStructure build_one_particle(const SymplecticData& data,
                                        EigenOrder order, double tol) {
  validate(data);
  const int m = data.dim();
  if (m == 0)
    return OneParticleStructure(Eigen::MatrixXcd(0, 0), Eigen::VectorXd(0), 0);

  const Eigen::MatrixXcd kernel =
      data.mu.cast<std::complex<double>>() -
      std::complex<double>(0.0, 1.0) * data.sigma.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(kernel);
  if (eig.info() != Eigen::Success)
    throw NumericallySingular("eigendecomposition of mu - i sigma failed");

  Eigen::VectorXd lambda = eig.eigenvalues();  // ascending
  Eigen::MatrixXcd v = eig.eigenvectors();
  canonicalize_columns(v);
  const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  if (lambda(0) < -tol * scale)
    throw DominationViolated("mu - i sigma has eigenvalue " +
                             std::to_string(lambda(0)) +
                             "; sigma is not dominated by mu");

  if (order == EigenOrder::descending) {
    lambda.reverseInPlace();
    v = v.rowwise().reverse().eval();
  }

  // keep the support of the kernel; near-zero directions are quotiented away
  std::vector<int> keep;
  for (int k = 0; k < m; ++k)
    if (lambda(k) > tol * scale) keep.push_back(k);
  const int rank = static_cast<int>(keep.size());

  Eigen::MatrixXcd kappa(rank, m);
  for (int r = 0; r < rank; ++r)
    kappa.row(r) = std::sqrt(lambda(keep[r])) * v.col(keep[r]).adjoint();
  return OneParticleStructure(std::move(kappa), std::move(lambda), m);
}

double quasifree_expectation(const SymplecticData& data,
                             const Eigen::VectorXd& f) {
  validate(data);
  if (f.size() != data.dim())
    throw DimensionMismatch("test function has size " +
                            std::to_string(f.size()) + ", phase space has " +
                            std::to_string(data.dim()));
  return std::exp(-0.5 * f.dot(data.mu * f));
}

Eigen::Matrix2d ThermalMode::dynamics(double t) const {
  const double c = std::cos(omega * t);
  const double s = std::sin(omega * t);
  Eigen::Matrix2d rot;
  rot << c, s, -s, c;
  return rot;
}

ThermalMode thermal_mode(double omega, double beta) {
  if (!(omega > 0.0) || !(beta > 0.0))
    throw NonPositiveParameters("thermal mode needs omega > 0 and beta > 0");
  ThermalMode mode;
  mode.omega = omega;
  mode.beta = beta;
  mode.data.sigma.resize(2, 2);
  mode.data.sigma << 0.0, 1.0, -1.0, 0.0;
  const double coth = 1.0 / std::tanh(0.5 * beta * omega);
  mode.data.mu = coth * Eigen::Matrix2d::Identity();
  return mode;
}

standard_subspace::RealSubspace local_subspace(
    const OneParticleStructure& structure, const std::vector<int>& mask) {
  Eigen::MatrixXcd generators(structure.rank(),
                              static_cast<Eigen::Index>(mask.size()));
  for (std::size_t k = 0; k < mask.size(); ++k) {
    if (mask[k] < 0 || mask[k] >= structure.source_dim())
      throw DimensionMismatch("mask index " + std::to_string(mask[k]) +
                              " outside phase space of dimension " +
                              std::to_string(structure.source_dim()));
    generators.col(static_cast<Eigen::Index>(k)) =
        structure.kappa().col(mask[k]);
  }
  return standard_subspace::RealSubspace::from_complex_span(generators);
}

SymplecticData random_dominated_pair(int m, CounterRng& rng, int slack) {
  const int rows = std::max(0, m + slack);
  Eigen::MatrixXcd a(rows, m);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < m; ++c)
      a(r, c) = std::complex<double>(rng.normal(), rng.normal());
  const Eigen::MatrixXcd gram = a.adjoint() * a / std::max(1, rows);
  SymplecticData data;
  data.mu = gram.real();
  data.sigma = -gram.imag();
  // symmetrize away roundoff so validate() passes exactly
  data.mu = 0.5 * (data.mu + data.mu.transpose()).eval();
  data.sigma = 0.5 * (data.sigma - data.sigma.transpose()).eval();
  return data;
}

}  // namespace modent::one_particle
