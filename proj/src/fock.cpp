#include "modent/fock.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "modent/errors.hpp"
#include "modent/linalg.hpp"

namespace modent::fock {

namespace ss = modent::standard_subspace;
using std::complex;

FockBasis::FockBasis(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1 || modes > 3)
    throw SchemaError("Fock basis supports 1 to 3 modes, got " +
                      std::to_string(modes));
  if (cutoff < 0)
    throw CutoffTooSmall("photon cutoff must be nonnegative");

  const int s = cutoff + 1;
  int table = s;
  for (int j = 1; j < modes; ++j) table *= s;
  lookup_.assign(static_cast<std::size_t>(table), -1);

  // total level ascending; within a level earlier modes are filled first
  std::array<int, 3> n{0, 0, 0};
  for (int level = 0; level <= cutoff; ++level) {
    if (modes == 1) {
      n[0] = level;
      lookup_[static_cast<std::size_t>(level)] =
          static_cast<int>(index_.size());
      index_.push_back(n);
      continue;
    }
    for (int n0 = level; n0 >= 0; --n0) {
      n[0] = n0;
      const int rem = level - n0;
      if (modes == 2) {
        n[1] = rem;
        lookup_[static_cast<std::size_t>(n0 + s * rem)] =
            static_cast<int>(index_.size());
        index_.push_back(n);
        continue;
      }
      for (int n1 = rem; n1 >= 0; --n1) {
        n[1] = n1;
        n[2] = rem - n1;
        lookup_[static_cast<std::size_t>(n0 + s * (n1 + s * n[2]))] =
            static_cast<int>(index_.size());
        index_.push_back(n);
      }
    }
  }
}

int FockBasis::level(int k) const {
  const auto& n = index_.at(static_cast<std::size_t>(k));
  return n[0] + n[1] + n[2];
}

int FockBasis::position(const std::array<int, 3>& n) const {
  int total = 0;
  for (int j = 0; j < 3; ++j) {
    if (n[j] < 0) return -1;
    if (j >= modes_ && n[j] != 0) return -1;
    total += n[j];
  }
  if (total > cutoff_) return -1;
  const int s = cutoff_ + 1;
  std::size_t key = static_cast<std::size_t>(n[0]);
  if (modes_ > 1) key += static_cast<std::size_t>(s) * n[1];
  if (modes_ > 2) key += static_cast<std::size_t>(s) * s * n[2];
  return lookup_[key];
}

double coherent_tail_bound(double norm_sq, int cutoff) {
  if (norm_sq <= 0.0) return 0.0;
  if (norm_sq >= cutoff + 2)
    return std::numeric_limits<double>::infinity();
  // sum_{k > N} x^k/k!  <=  x^{N+1}/(N+1)! * 1 / (1 - x/(N+2))
  double term = 1.0;
  for (int k = 1; k <= cutoff + 1; ++k) term *= norm_sq / k;
  return term / (1.0 - norm_sq / (cutoff + 2));
}

TruncatedFockVector coherent_vector(const FockBasis& basis,
                                    const Eigen::VectorXcd& phi,
                                    double max_tail) {
  if (phi.size() != basis.modes())
    throw DimensionMismatch("coherent argument has " +
                            std::to_string(phi.size()) + " modes, basis has " +
                            std::to_string(basis.modes()));
  TruncatedFockVector v;
  v.modes = basis.modes();
  v.cutoff = basis.cutoff();
  v.tail = coherent_tail_bound(phi.squaredNorm(), basis.cutoff());
  if (!(v.tail <= max_tail))
    throw CutoffTooSmall("coherent tail " + std::to_string(v.tail) +
                         " exceeds bound " + std::to_string(max_tail));

  // per-mode table of phi_j^p / sqrt(p!)
  std::vector<std::vector<complex<double>>> pw(
      static_cast<std::size_t>(basis.modes()));
  for (int j = 0; j < basis.modes(); ++j) {
    auto& t = pw[static_cast<std::size_t>(j)];
    t.resize(static_cast<std::size_t>(basis.cutoff()) + 1);
    t[0] = 1.0;
    for (int p = 1; p <= basis.cutoff(); ++p)
      t[static_cast<std::size_t>(p)] =
          t[static_cast<std::size_t>(p - 1)] * phi(j) / std::sqrt(double(p));
  }
  v.coeff.resize(basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    const auto& n = basis.occupation(k);
    complex<double> c = 1.0;
    for (int j = 0; j < basis.modes(); ++j)
      c *= pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(n[j])];
    v.coeff(k) = c;
  }
  return v;
}

Eigen::MatrixXcd creation_matrix(const FockBasis& basis, int mode) {
  if (mode < 0 || mode >= basis.modes())
    throw DimensionMismatch("mode index " + std::to_string(mode) +
                            " out of range");
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    if (basis.level(k) >= basis.cutoff()) continue;
    std::array<int, 3> up = basis.occupation(k);
    up[mode] += 1;
    const int pos = basis.position(up);
    a(pos, k) = std::sqrt(double(up[mode]));
  }
  return a;
}

Eigen::MatrixXcd annihilation_matrix(const FockBasis& basis, int mode) {
  return creation_matrix(basis, mode).adjoint();
}

Eigen::MatrixXcd weyl_matrix(const FockBasis& basis,
                             const Eigen::VectorXcd& psi) {
  if (psi.size() != basis.modes())
    throw DimensionMismatch("Weyl argument has " + std::to_string(psi.size()) +
                            " modes, basis has " +
                            std::to_string(basis.modes()));
  Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(basis.dim(), basis.dim());
  for (int j = 0; j < basis.modes(); ++j) {
    const Eigen::MatrixXcd c = creation_matrix(basis, j);
    g += psi(j) * c - std::conj(psi(j)) * c.adjoint();
  }
  return g.exp();
}

TruncatedFockVector weyl_apply(const FockBasis& basis,
                               const Eigen::VectorXcd& psi,
                               const TruncatedFockVector& v) {
  if (v.modes != basis.modes() || v.cutoff != basis.cutoff() ||
      v.coeff.size() != basis.dim())
    throw DimensionMismatch("Fock vector does not match the basis");
  TruncatedFockVector out = v;
  out.coeff = weyl_matrix(basis, psi) * v.coeff;
  return out;
}

std::complex<double> vacuum_expectation(const Eigen::VectorXcd& psi,
                                        int cutoff) {
  if (psi.size() < 1) return 1.0;
  // W(psi) factorizes over modes, so <xi, W psi xi> is a product of one-mode
  // matrix elements; per-mode truncation dominates the simplex truncation.
  complex<double> acc = 1.0;
  const FockBasis one(1, cutoff);
  for (Eigen::Index j = 0; j < psi.size(); ++j) {
    Eigen::VectorXcd single(1);
    single << psi(j);
    acc *= weyl_matrix(one, single)(0, 0);
  }
  return acc;
}

Eigen::VectorXd second_quantized_modular(const ss::RealSubspace& h,
                                         const FockBasis& basis) {
  if (h.ambient_dim() != basis.modes())
    throw DimensionMismatch("subspace ambient dimension " +
                            std::to_string(h.ambient_dim()) +
                            " does not match basis modes " +
                            std::to_string(basis.modes()));
  const ss::ModularData md = ss::modular_data(h);
  // per-mode table of lambda_j^p
  std::vector<std::vector<double>> pw(static_cast<std::size_t>(basis.modes()));
  for (int j = 0; j < basis.modes(); ++j) {
    auto& t = pw[static_cast<std::size_t>(j)];
    t.resize(static_cast<std::size_t>(basis.cutoff()) + 1);
    t[0] = 1.0;
    for (int p = 1; p <= basis.cutoff(); ++p)
      t[static_cast<std::size_t>(p)] =
          t[static_cast<std::size_t>(p - 1)] * md.delta_eigenvalues(j);
  }
  Eigen::VectorXd gamma(basis.dim());
  for (int k = 0; k < basis.dim(); ++k) {
    const auto& n = basis.occupation(k);
    double g = 1.0;
    for (int j = 0; j < basis.modes(); ++j)
      g *= pw[static_cast<std::size_t>(j)][static_cast<std::size_t>(n[j])];
    gamma(k) = g;
  }
  return gamma;
}

DensityMatrix::DensityMatrix(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols())
    throw DimensionMismatch("density matrix must be square");
  rho_ = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho_);
  if (eig.info() != Eigen::Success)
    throw NumericallySingular("density matrix eigendecomposition failed");
  eig_ = eig.eigenvalues();
  vec_ = eig.eigenvectors();
  trace_ = rho_.trace().real();
  const double scale = std::max(1.0, std::abs(trace_));
  if (eig_(0) < -1e-12 * scale)
    throw NumericallySingular("density matrix has eigenvalue " +
                              std::to_string(eig_(0)));
}

double DensityMatrix::von_neumann_entropy() const {
  double s = 0.0;
  for (Eigen::Index k = 0; k < eig_.size(); ++k)
    if (eig_(k) > 0.0) s -= eig_(k) * std::log(eig_(k));
  return s;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double support_tol) {
  if (rho.matrix().rows() != sigma.matrix().rows())
    throw DimensionMismatch("density matrices act on different spaces");
  double first = 0.0;
  for (Eigen::Index k = 0; k < rho.eigenvalues().size(); ++k) {
    const double lam = rho.eigenvalues()(k);
    if (lam > 0.0) first += lam * std::log(lam);
  }
  // weights of rho in sigma's eigenbasis
  const Eigen::MatrixXcd m =
      sigma.eigenvectors().adjoint() * rho.matrix() * sigma.eigenvectors();
  double second = 0.0;
  for (Eigen::Index j = 0; j < sigma.eigenvalues().size(); ++j) {
    const double mu = sigma.eigenvalues()(j);
    const double w = m(j, j).real();
    if (mu <= support_tol) {
      if (w > 1e-9 * std::max(1.0, rho.trace()))
        throw NumericallySingular(
            "state has weight " + std::to_string(w) +
            " outside the support of the reference state");
      continue;
    }
    second += w * std::log(mu);
  }
  return first - second;
}

OracleReport araki_relative_entropy_oracle(const ss::RealSubspace& h,
                                           const Eigen::VectorXcd& phi,
                                           int cutoff, double thermal_tail_max,
                                           double displacement_tail_max) {
  if (h.ambient_dim() != 2)
    throw DimensionMismatch("oracle expects a subspace of C^2");
  if (phi.size() != 2)
    throw DimensionMismatch("oracle expects a vector in C^2");
  if (!ss::is_standard(h).standard())
    throw NotThermalForm("subspace is not standard");
  const ss::ModularData md = ss::modular_data(h);
  const double l1 = md.delta_eigenvalues(0);
  const double l2 = md.delta_eigenvalues(1);
  if (std::abs(l1 * l2 - 1.0) > 1e-8 * std::max(1.0, l2))
    throw NotThermalForm("modular spectrum is not inversion-symmetric");

  // occupation weight q from the geometric ladder of Gamma(Delta)
  const FockBasis probe(2, 3);
  const Eigen::VectorXd gamma = second_quantized_modular(h, probe);
  const double q = gamma(probe.position({1, 0, 0})) /
                   gamma(probe.position({0, 0, 0}));
  double defect = std::abs(q - l1);
  for (int k = 0; k + 1 <= 3; ++k) {
    const double r = gamma(probe.position({k + 1, 0, 0})) /
                     gamma(probe.position({k, 0, 0}));
    defect = std::max(defect, std::abs(r - q));
    const double r2 = gamma(probe.position({0, k + 1, 0})) /
                      gamma(probe.position({0, k, 0}));
    defect = std::max(defect, std::abs(r2 * q - 1.0));
  }
  if (defect > 1e-8 * std::max(1.0, l2))
    throw NotThermalForm("second-quantized weights are not geometric");
  if (!(q < 1.0 - 1e-8))
    throw NotThermalForm("modular spectrum is trivial (abelian block)");

  OracleReport rep;
  rep.gamma_ratio_defect = defect;
  rep.theta = -std::log(q);
  const double nbar = q / (1.0 - q);

  // modular eigenbasis aligned so that J maps the first vector to the second
  const Eigen::VectorXcd v1 = md.delta_eigenvectors.col(0);
  const Eigen::VectorXcd v2 = md.j_unitary * v1.conjugate();
  const complex<double> c1 = la::cinner(phi, v1);
  const complex<double> c2 = la::cinner(phi, v2);
  const complex<double> delta =
      std::sqrt(nbar + 1.0) * c1 - std::sqrt(nbar) * std::conj(c2);
  rep.displacement_abs = std::abs(delta);

  rep.thermal_tail = std::pow(q, cutoff + 1);
  rep.displacement_tail = coherent_tail_bound(std::norm(delta), cutoff);
  if (!(rep.thermal_tail <= thermal_tail_max))
    throw CutoffTooSmall("thermal tail " + std::to_string(rep.thermal_tail) +
                         " exceeds bound " + std::to_string(thermal_tail_max));
  if (!(rep.displacement_tail <= displacement_tail_max))
    throw CutoffTooSmall("displacement tail " +
                         std::to_string(rep.displacement_tail) +
                         " exceeds bound " +
                         std::to_string(displacement_tail_max));

  // restricted vacuum: geometric thermal weights on one mode
  const FockBasis one(1, cutoff);
  Eigen::VectorXd p(one.dim());
  double w = 1.0 - q;
  for (int k = 0; k < one.dim(); ++k) {
    p(k) = w;
    w *= q;
  }
  const Eigen::MatrixXcd rho_vac =
      p.cast<complex<double>>().asDiagonal().toDenseMatrix();
  Eigen::VectorXcd disp(1);
  disp << delta;
  const Eigen::MatrixXcd d = weyl_matrix(one, disp);
  const Eigen::MatrixXcd rho_phi = d * rho_vac * d.adjoint();

  rep.relative_entropy =
      relative_entropy(DensityMatrix(rho_phi), DensityMatrix(rho_vac));
  return rep;
}

}  // namespace modent::fock
