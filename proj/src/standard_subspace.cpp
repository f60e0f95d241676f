#include "modent/standard_subspace.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <string>
#include <vector>

#include "modent/errors.hpp"

namespace modent::standard_subspace {

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

Eigen::MatrixXcd random_unitary(int n, CounterRng& rng) {
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      g(r, c) = std::complex<double>(rng.normal(), rng.normal());
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) {
    const std::complex<double> d = r(c, c);
    if (std::abs(d) > 0) q.col(c) *= d / std::abs(d);
  }
  return q;
}

}  // namespace

RealSubspace RealSubspace::from_complex_span(const Eigen::MatrixXcd& span,
                                             double tol) {
  RealSubspace h;
  h.ambient_dim_ = static_cast<int>(span.rows());
  h.span_ = span;
  h.basis_ = la::orth_basis(la::realify_columns(span), tol);
  return h;
}

RealSubspace RealSubspace::from_realified_span(int ambient_dim,
                                               const Eigen::MatrixXd& span,
                                               double tol) {
  if (span.rows() != 2 * ambient_dim)
    throw DimensionMismatch("realified span must have 2n rows");
  RealSubspace h;
  h.ambient_dim_ = ambient_dim;
  h.basis_ = la::orth_basis(span, tol);
  h.span_ = la::unrealify_columns(h.basis_);
  return h;
}

Eigen::MatrixXd RealSubspace::basis_times_i() const {
  return la::mult_i(ambient_dim_) * basis_;
}

Eigen::MatrixXcd RealSubspace::complex_span_basis(double tol) const {
  return la::orth_basis_complex(la::unrealify_columns(basis_), tol);
}

Standardness is_standard(const RealSubspace& h, const Tolerances& tol) {
  Standardness out;
  const int n = h.ambient_dim();
  const int d = h.real_dim();
  if (d == 0) return out;
  Eigen::MatrixXd combined(2 * n, 2 * d);
  combined << h.basis(), h.basis_times_i();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(combined);
  const auto& sv = svd.singularValues();
  int rank = 0;
  while (rank < sv.size() && sv(rank) > tol.rank) ++rank;
  out.separating_margin = sv(sv.size() - 1);
  out.separating = (rank == 2 * d);
  out.generating = (rank == 2 * n);
  return out;
}

RealSubspace symplectic_complement(const RealSubspace& h, double tol) {
  // u in H' iff u is Euclidean-orthogonal to i*H
  const Eigen::MatrixXd a = h.basis_times_i().transpose();
  return RealSubspace::from_realified_span(h.ambient_dim(),
                                           la::null_space(a, tol), tol);
}

bool is_abelian(const RealSubspace& h, double tol) {
  const Eigen::MatrixXd g =
      h.basis().transpose() * la::mult_i(h.ambient_dim()) * h.basis();
  return g.size() == 0 || g.cwiseAbs().maxCoeff() <= tol;
}

bool is_factorial(const RealSubspace& h, double tol) {
  const RealSubspace hp = symplectic_complement(h, tol);
  return la::intersect(h.basis(), hp.basis(), 1e-8).cols() == 0;
}

Eigen::MatrixXd tomita_realified(const RealSubspace& h,
                                 const Tolerances& tol) {
  const Standardness st = is_standard(h, tol);
  if (!st.standard())
    throw NotStandard("tomita operator needs a standard subspace (margin " +
                      std::to_string(st.separating_margin) + ")");
  const int n = h.ambient_dim();
  Eigen::MatrixXd t(2 * n, 2 * n);
  t << h.basis(), h.basis_times_i();
  Eigen::MatrixXd d = Eigen::MatrixXd::Identity(2 * n, 2 * n);
  d.bottomRightCorner(n, n) *= -1.0;
  return t * d * t.inverse();
}

Eigen::MatrixXcd ModularData::delta_power(double exponent) const {
  const Eigen::VectorXcd powers =
      delta_eigenvalues.array().pow(exponent).cast<std::complex<double>>();
  return delta_eigenvectors * powers.asDiagonal() *
         delta_eigenvectors.adjoint();
}

Eigen::MatrixXcd ModularData::delta_it(double t) const {
  Eigen::VectorXcd phases(delta_eigenvalues.size());
  for (Eigen::Index k = 0; k < phases.size(); ++k)
    phases(k) = std::exp(std::complex<double>(
        0.0, t * std::log(delta_eigenvalues(k))));
  return delta_eigenvectors * phases.asDiagonal() *
         delta_eigenvectors.adjoint();
}

ModularData modular_data(const RealSubspace& h, const Tolerances& tol) {
  ModularData md;
  md.s_real = tomita_realified(h, tol);
  Eigen::MatrixXd dr = md.s_real.transpose() * md.s_real;
  md.delta_real = 0.5 * (dr + dr.transpose());

  Eigen::MatrixXcd dc = la::unrealify_linear(md.delta_real);
  dc = 0.5 * (dc + dc.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dc);
  if (es.info() != Eigen::Success)
    throw NumericallySingular("modular operator eigensolve failed");
  md.delta_eigenvalues = es.eigenvalues();
  md.delta_eigenvectors = es.eigenvectors();
  canonicalize_columns(md.delta_eigenvectors);

  const double lo = md.delta_eigenvalues.minCoeff();
  const double hi = md.delta_eigenvalues.maxCoeff();
  if (lo <= 0.0)
    throw NumericallySingular("modular operator not positive definite");
  md.condition = hi / lo;
  if (md.condition > tol.condition_cap)
    throw NumericallySingular("modular condition number " +
                              std::to_string(md.condition) + " beyond cap");

  const Eigen::VectorXcd logs =
      md.delta_eigenvalues.array().log().cast<std::complex<double>>();
  md.log_delta_real = la::realify_linear(
      md.delta_eigenvectors * logs.asDiagonal() *
      md.delta_eigenvectors.adjoint());
  md.j_real = md.s_real * la::realify_linear(md.delta_power(-0.5));

  // J = j_unitary composed with componentwise conjugation; on the real basis
  // vectors e_k the conjugation is the identity, so the columns of the
  // unitary part are just J e_k.
  const int n = h.ambient_dim();
  md.j_unitary.resize(n, n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(n);
    e(k) = 1.0;
    md.j_unitary.col(k) = la::unrealify(md.j_real * la::realify(e));
  }
  return md;
}

Eigen::MatrixXd cutting_projection(const RealSubspace& h,
                                   const Tolerances& tol) {
  const Standardness st = is_standard(h, tol);
  if (!st.standard())
    throw NotStandard("cutting projection needs a standard subspace");
  const RealSubspace hp = symplectic_complement(h, tol.rank);
  const int n = h.ambient_dim();
  if (hp.real_dim() != n)
    throw NotFactorial("symplectic complement has wrong dimension");
  Eigen::MatrixXd t(2 * n, 2 * n);
  t << h.basis(), hp.basis();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(t);
  if (svd.singularValues()(2 * n - 1) <= 1e-8)
    throw NotFactorial("subspace meets its symplectic complement");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  d.topLeftCorner(n, n).setIdentity();
  return t * d * t.inverse();
}

FactorialDecomposition factorial_decomposition(const RealSubspace& h,
                                               const Tolerances& tol) {
  const ModularData md = modular_data(h, tol);
  const int n = h.ambient_dim();
  std::vector<int> fixed, moving;
  for (int k = 0; k < n; ++k) {
    if (std::abs(md.delta_eigenvalues(k) - 1.0) <= tol.eigenvalue_one)
      fixed.push_back(k);
    else
      moving.push_back(k);
  }
  FactorialDecomposition out;
  out.abelian_ambient.resize(n, static_cast<Eigen::Index>(fixed.size()));
  for (std::size_t j = 0; j < fixed.size(); ++j)
    out.abelian_ambient.col(j) = md.delta_eigenvectors.col(fixed[j]);
  out.factorial_ambient.resize(n, static_cast<Eigen::Index>(moving.size()));
  for (std::size_t j = 0; j < moving.size(); ++j)
    out.factorial_ambient.col(j) = md.delta_eigenvectors.col(moving[j]);

  const Eigen::MatrixXcd hc = la::unrealify_columns(h.basis());
  out.abelian_part =
      RealSubspace::from_complex_span(out.abelian_ambient.adjoint() * hc);
  out.factorial_part =
      RealSubspace::from_complex_span(out.factorial_ambient.adjoint() * hc);
  return out;
}

double abelian_entropy(const RealSubspace& h, const Eigen::VectorXcd& phi,
                       const Tolerances& tol) {
  if (phi.size() != h.ambient_dim())
    throw DimensionMismatch("vector does not match subspace ambient");
  if (!is_abelian(h, 1e-8))
    throw NotAbelian("abelian entropy needs H inside its complement");
  const Standardness st = is_standard(h, tol);
  if (!st.generating)
    throw NotStandard("abelian entropy ambient must be the complex span");
  const Eigen::VectorXd u = la::realify(phi);
  const Eigen::VectorXd c = h.basis().transpose() * u;
  return 2.0 * (u.squaredNorm() - c.squaredNorm());
}

namespace {

double factorial_entropy(const RealSubspace& h, const Eigen::VectorXcd& phi,
                         const Tolerances& tol) {
  const ModularData md = modular_data(h, tol);
  const Eigen::MatrixXd p = cutting_projection(h, tol);
  const Eigen::MatrixXd mi = la::mult_i(h.ambient_dim());
  const Eigen::VectorXd u = la::realify(phi);
  const Eigen::VectorXd v = p * (mi * (md.log_delta_real * u));
  return u.dot(mi * v);
}

double entropy_standard(const RealSubspace& h, const Eigen::VectorXcd& phi,
                        const Tolerances& tol) {
  const FactorialDecomposition fd = factorial_decomposition(h, tol);
  double s = 0.0;
  if (fd.abelian_ambient.cols() > 0) {
    const Eigen::VectorXcd phi_a = fd.abelian_ambient.adjoint() * phi;
    s += abelian_entropy(fd.abelian_part, phi_a, tol);
  }
  if (fd.factorial_ambient.cols() > 0) {
    const Eigen::VectorXcd phi_f = fd.factorial_ambient.adjoint() * phi;
    s += factorial_entropy(fd.factorial_part, phi_f, tol);
  }
  return s;
}

}  // namespace

double entropy(const RealSubspace& h, const Eigen::VectorXcd& phi,
               const Tolerances& tol) {
  if (phi.size() != h.ambient_dim())
    throw DimensionMismatch("vector does not match subspace ambient");
  if (h.real_dim() == 0) return 0.0;
  const Standardness st = is_standard(h, tol);
  if (st.standard()) return entropy_standard(h, phi, tol);

  // reduce to the standard component: ambient (H cap iH)^perp cap span_C(H),
  // vector projected onto it
  const Eigen::MatrixXd v_real =
      la::intersect(h.basis(), h.basis_times_i(), 1e-8);
  const Eigen::MatrixXcd qw = h.complex_span_basis();
  const Eigen::MatrixXcd qv =
      la::orth_basis_complex(la::unrealify_columns(v_real));
  const Eigen::MatrixXcd qs = la::complement_within_complex(qw, qv);
  if (qs.cols() == 0) return 0.0;

  const Eigen::MatrixXd b1 = la::complement_within(h.basis(), v_real);
  const Eigen::MatrixXcd coords =
      qs.adjoint() * la::unrealify_columns(b1);
  const RealSubspace k = RealSubspace::from_complex_span(coords);
  const Eigen::VectorXcd phi_s = qs.adjoint() * phi;
  return entropy_standard(k, phi_s, tol);
}

double finiteness_functional(const RealSubspace& h, const Eigen::VectorXcd& phi,
                             const Tolerances& tol) {
  if (phi.size() != h.ambient_dim())
    throw DimensionMismatch("vector does not match subspace ambient");
  const ModularData md = modular_data(h, tol);
  double total = 0.0;
  for (Eigen::Index k = 0; k < md.delta_eigenvalues.size(); ++k) {
    const double lam = md.delta_eigenvalues(k);
    if (std::abs(lam - 1.0) <= tol.eigenvalue_one || lam >= 1.0) continue;
    const std::complex<double> c = md.delta_eigenvectors.col(k).dot(phi);
    total += -std::log(lam) * std::norm(c);
  }
  return total;
}

RealSubspace unitary_transport(const Eigen::MatrixXcd& u,
                               const RealSubspace& h, double tol) {
  if (u.rows() != h.ambient_dim() || u.cols() != h.ambient_dim())
    throw DimensionMismatch("unitary does not match subspace ambient");
  const Eigen::MatrixXcd gram =
      u.adjoint() * u - Eigen::MatrixXcd::Identity(u.rows(), u.cols());
  if (la::operator_norm_complex(gram) > 1e-8)
    throw SchemaError("transport matrix is not unitary");
  return RealSubspace::from_complex_span(u * la::unrealify_columns(h.basis()),
                                         tol);
}

RealSubspace direct_sum(const RealSubspace& a, const RealSubspace& b) {
  const int na = a.ambient_dim();
  const int nb = b.ambient_dim();
  const Eigen::MatrixXcd sa = la::unrealify_columns(a.basis());
  const Eigen::MatrixXcd sb = la::unrealify_columns(b.basis());
  Eigen::MatrixXcd span =
      Eigen::MatrixXcd::Zero(na + nb, sa.cols() + sb.cols());
  span.topLeftCorner(na, sa.cols()) = sa;
  span.bottomRightCorner(nb, sb.cols()) = sb;
  return RealSubspace::from_complex_span(span);
}

RealSubspace random_standard_subspace(int n, CounterRng& rng, double spread) {
  const Eigen::MatrixXcd u = random_unitary(n, rng);
  const Eigen::MatrixXcd w = u * u.transpose();  // symmetric unitary part of J0

  // realified anti-linear map z -> w * conj(z)
  Eigen::MatrixXd j0(2 * n, 2 * n);
  j0.topLeftCorner(n, n) = w.real();
  j0.topRightCorner(n, n) = w.imag();
  j0.bottomLeftCorner(n, n) = w.imag();
  j0.bottomRightCorner(n, n) = -w.real();

  const Eigen::MatrixXcd v = random_unitary(n, rng);
  Eigen::VectorXd d(n);
  const double span = std::log(spread);
  for (int k = 0; k < n; ++k) d(k) = std::exp(rng.uniform(-span, span));
  const Eigen::MatrixXcd p = v * d.asDiagonal() * v.adjoint();
  const Eigen::MatrixXcd pinv =
      v * d.cwiseInverse().asDiagonal() * v.adjoint();

  const Eigen::MatrixXd s =
      la::realify_linear(p) * j0 * la::realify_linear(pinv);
  // fixed points of the involution = range of S + 1
  const Eigen::MatrixXd fixed = la::orth_basis(
      s + Eigen::MatrixXd::Identity(2 * n, 2 * n), 1e-6);
  return RealSubspace::from_realified_span(n, fixed);
}

RealSubspace thermal_pair_subspace(double lambda) {
  const double a = 1.0 / std::sqrt(lambda);
  Eigen::MatrixXcd span(2, 2);
  const std::complex<double> i(0.0, 1.0);
  span.col(0) << a, 1.0;       // b = 1
  span.col(1) << -i * a, i;    // b = i
  return RealSubspace::from_complex_span(span);
}

double distance(const RealSubspace& a, const RealSubspace& b) {
  return la::subspace_distance(a.basis(), b.basis());
}

}  // namespace modent::standard_subspace
