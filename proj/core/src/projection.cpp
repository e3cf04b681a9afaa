#include "wmtomo/projection.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>

#include "wmtomo/eig.hpp"
#include "wmtomo/errors.hpp"

namespace wmtomo::projection {

namespace {

using linalg::ComplexMatrix;
using std::complex;

ComplexMatrix psd_clip(const ComplexMatrix& m) {
  const linalg::HermitianEig eig = linalg::eigh(m);
  const std::size_t dim = m.dim();
  ComplexMatrix out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double lambda = std::max(eig.eigenvalues[k], 0.0);
    if (lambda == 0.0) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        out(r, c) += lambda * eig.eigenvectors(r, k) *
                     std::conj(eig.eigenvectors(c, k));
      }
    }
  }
  return out;
}

// Precomputed least-squares machinery for the constraint map
// S(chi) = sum_mn chi_mn E_n' E_m = I. Rows index output entries (a, b),
// columns index chi entries (m, n).
class TpProjector {
 public:
  explicit TpProjector(const std::vector<ComplexMatrix>& basis) {
    check_operator_basis(basis);
    dim_ = basis.front().dim();
    chi_dim_ = basis.size();
    const std::size_t rows = dim_ * dim_;
    const std::size_t cols = chi_dim_ * chi_dim_;
    l_.assign(rows, std::vector<complex<double>>(cols));
    for (std::size_t m = 0; m < chi_dim_; ++m) {
      for (std::size_t n = 0; n < chi_dim_; ++n) {
        const ComplexMatrix prod = basis[n].adjoint() * basis[m];
        for (std::size_t a = 0; a < dim_; ++a) {
          for (std::size_t b = 0; b < dim_; ++b) {
            l_[a * dim_ + b][m * chi_dim_ + n] = prod(a, b);
          }
        }
      }
    }
    // Pseudo-inverse of the Gram matrix L L' through its eigensystem; small
    // eigenvalues are dropped so a rank-deficient constraint still projects.
    ComplexMatrix gram(rows);
    for (std::size_t r1 = 0; r1 < rows; ++r1) {
      for (std::size_t r2 = 0; r2 < rows; ++r2) {
        complex<double> acc = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
          acc += l_[r1][c] * std::conj(l_[r2][c]);
        }
        gram(r1, r2) = acc;
      }
    }
    const linalg::HermitianEig eig = linalg::eigh(gram);
    const double cutoff = 1e-10 * std::max(eig.eigenvalues.front(), 0.0);
    gram_pinv_ = ComplexMatrix(rows);
    for (std::size_t k = 0; k < rows; ++k) {
      if (eig.eigenvalues[k] <= cutoff) continue;
      const double inv = 1.0 / eig.eigenvalues[k];
      for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < rows; ++c) {
          gram_pinv_(r, c) += inv * eig.eigenvectors(r, k) *
                              std::conj(eig.eigenvectors(c, k));
        }
      }
    }
  }

  std::size_t chi_dim() const { return chi_dim_; }

  // chi - L'(LL')^+ (S(chi) - I), the Frobenius projection onto the set.
  ComplexMatrix apply(const ComplexMatrix& chi) const {
    if (chi.dim() != chi_dim_) {
      throw DimensionMismatch("matrix dimension does not match basis size");
    }
    const ComplexMatrix x = linalg::hermitize(chi);
    std::vector<complex<double>> residual = constraint_residual(x);
    const std::size_t rows = dim_ * dim_;
    std::vector<complex<double>> weights(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      complex<double> acc = 0.0;
      for (std::size_t c = 0; c < rows; ++c) {
        acc += gram_pinv_(r, c) * residual[c];
      }
      weights[r] = acc;
    }
    ComplexMatrix out = x;
    for (std::size_t m = 0; m < chi_dim_; ++m) {
      for (std::size_t n = 0; n < chi_dim_; ++n) {
        complex<double> corr = 0.0;
        for (std::size_t r = 0; r < rows; ++r) {
          corr += std::conj(l_[r][m * chi_dim_ + n]) * weights[r];
        }
        out(m, n) -= corr;
      }
    }
    out = linalg::hermitize(out);
    double violation = 0.0;
    for (const complex<double>& z : constraint_residual(out)) {
      violation += std::norm(z);
    }
    if (std::sqrt(violation) > 1e-8) {
      throw SingularConstraint(
          "trace-preservation constraint is unreachable for this basis");
    }
    return out;
  }

 private:
  std::vector<complex<double>> constraint_residual(
      const ComplexMatrix& chi) const {
    const std::size_t rows = dim_ * dim_;
    std::vector<complex<double>> res(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      complex<double> acc = 0.0;
      for (std::size_t m = 0; m < chi_dim_; ++m) {
        for (std::size_t n = 0; n < chi_dim_; ++n) {
          acc += l_[r][m * chi_dim_ + n] * chi(m, n);
        }
      }
      res[r] = acc;
    }
    for (std::size_t a = 0; a < dim_; ++a) res[a * dim_ + a] -= 1.0;
    return res;
  }

  std::size_t dim_ = 0;      // operator dimension d
  std::size_t chi_dim_ = 0;  // basis size d*d
  std::vector<std::vector<complex<double>>> l_;
  ComplexMatrix gram_pinv_{1};
};

}  // namespace

std::vector<double> simplex_project(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) throw Error("simplex projection needs finite input");
  }
  std::vector<double> sorted = v;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double tau = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - 1.0) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) tau = candidate;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::max(v[i] - tau, 0.0);
  }
  return out;
}

linalg::ComplexMatrix project_state(const linalg::ComplexMatrix& raw,
                                    const ProjectionConfig&) {
  if (!raw.is_hermitian(1e-8)) {
    throw NotHermitian("state projection needs a Hermitian input");
  }
  const linalg::HermitianEig eig = linalg::eigh(raw);
  const std::vector<double> lambda = simplex_project(eig.eigenvalues);
  const std::size_t dim = raw.dim();
  ComplexMatrix out(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    if (lambda[k] == 0.0) continue;
    for (std::size_t r = 0; r < dim; ++r) {
      for (std::size_t c = 0; c < dim; ++c) {
        out(r, c) += lambda[k] * eig.eigenvectors(r, k) *
                     std::conj(eig.eigenvectors(c, k));
      }
    }
  }
  return out;
}

void check_operator_basis(const std::vector<linalg::ComplexMatrix>& basis) {
  if (basis.empty()) {
    throw NotOrthogonalBasis("operator basis is empty");
  }
  const std::size_t d = basis.front().dim();
  if (basis.size() != d * d) {
    throw NotOrthogonalBasis("operator basis must have dim^2 members");
  }
  // Dimensions must be validated for every member before the pairwise
  // products below touch a mismatched pair.
  for (const linalg::ComplexMatrix& op : basis) {
    if (op.dim() != d) {
      throw NotOrthogonalBasis("operator basis members differ in dimension");
    }
  }
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i; j < basis.size(); ++j) {
      const complex<double> overlap = (basis[i].adjoint() * basis[j]).trace();
      const double expected = (i == j) ? static_cast<double>(d) : 0.0;
      if (std::abs(overlap - expected) > 1e-8) {
        throw NotOrthogonalBasis(
            "operator basis is not orthogonal under tr(Ei' Ej) = d delta_ij");
      }
    }
  }
}

linalg::ComplexMatrix tp_affine_project(
    const linalg::ComplexMatrix& chi,
    const std::vector<linalg::ComplexMatrix>& basis) {
  return TpProjector(basis).apply(chi);
}

ProcessProjection project_process(
    const linalg::ComplexMatrix& raw_chi,
    const std::vector<linalg::ComplexMatrix>& basis,
    const ProjectionConfig& cfg) {
  if (cfg.max_iters < 1 || !(cfg.tol > 0.0)) {
    throw ConfigError("projection", "max_iters >= 1 and tol > 0 required");
  }
  if (!raw_chi.is_hermitian(1e-8)) {
    throw NotHermitian("process projection needs a Hermitian input");
  }
  const TpProjector tp(basis);
  if (raw_chi.dim() != tp.chi_dim()) {
    throw DimensionMismatch("matrix dimension does not match basis size");
  }

  ComplexMatrix x = linalg::hermitize(raw_chi);
  ComplexMatrix p(x.dim());
  ComplexMatrix q(x.dim());
  int iterations = 0;
  bool converged = false;
  while (iterations < cfg.max_iters) {
    ++iterations;
    const ComplexMatrix xp = x + p;
    const ComplexMatrix y = psd_clip(xp);
    p = xp - y;
    const ComplexMatrix yq = y + q;
    const ComplexMatrix x_next = tp.apply(yq);
    q = yq - x_next;
    const double change = linalg::frobenius_distance(x_next, x);
    x = x_next;
    if (change < cfg.tol) {
      converged = true;
      break;
    }
  }
  return {std::move(x), converged, iterations};
}

}  // namespace wmtomo::projection
