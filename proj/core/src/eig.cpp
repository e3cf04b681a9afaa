#include "wmtomo/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wmtomo::linalg {

namespace {

constexpr double kHermTol = 1e-8;
constexpr double kOffTol = 1e-12;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Phase-normalize every column: first component with magnitude above 1e-12 is
// made real positive. Makes eigenvectors deterministic.
void normalize_column_phases(ComplexMatrix& v) {
  const std::size_t n = v.dim();
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      const double mag = std::abs(v(r, c));
      if (mag > 1e-12) {
        const std::complex<double> phase = std::conj(v(r, c)) / mag;
        for (std::size_t k = 0; k < n; ++k) v(k, c) *= phase;
        break;
      }
    }
  }
}

// Lexicographic (Re, Im) comparison of phase-normalized columns a and b.
bool column_less(const ComplexMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < v.dim(); ++r) {
    const auto va = v(r, a);
    const auto vb = v(r, b);
    if (va.real() != vb.real()) return va.real() < vb.real();
    if (va.imag() != vb.imag()) return va.imag() < vb.imag();
  }
  return false;
}

}  // namespace

HermitianEig eigh(const ComplexMatrix& m) {
  if (!m.is_hermitian(kHermTol)) throw NotHermitian("eigh: input is not Hermitian");

  const std::size_t n = m.dim();
  ComplexMatrix a = hermitize(m);  // remove the sub-tolerance asymmetry
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(1.0, a.frobenius_norm());

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= kOffTol * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const std::complex<double> apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= kOffTol * scale / (double)(n * n)) continue;

        // Phase u makes the pivot real; the real rotation (c, s) then zeroes it.
        const std::complex<double> u = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double tau = (aqq - app) / (2.0 * mag);
        double t;
        if (tau >= 0.0)
          t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
        else
          t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const std::complex<double> su = s * u;

        // A <- G' A G with G = I except G(p,p)=c, G(p,q)=s u, G(q,p)=-s conj(u),
        // G(q,q)=c; conjugation keeps A Hermitian and zeroes A(p,q).
        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const std::complex<double> akp = a(k, p);
          const std::complex<double> akq = a(k, q);
          a(k, p) = c * akp - std::conj(su) * akq;
          a(k, q) = su * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        const double app_new = app - t * mag;
        const double aqq_new = aqq + t * mag;
        a(p, p) = app_new;
        a(q, q) = aqq_new;
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const std::complex<double> vkp = v(k, p);
          const std::complex<double> vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(su) * vkq;
          v(k, q) = su * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<double> vals(n);
  for (std::size_t i = 0; i < n; ++i) vals[i] = a(i, i).real();

  normalize_column_phases(v);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (vals[x] != vals[y]) return vals[x] > vals[y];
    return column_less(v, x, y);
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.eigenvalues[i] = vals[order[i]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, i) = v(r, order[i]);
  }
  return out;
}

ComplexMatrix exp_generator(const ComplexMatrix& g, double theta) {
  if (!g.is_hermitian(kHermTol))
    throw NotHermitian("exp_generator: generator is not Hermitian");

  const std::size_t n = g.dim();
  if (frobenius_distance(g * g, ComplexMatrix::identity(n)) <= 1e-10) {
    ComplexMatrix out = ComplexMatrix::identity(n) * std::complex<double>(std::cos(theta), 0.0);
    out += g * std::complex<double>(0.0, -std::sin(theta));
    return out;
  }

  const HermitianEig e = eigh(g);
  ComplexMatrix d(n);
  for (std::size_t i = 0; i < n; ++i)
    d(i, i) = std::exp(std::complex<double>(0.0, -theta * e.eigenvalues[i]));
  return e.eigenvectors * d * e.eigenvectors.adjoint();
}

}  // namespace wmtomo::linalg
