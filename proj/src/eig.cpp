// Copyright 2026 The Histlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "histlab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "histlab/kernels.hpp"

namespace histlab {
namespace {

double off_diag_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (r != c) acc += std::norm(a(r, c));
  return std::sqrt(acc);
}

double frobenius_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) acc += std::norm(a(r, c));
  return std::sqrt(acc);
}

}  // namespace

EighResult eigh_hermitian(const ComplexMatrix& m, double hermiticity_tol) {
  if (!m.is_square()) throw std::invalid_argument("eigh_hermitian: matrix not square");
  if (!m.all_finite()) throw std::invalid_argument("eigh_hermitian: non-finite entries");
  if (!m.is_hermitian(hermiticity_tol))
    throw std::invalid_argument("eigh_hermitian: matrix is not Hermitian within tolerance");
  const std::size_t n = m.rows();

  // Work on the exact Hermitian part so the iteration preserves symmetry.
  ComplexMatrix a(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    a(r, r) = Complex{m(r, r).real(), 0.0};
    for (std::size_t c = r + 1; c < n; ++c) {
      const Complex v = 0.5 * (m(r, c) + std::conj(m(c, r)));
      a(r, c) = v;
      a(c, r) = std::conj(v);
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(frobenius_norm(a), 1e-300);
  const double stop = 1e-14 * scale;
  const int max_sweeps = 100;
  for (int sweep = 0; sweep < max_sweeps && off_diag_norm(a) > stop; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= 1e-18 * scale) continue;
        const Complex phase = apq / mag;  // a(p,q) = mag * phase
        const double alpha = a(p, p).real();
        const double gamma = a(q, q).real();
        // Rotation angle zeroing a(p,q): tan(2 theta) = 2|a_pq| / (a_pp - a_qq).
        const double u = (alpha - gamma) / (2.0 * mag);
        const double t = (u >= 0.0 ? 1.0 : -1.0) / (std::abs(u) + std::sqrt(u * u + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex se_plus = s * phase;             // s * e^{i phi}
        const Complex se_minus = s * std::conj(phase); // s * e^{-i phi}

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const Complex akp = a(k, p);
          const Complex akq = a(k, q);
          a(k, p) = c * akp + se_minus * akq;
          a(k, q) = -se_plus * akp + c * akq;
          a(p, k) = std::conj(a(k, p));
          a(q, k) = std::conj(a(k, q));
        }
        a(p, p) = Complex{alpha + t * mag, 0.0};
        a(q, q) = Complex{gamma - t * mag, 0.0};
        a(p, q) = Complex{0.0, 0.0};
        a(q, p) = Complex{0.0, 0.0};

        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp + se_minus * vkq;
          v(k, q) = -se_plus * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return a(x, x).real() > a(y, y).real(); });

  EighResult result;
  result.eigenvalues.resize(n);
  result.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    result.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) result.eigenvectors(r, k) = v(r, order[k]);
  }
  return result;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& m, double hermiticity_tol) {
  return eigh_hermitian(m, hermiticity_tol).eigenvalues;
}

double trace_norm(const ComplexMatrix& m) {
  if (!m.all_finite()) throw std::invalid_argument("trace_norm: non-finite entries");
  const ComplexMatrix gram = matmul(m.dagger(), m);
  double acc = 0.0;
  for (double lam : eigvals_hermitian(gram)) acc += std::sqrt(std::max(lam, 0.0));
  return acc;
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (!m.is_square() || !m.is_hermitian(tol)) return false;
  const auto vals = eigvals_hermitian(m, tol);
  return vals.empty() || vals.back() >= -tol;
}

ComplexMatrix hermitian_function(const ComplexMatrix& m,
                                 const std::function<Complex(double)>& f) {
  const EighResult eig = eigh_hermitian(m);
  const std::size_t n = m.rows();
  ComplexMatrix scaled = eig.eigenvectors;
  for (std::size_t c = 0; c < n; ++c) {
    const Complex fc = f(eig.eigenvalues[c]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= fc;
  }
  return matmul(scaled, eig.eigenvectors.dagger());
}

}  // namespace histlab
