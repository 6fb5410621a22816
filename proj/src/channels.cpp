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

#include "histlab/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "histlab/eig.hpp"
#include "histlab/kernels.hpp"

namespace histlab {

KrausChannel KrausChannel::from_kraus(std::vector<ComplexMatrix> ops,
                                      bool allow_trace_decreasing) {
  if (ops.empty()) throw std::invalid_argument("KrausChannel: need at least one Kraus operator");
  KrausChannel ch;
  ch.out_dim = ops.front().rows();
  ch.in_dim = ops.front().cols();
  ch.kraus_ops = std::move(ops);
  ch.allow_trace_decreasing = allow_trace_decreasing;
  ch.validate();
  return ch;
}

KrausChannel KrausChannel::identity(std::size_t dim) {
  return from_kraus({ComplexMatrix::identity(dim)});
}

KrausChannel KrausChannel::unitary(const ComplexMatrix& u) {
  UnitaryOp(u).validate();
  return from_kraus({u});
}

KrausChannel KrausChannel::depolarizing_qubit() {
  std::vector<ComplexMatrix> ops = {ComplexMatrix::identity(2), pauli_x(), pauli_y(), pauli_z()};
  for (auto& k : ops) k *= Complex{0.5, 0.0};
  return from_kraus(std::move(ops));
}

void KrausChannel::validate(double tol) const {
  if (in_dim == 0 || out_dim == 0)
    throw std::invalid_argument("KrausChannel: dimensions must be positive");
  if (kraus_ops.empty())
    throw std::invalid_argument("KrausChannel: need at least one Kraus operator");
  for (const auto& k : kraus_ops) {
    if (k.rows() != out_dim || k.cols() != in_dim)
      throw std::invalid_argument("KrausChannel: Kraus operator shape mismatch");
    if (!k.all_finite()) throw std::invalid_argument("KrausChannel: non-finite entries");
  }
  if (!allow_trace_decreasing) {
    ComplexMatrix sum(in_dim, in_dim);
    for (const auto& k : kraus_ops) sum += matmul(k.dagger(), k);
    if (sum.max_abs_diff(ComplexMatrix::identity(in_dim)) > tol)
      throw std::invalid_argument(
          "KrausChannel: not trace preserving (set allow_trace_decreasing to admit)");
  }
}

ChoiChannel choi_from_kraus(const KrausChannel& ch, const OrthonormalBasis& in_basis,
                            const OrthonormalBasis& out_basis) {
  ch.validate(kDefaultTol);
  in_basis.validate();
  out_basis.validate();
  if (in_basis.dim() != ch.in_dim || out_basis.dim() != ch.out_dim)
    throw std::invalid_argument("choi_from_kraus: basis dimensions do not match the channel");

  const std::size_t di = ch.in_dim;
  const std::size_t dk = ch.out_dim;
  ComplexMatrix choi(dk * di, dk * di);
  for (const auto& k : ch.kraus_ops) {
    // Kraus operator in the chosen bases; the Choi matrix is the sum of
    // outer products of its row-major vectorizations.
    const ComplexMatrix a = matmul(out_basis.vectors.dagger(), matmul(k, in_basis.vectors));
    for (std::size_t r = 0; r < dk * di; ++r)
      for (std::size_t c = 0; c < dk * di; ++c)
        choi(r, c) += a(r / di, r % di) * std::conj(a(c / di, c % di));
  }

  // By construction the matrix is PSD; a significantly negative eigenvalue
  // means the inputs were corrupt.
  const auto vals = eigvals_hermitian(choi);
  if (!vals.empty() && vals.back() < -1e-6)
    throw std::logic_error("choi_from_kraus: reshaped Choi matrix is not PSD (min eigenvalue " +
                           std::to_string(vals.back()) + ")");

  ChoiChannel out;
  out.in_basis = in_basis;
  out.out_basis = out_basis;
  out.choi = std::move(choi);
  return out;
}

HistoryOperator channel_history(const DensityMatrix& rho, const ChoiChannel& choi) {
  rho.validate();
  const std::size_t di = choi.in_dim();
  const std::size_t dk = choi.out_dim();
  if (rho.dim() != di)
    throw std::invalid_argument("channel_history: rho dimension does not match the input basis");
  if (choi.choi.rows() != dk * di || choi.choi.cols() != dk * di)
    throw std::invalid_argument("channel_history: malformed Choi matrix");

  // rho in the input basis frame: rho_ij = <in_i| rho |in_j>.
  const ComplexMatrix rho_frame =
      matmul(choi.in_basis.vectors.dagger(), matmul(rho.mat, choi.in_basis.vectors));

  // H = W T W^dagger with W = OutB (x) InB and T[(ki),(lj)] = Lambda_{kl,ij} rho_ij,
  // which is exactly sum Lambda_{kl,ij} rho_ij F_kl (x) E_ij.
  ComplexMatrix t(dk * di, dk * di);
  for (std::size_t r = 0; r < dk * di; ++r)
    for (std::size_t c = 0; c < dk * di; ++c)
      t(r, c) = choi.choi(r, c) * rho_frame(r % di, c % di);

  const ComplexMatrix w = kron(choi.out_basis.vectors, choi.in_basis.vectors);
  HistoryOperator h;
  h.matrix = matmul(w, matmul(t, w.dagger()));
  h.out_basis = choi.out_basis;
  h.in_basis = choi.in_basis;
  return h;
}

DensityMatrix marginal_out(const HistoryOperator& h) {
  const std::size_t dk = h.out_basis.dim();
  const std::size_t di = h.in_basis.dim();
  if (h.matrix.rows() != dk * di || !h.matrix.is_square())
    throw std::invalid_argument("marginal_out: malformed history operator");

  // Close the earlier (input) leg coherently: contract both input indices
  // with the uniform bra/ket over the input basis.  Entry (k, i; l, j) of the
  // operator holds Lambda_{kl,ij} rho_ij, so this double sum is exactly
  // Lambda(rho)_{kl}.  An ordinary partial trace would keep only i == j and
  // dephase rho in the input basis instead.
  const ComplexMatrix w = kron(h.out_basis.vectors, h.in_basis.vectors);
  const ComplexMatrix t = matmul(w.dagger(), matmul(h.matrix, w));
  ComplexMatrix m(dk, dk);
  for (std::size_t k = 0; k < dk; ++k)
    for (std::size_t l = 0; l < dk; ++l) {
      Complex sum = 0.0;
      for (std::size_t i = 0; i < di; ++i)
        for (std::size_t j = 0; j < di; ++j) sum += t(k * di + i, l * di + j);
      m(k, l) = sum;
    }
  const ComplexMatrix& b = h.out_basis.vectors;
  return DensityMatrix(matmul(b, matmul(m, b.dagger())));
}

CptpReport validate_cptp(const KrausChannel& ch, double tol) {
  CptpReport report;
  report.trace_decreasing_allowed = ch.allow_trace_decreasing;

  ComplexMatrix sum(ch.in_dim, ch.in_dim);
  for (const auto& k : ch.kraus_ops) {
    if (k.rows() != ch.out_dim || k.cols() != ch.in_dim)
      throw std::invalid_argument("validate_cptp: Kraus operator shape mismatch");
    sum += matmul(k.dagger(), k);
  }
  report.tp_deviation = sum.max_abs_diff(ComplexMatrix::identity(ch.in_dim));
  report.tp_pass = report.tp_deviation <= tol;

  // CP test on the computational-basis Choi matrix; basis choice does not
  // affect the spectrum.
  ComplexMatrix choi(ch.out_dim * ch.in_dim, ch.out_dim * ch.in_dim);
  for (const auto& k : ch.kraus_ops)
    for (std::size_t r = 0; r < choi.rows(); ++r)
      for (std::size_t c = 0; c < choi.cols(); ++c)
        choi(r, c) += k(r / ch.in_dim, r % ch.in_dim) * std::conj(k(c / ch.in_dim, c % ch.in_dim));
  const auto vals = eigvals_hermitian(choi);
  report.choi_min_eigenvalue = vals.empty() ? 0.0 : vals.back();
  report.cp_pass = report.choi_min_eigenvalue >= -tol;
  return report;
}

ComplexMatrix apply_channel(const KrausChannel& ch, const ComplexMatrix& rho) {
  if (rho.rows() != ch.in_dim || !rho.is_square())
    throw std::invalid_argument("apply_channel: rho shape mismatch");
  ComplexMatrix out(ch.out_dim, ch.out_dim);
  for (const auto& k : ch.kraus_ops) out += matmul(k, matmul(rho, k.dagger()));
  return out;
}

std::vector<ComplexMatrix> kraus_from_choi(const ChoiChannel& choi, double cutoff) {
  const std::size_t di = choi.in_dim();
  const std::size_t dk = choi.out_dim();
  const EighResult eig = eigh_hermitian(choi.choi);
  std::vector<ComplexMatrix> ops;
  for (std::size_t s = 0; s < eig.eigenvalues.size(); ++s) {
    const double lam = eig.eigenvalues[s];
    if (lam < -1e-6)
      throw std::invalid_argument("kraus_from_choi: Choi matrix is not PSD");
    if (lam <= cutoff) continue;
    const double w = std::sqrt(lam);
    // Un-vectorize the eigenvector (row-major), then return to ambient
    // coordinates: K = OutB A InB^dagger.
    ComplexMatrix a(dk, di);
    for (std::size_t r = 0; r < dk * di; ++r)
      a(r / di, r % di) = w * eig.eigenvectors(r, s);
    ops.push_back(matmul(choi.out_basis.vectors, matmul(a, choi.in_basis.vectors.dagger())));
  }
  if (ops.empty()) throw std::invalid_argument("kraus_from_choi: channel is identically zero");
  return ops;
}

}  // namespace histlab
