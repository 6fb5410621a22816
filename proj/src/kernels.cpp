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

#include "histlab/kernels.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>

namespace histlab {
namespace {

std::size_t dims_product(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw std::invalid_argument("kernels: factor dimension must be positive");
    n *= d;
  }
  return n;
}

// stride[k] = product of dims[k+1..]; factor 0 is the slowest index.
std::vector<std::size_t> strides_of(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> s(dims.size(), 1);
  for (std::size_t k = dims.size(); k-- > 1;) s[k - 1] = s[k] * dims[k];
  return s;
}

void check_keep(const std::vector<std::size_t>& dims, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("kernels: keep list must not be empty");
  for (std::size_t j = 0; j < keep.size(); ++j) {
    if (keep[j] >= dims.size())
      throw std::invalid_argument("kernels: keep index " + std::to_string(keep[j]) +
                                  " out of range for " + std::to_string(dims.size()) +
                                  " factors");
    if (j > 0 && keep[j] <= keep[j - 1])
      throw std::invalid_argument("kernels: keep indices must be strictly increasing");
  }
}

// Flat offsets contributed by the kept digits (index = flat kept index) and by
// the traced digits (index = flat traced index).  partial_trace and
// reduced_density then just add one offset from each table.
struct TraceOffsets {
  std::vector<std::size_t> kept;
  std::vector<std::size_t> traced;
};

TraceOffsets trace_offsets(const std::vector<std::size_t>& dims,
                           const std::vector<std::size_t>& keep) {
  check_keep(dims, keep);
  const auto stride = strides_of(dims);
  std::vector<std::size_t> keep_dims, trace_dims, keep_stride, trace_stride;
  std::size_t j = 0;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (j < keep.size() && keep[j] == k) {
      keep_dims.push_back(dims[k]);
      keep_stride.push_back(stride[k]);
      ++j;
    } else {
      trace_dims.push_back(dims[k]);
      trace_stride.push_back(stride[k]);
    }
  }
  auto expand = [](const std::vector<std::size_t>& sub_dims,
                   const std::vector<std::size_t>& sub_stride) {
    std::size_t count = 1;
    for (std::size_t d : sub_dims) count *= d;
    std::vector<std::size_t> offsets(count, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat, off = 0;
      for (std::size_t k = sub_dims.size(); k-- > 0;) {
        off += (rem % sub_dims[k]) * sub_stride[k];
        rem /= sub_dims[k];
      }
      offsets[flat] = off;
    }
    return offsets;
  };
  return TraceOffsets{expand(keep_dims, keep_stride), expand(trace_dims, trace_stride)};
}

// Base offsets of every assignment to the factors other than pos_a/pos_b.
std::vector<std::size_t> rest_offsets(const std::vector<std::size_t>& dims, std::size_t pos_a,
                                      std::size_t pos_b) {
  const auto stride = strides_of(dims);
  std::vector<std::size_t> sub_dims, sub_stride;
  for (std::size_t k = 0; k < dims.size(); ++k) {
    if (k == pos_a || k == pos_b) continue;
    sub_dims.push_back(dims[k]);
    sub_stride.push_back(stride[k]);
  }
  std::size_t count = 1;
  for (std::size_t d : sub_dims) count *= d;
  std::vector<std::size_t> offsets(count, 0);
  for (std::size_t flat = 0; flat < count; ++flat) {
    std::size_t rem = flat, off = 0;
    for (std::size_t k = sub_dims.size(); k-- > 0;) {
      off += (rem % sub_dims[k]) * sub_stride[k];
      rem /= sub_dims[k];
    }
    offsets[flat] = off;
  }
  return offsets;
}

void check_matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: inner dimensions " + std::to_string(a.cols()) + " and " +
                                std::to_string(b.rows()) + " do not match");
}

void check_square_against(const ComplexMatrix& m, const std::vector<std::size_t>& dims) {
  const std::size_t n = dims_product(dims);
  if (!m.is_square() || m.rows() != n)
    throw std::invalid_argument("partial_trace: matrix shape does not match factor dimensions");
}

void check_state_against(const std::vector<Complex>& psi, const std::vector<std::size_t>& dims) {
  if (psi.size() != dims_product(dims))
    throw std::invalid_argument("kernels: state length does not match factor dimensions");
}

}  // namespace

// The serial bodies are the reference semantics; the histlab:: versions add an
// OpenMP pragma over an outer loop of independent outputs and must produce
// bit-identical results (same per-element operation order).

namespace serial {

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t br = 0; br < b.rows(); ++br)
      for (std::size_t ac = 0; ac < a.cols(); ++ac) {
        const Complex av = a(ar, ac);
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = av * b(br, bc);
      }
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_matmul(a, b);
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex av = a(i, k);
      if (av == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += av * b(k, j);
    }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<Complex> out(m.rows(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < m.cols(); ++k) acc += m(i, k) * v[k];
    out[i] = acc;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  check_square_against(m, dims);
  const auto off = trace_offsets(dims, keep);
  const std::size_t dk = off.kept.size();
  ComplexMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : off.traced) acc += m(off.kept[r] + t, off.kept[c] + t);
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix reduced_density(const std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& keep) {
  check_state_against(psi, dims);
  const auto off = trace_offsets(dims, keep);
  const std::size_t dk = off.kept.size();
  ComplexMatrix out(dk, dk);
  for (std::size_t r = 0; r < dk; ++r)
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : off.traced)
        acc += psi[off.kept[r] + t] * std::conj(psi[off.kept[c] + t]);
      out(r, c) = acc;
    }
  return out;
}

void apply_factor_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                       std::size_t pos, const ComplexMatrix& gate) {
  check_state_against(psi, dims);
  if (pos >= dims.size()) throw std::invalid_argument("apply_factor_gate: position out of range");
  const std::size_t d = dims[pos];
  if (!gate.is_square() || gate.rows() != d)
    throw std::invalid_argument("apply_factor_gate: gate shape does not match factor");
  const auto stride = strides_of(dims);
  const std::size_t s = stride[pos];
  const std::size_t block = d * s;
  const std::size_t nblocks = psi.size() / block;
  std::vector<Complex> amp(d);
  for (std::size_t b = 0; b < nblocks; ++b) {
    const std::size_t base = b * block;
    for (std::size_t inner = 0; inner < s; ++inner) {
      for (std::size_t i = 0; i < d; ++i) amp[i] = psi[base + i * s + inner];
      for (std::size_t i = 0; i < d; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < d; ++j) acc += gate(i, j) * amp[j];
        psi[base + i * s + inner] = acc;
      }
    }
  }
}

void apply_pair_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                     std::size_t pos_a, std::size_t pos_b, const ComplexMatrix& gate) {
  check_state_against(psi, dims);
  if (pos_a >= dims.size() || pos_b >= dims.size() || pos_a == pos_b)
    throw std::invalid_argument("apply_pair_gate: positions must be distinct and in range");
  const std::size_t da = dims[pos_a], db = dims[pos_b];
  if (!gate.is_square() || gate.rows() != da * db)
    throw std::invalid_argument("apply_pair_gate: gate shape does not match factor pair");
  const auto stride = strides_of(dims);
  const auto rest = rest_offsets(dims, pos_a, pos_b);
  const std::size_t sa = stride[pos_a], sb = stride[pos_b];
  std::vector<Complex> amp(da * db);
  for (std::size_t base : rest) {
    for (std::size_t ia = 0; ia < da; ++ia)
      for (std::size_t ib = 0; ib < db; ++ib)
        amp[ia * db + ib] = psi[base + ia * sa + ib * sb];
    for (std::size_t r = 0; r < da * db; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < da * db; ++c) acc += gate(r, c) * amp[c];
      psi[base + (r / db) * sa + (r % db) * sb] = acc;
    }
  }
}

}  // namespace serial

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  const std::int64_t outer = static_cast<std::int64_t>(a.rows() * b.rows());
#pragma omp parallel for schedule(static)
  for (std::int64_t row = 0; row < outer; ++row) {
    const std::size_t ar = static_cast<std::size_t>(row) / b.rows();
    const std::size_t br = static_cast<std::size_t>(row) % b.rows();
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex av = a(ar, ac);
      for (std::size_t bc = 0; bc < b.cols(); ++bc)
        out(static_cast<std::size_t>(row), ac * b.cols() + bc) = av * b(br, bc);
    }
  }
  return out;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  check_matmul(a, b);
  ComplexMatrix out(a.rows(), b.cols());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(a.rows()); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex av = a(static_cast<std::size_t>(i), k);
      if (av == Complex{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        out(static_cast<std::size_t>(i), j) += av * b(k, j);
    }
  }
  return out;
}

std::vector<Complex> matvec(const ComplexMatrix& m, const std::vector<Complex>& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<Complex> out(m.rows(), Complex{0.0, 0.0});
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(m.rows()); ++i) {
    Complex acc{0.0, 0.0};
    for (std::size_t k = 0; k < m.cols(); ++k) acc += m(static_cast<std::size_t>(i), k) * v[k];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                            const std::vector<std::size_t>& keep) {
  check_square_against(m, dims);
  const auto off = trace_offsets(dims, keep);
  const std::size_t dk = off.kept.size();
  ComplexMatrix out(dk, dk);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(dk); ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : off.traced)
        acc += m(off.kept[static_cast<std::size_t>(r)] + t, off.kept[c] + t);
      out(static_cast<std::size_t>(r), c) = acc;
    }
  }
  return out;
}

ComplexMatrix reduced_density(const std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                              const std::vector<std::size_t>& keep) {
  check_state_against(psi, dims);
  const auto off = trace_offsets(dims, keep);
  const std::size_t dk = off.kept.size();
  ComplexMatrix out(dk, dk);
#pragma omp parallel for schedule(static)
  for (std::int64_t r = 0; r < static_cast<std::int64_t>(dk); ++r) {
    for (std::size_t c = 0; c < dk; ++c) {
      Complex acc{0.0, 0.0};
      for (std::size_t t : off.traced)
        acc += psi[off.kept[static_cast<std::size_t>(r)] + t] * std::conj(psi[off.kept[c] + t]);
      out(static_cast<std::size_t>(r), c) = acc;
    }
  }
  return out;
}

void apply_factor_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                       std::size_t pos, const ComplexMatrix& gate) {
  check_state_against(psi, dims);
  if (pos >= dims.size()) throw std::invalid_argument("apply_factor_gate: position out of range");
  const std::size_t d = dims[pos];
  if (!gate.is_square() || gate.rows() != d)
    throw std::invalid_argument("apply_factor_gate: gate shape does not match factor");
  const auto stride = strides_of(dims);
  const std::size_t s = stride[pos];
  const std::size_t block = d * s;
  const std::size_t nblocks = psi.size() / block;
#pragma omp parallel for schedule(static)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(nblocks); ++b) {
    std::vector<Complex> amp(d);
    const std::size_t base = static_cast<std::size_t>(b) * block;
    for (std::size_t inner = 0; inner < s; ++inner) {
      for (std::size_t i = 0; i < d; ++i) amp[i] = psi[base + i * s + inner];
      for (std::size_t i = 0; i < d; ++i) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < d; ++j) acc += gate(i, j) * amp[j];
        psi[base + i * s + inner] = acc;
      }
    }
  }
}

void apply_pair_gate(std::vector<Complex>& psi, const std::vector<std::size_t>& dims,
                     std::size_t pos_a, std::size_t pos_b, const ComplexMatrix& gate) {
  check_state_against(psi, dims);
  if (pos_a >= dims.size() || pos_b >= dims.size() || pos_a == pos_b)
    throw std::invalid_argument("apply_pair_gate: positions must be distinct and in range");
  const std::size_t da = dims[pos_a], db = dims[pos_b];
  if (!gate.is_square() || gate.rows() != da * db)
    throw std::invalid_argument("apply_pair_gate: gate shape does not match factor pair");
  const auto stride = strides_of(dims);
  const auto rest = rest_offsets(dims, pos_a, pos_b);
  const std::size_t sa = stride[pos_a], sb = stride[pos_b];
#pragma omp parallel for schedule(static)
  for (std::int64_t x = 0; x < static_cast<std::int64_t>(rest.size()); ++x) {
    std::vector<Complex> amp(da * db);
    const std::size_t base = rest[static_cast<std::size_t>(x)];
    for (std::size_t ia = 0; ia < da; ++ia)
      for (std::size_t ib = 0; ib < db; ++ib)
        amp[ia * db + ib] = psi[base + ia * sa + ib * sb];
    for (std::size_t r = 0; r < da * db; ++r) {
      Complex acc{0.0, 0.0};
      for (std::size_t c = 0; c < da * db; ++c) acc += gate(r, c) * amp[c];
      psi[base + (r / db) * sa + (r % db) * sb] = acc;
    }
  }
}

std::vector<Complex> permute_factors(const std::vector<Complex>& psi,
                                     const std::vector<std::size_t>& dims,
                                     const std::vector<std::size_t>& perm,
                                     std::vector<std::size_t>* out_dims) {
  check_state_against(psi, dims);
  if (perm.size() != dims.size())
    throw std::invalid_argument("permute_factors: permutation length mismatch");
  std::vector<bool> seen(dims.size(), false);
  for (std::size_t p : perm) {
    if (p >= dims.size() || seen[p])
      throw std::invalid_argument("permute_factors: not a permutation");
    seen[p] = true;
  }
  const auto in_stride = strides_of(dims);
  std::vector<std::size_t> new_dims(dims.size());
  for (std::size_t k = 0; k < perm.size(); ++k) new_dims[k] = dims[perm[k]];
  const auto new_stride = strides_of(new_dims);
  std::vector<Complex> out(psi.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t y = 0; y < static_cast<std::int64_t>(psi.size()); ++y) {
    std::size_t rem = static_cast<std::size_t>(y), x = 0;
    for (std::size_t k = 0; k < new_dims.size(); ++k) {
      const std::size_t digit = rem / new_stride[k];
      rem %= new_stride[k];
      x += digit * in_stride[perm[k]];
    }
    out[static_cast<std::size_t>(y)] = psi[x];
  }
  if (out_dims != nullptr) *out_dims = new_dims;
  return out;
}

std::vector<Complex> vec_kron(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  std::vector<Complex> out(a.size() * b.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < static_cast<std::int64_t>(a.size()); ++i) {
    const Complex av = a[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < b.size(); ++j)
      out[static_cast<std::size_t>(i) * b.size() + j] = av * b[j];
  }
  return out;
}

}  // namespace histlab
