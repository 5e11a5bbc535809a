#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "fftdecomp/shape.hpp"

namespace fftdecomp {

using cplx = std::complex<double>;

/// Table of the n-th roots w^k = exp(-2*pi*i*k/n), k in [0, n).
/// Tables are computed once per length and cached.
const std::vector<cplx>& twiddle_table(std::int64_t n);

/// Direct O(N^2) unnormalized forward transform. The correctness oracle for
/// fft_1d.
std::vector<cplx> dft_1d(std::span<const cplx> input);

/// Unnormalized forward transform: iterative radix-2 for power-of-two
/// lengths, dft_1d otherwise.
std::vector<cplx> fft_1d(std::span<const cplx> input);

/// In-place power-of-two kernel used by the simulator on contiguous lines;
/// falls back to dft_1d for other lengths.
void fft_1d_inplace(std::span<cplx> data);

/// Unnormalized inverse (conjugate transform); round-trip testing only.
std::vector<cplx> inverse_fft_1d(std::span<const cplx> input);

/// Direct evaluation of the multi-dimensional transform, row-major natural
/// order in and out: every output point sums over every input point with the
/// product of per-axis twiddle factors. O(total^2). The global oracle the
/// parallel simulator is validated against.
std::vector<cplx> dft_md(const Shape& shape, std::span<const cplx> input);

/// max |a_i - b_i| / max(max |b_i|, eps): relative error against reference b.
double max_rel_error(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace fftdecomp
