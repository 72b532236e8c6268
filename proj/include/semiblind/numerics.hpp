// SPDX-License-Identifier: Apache-2.0
//
// semiblind: time-domain semi-blind MIMO-OFDM channel estimation
// Copyright (C) 2026 The semiblind authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef SEMIBLIND_NUMERICS_HPP
#define SEMIBLIND_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace semiblind {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;

// Dense complex matrix, row-major.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values);

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<cplx> data() { return data_; }
    std::span<const cplx> data() const { return data_; }

    bool operator==(const CMat&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

enum class DftDirection { Forward, Inverse };

// Unitary DFT. Forward kernel exp(-j2*pi*k*n/N), inverse exp(+j2*pi*k*n/N),
// both scaled by 1/sqrt(N). Radix-2 FFT for power-of-two lengths, direct
// summation otherwise.
CVec dft(std::span<const cplx> v, DftDirection direction);

CMat matmul(const CMat& a, const CMat& b);
CVec matvec(const CMat& a, std::span<const cplx> x);
CMat hermitian(const CMat& a);
double frobenius_norm_sq(const CMat& a);
// alpha * a + b
CMat axpy(cplx alpha, const CMat& a, const CMat& b);

// a * b^H for column vectors a, b (outer product).
CMat outer(std::span<const cplx> a, std::span<const cplx> b);

double norm_sq(std::span<const cplx> v);

// Solves a * x = b by Gaussian elimination with partial pivoting. Returns an
// empty vector when a pivot is exactly zero.
CVec solve(const CMat& a, std::span<const cplx> b);

} // namespace semiblind

#endif
