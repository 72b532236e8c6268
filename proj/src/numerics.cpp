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

#include "semiblind/numerics.hpp"
#include "semiblind/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <utility>

namespace semiblind {

CMat::CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> values)
    : rows_(rows), cols_(cols), data_(values)
{
    require(data_.size() == rows * cols, "CMat: initializer size does not match dimensions");
}

CMat CMat::identity(std::size_t n)
{
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

namespace {

void fft_radix2(std::vector<cplx>& a, double sign)
{
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1)
            j ^= bit;
        j ^= bit;
        if (i < j)
            std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const std::size_t half = len / 2;
        for (std::size_t k = 0; k < half; ++k) {
            // Twiddles computed directly rather than by recurrence to keep
            // round-off at the 1e-15 level for long transforms.
            const double angle = sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(len);
            const cplx w{std::cos(angle), std::sin(angle)};
            for (std::size_t i = 0; i < n; i += len) {
                const cplx u = a[i + k];
                const cplx t = w * a[i + k + half];
                a[i + k] = u + t;
                a[i + k + half] = u - t;
            }
        }
    }
}

std::vector<cplx> dft_direct(std::span<const cplx> v, double sign)
{
    const std::size_t n = v.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double angle = sign * 2.0 * kPi * static_cast<double>((k * i) % n) / static_cast<double>(n);
            acc += v[i] * cplx{std::cos(angle), std::sin(angle)};
        }
        out[k] = acc;
    }
    return out;
}

void require_same_shape(const CMat& a, const CMat& b, const char* op)
{
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ContractViolation(std::string(op) + ": dimension mismatch");
}

} // namespace

CVec dft(std::span<const cplx> v, DftDirection direction)
{
    require(!v.empty(), "dft: empty input");
    const double sign = direction == DftDirection::Forward ? -1.0 : 1.0;
    CVec out;
    if (std::has_single_bit(v.size())) {
        out.assign(v.begin(), v.end());
        fft_radix2(out, sign);
    } else {
        out = dft_direct(v, sign);
    }
    const double scale = 1.0 / std::sqrt(static_cast<double>(v.size()));
    for (auto& x : out)
        x *= scale;
    return out;
}

CMat matmul(const CMat& a, const CMat& b)
{
    require(a.cols() == b.rows(), "matmul: inner dimensions differ");
    CMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

CVec matvec(const CMat& a, std::span<const cplx> x)
{
    require(a.cols() == x.size(), "matvec: dimension mismatch");
    CVec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

CMat hermitian(const CMat& a)
{
    CMat h(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            h(j, i) = std::conj(a(i, j));
    return h;
}

double frobenius_norm_sq(const CMat& a)
{
    double acc = 0.0;
    for (const auto& x : a.data())
        acc += std::norm(x);
    return acc;
}

CMat axpy(cplx alpha, const CMat& a, const CMat& b)
{
    require_same_shape(a, b, "axpy");
    CMat out = b;
    auto o = out.data();
    auto in = a.data();
    for (std::size_t i = 0; i < o.size(); ++i)
        o[i] += alpha * in[i];
    return out;
}

CMat outer(std::span<const cplx> a, std::span<const cplx> b)
{
    CMat m(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            m(i, j) = a[i] * std::conj(b[j]);
    return m;
}

double norm_sq(std::span<const cplx> v)
{
    double acc = 0.0;
    for (const auto& x : v)
        acc += std::norm(x);
    return acc;
}

CVec solve(const CMat& a, std::span<const cplx> b)
{
    require(a.rows() == a.cols(), "solve: matrix is not square");
    require(a.rows() == b.size(), "solve: dimension mismatch");
    const std::size_t n = a.rows();
    CMat m = a;
    CVec x(b.begin(), b.end());
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(pivot, col)))
                pivot = r;
        if (m(pivot, col) == cplx{0.0, 0.0})
            return {};
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(m(col, c), m(pivot, c));
            std::swap(x[col], x[pivot]);
        }
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = m(r, col) / m(col, col);
            if (f == cplx{0.0, 0.0})
                continue;
            for (std::size_t c = col; c < n; ++c)
                m(r, c) -= f * m(col, c);
            x[r] -= f * x[col];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        cplx acc = x[i];
        for (std::size_t c = i + 1; c < n; ++c)
            acc -= m(i, c) * x[c];
        x[i] = acc / m(i, i);
    }
    return x;
}

} // namespace semiblind
