// SPDX-License-Identifier: Apache-2.0
//
// ricap: capacity-achieving input covariance for correlated Rician MIMO channels
// Copyright (C) 2026 The ricap authors
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

#ifndef RICAP_MATRIX_KERNELS_HPP
#define RICAP_MATRIX_KERNELS_HPP

#include "error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>

namespace ricap
{

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Eigenvalues below -kPsdTolerance (scaled by max(1, spectral radius)) mark a matrix as not PSD.
inline constexpr double kPsdTolerance = 1e-10;

// Square complex matrix that is exactly Hermitian after construction.
// The input may deviate from Hermitian symmetry by rounding noise only; the stored
// value is the Hermitian part (M + M^H) / 2.
class HermitianMatrix
{
public:
    HermitianMatrix() = default;

    explicit HermitianMatrix(const CMatrix &m)
    {
        if (m.rows() != m.cols())
            throw InvalidArgument("HermitianMatrix: matrix is not square");
        if (m.size() > 0)
        {
            const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
            const double skew = (m - m.adjoint()).cwiseAbs().maxCoeff();
            if (!(skew <= 1e-8 * scale))
                throw InvalidArgument("HermitianMatrix: input is not Hermitian (skew " + std::to_string(skew) + ")");
        }
        m_ = 0.5 * (m + m.adjoint());
    }

    static HermitianMatrix identity(Index dim) { return HermitianMatrix(CMatrix::Identity(dim, dim)); }
    static HermitianMatrix zero(Index dim) { return HermitianMatrix(CMatrix::Zero(dim, dim)); }

    static HermitianMatrix diagonal(const RVector &d)
    {
        return HermitianMatrix(d.cast<Complex>().asDiagonal().toDenseMatrix());
    }

    Index dim() const noexcept { return m_.rows(); }
    const CMatrix &matrix() const noexcept { return m_; }
    Complex operator()(Index i, Index j) const { return m_(i, j); }
    double trace() const { return m_.diagonal().real().sum(); }

    friend HermitianMatrix operator+(const HermitianMatrix &a, const HermitianMatrix &b)
    {
        return HermitianMatrix(CMatrix(a.m_ + b.m_));
    }
    friend HermitianMatrix operator*(double s, const HermitianMatrix &a) { return HermitianMatrix(CMatrix(s * a.m_)); }

private:
    CMatrix m_;
};

// Hermitian part of a product that is Hermitian in exact arithmetic (e.g. B X B^H).
inline HermitianMatrix hermitian_part(const CMatrix &m)
{
    if (m.rows() != m.cols())
        throw InvalidArgument("hermitian_part: matrix is not square");
    return HermitianMatrix(CMatrix(0.5 * (m + m.adjoint())));
}

struct HermitianEigen
{
    RVector values; // ascending
    CMatrix vectors; // columns are orthonormal eigenvectors
};

inline HermitianEigen eigh(const HermitianMatrix &m)
{
    if (m.dim() == 0)
        return {RVector(), CMatrix()};
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.matrix());
    if (solver.info() != Eigen::Success)
        throw Error("eigh: eigendecomposition failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

inline double psd_threshold(const RVector &eigenvalues)
{
    const double radius = eigenvalues.size() > 0 ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
    return -kPsdTolerance * std::max(1.0, radius);
}

// Reassemble U diag(values) U^H.
inline HermitianMatrix from_spectrum(const CMatrix &vectors, const RVector &values)
{
    return hermitian_part(vectors * values.cast<Complex>().asDiagonal() * vectors.adjoint());
}

inline HermitianMatrix psd_sqrt(const HermitianMatrix &m)
{
    HermitianEigen e = eigh(m);
    if (e.values.size() > 0 && e.values.minCoeff() < psd_threshold(e.values))
        throw NotPositiveError("psd_sqrt: matrix has eigenvalue " + std::to_string(e.values.minCoeff()));
    const RVector roots = e.values.cwiseMax(0.0).cwiseSqrt();
    return from_spectrum(e.vectors, roots);
}

namespace detail
{

// log det of a Hermitian positive definite matrix; false when the factorization fails.
inline bool logdet_hpd(const CMatrix &m, double &out)
{
    Eigen::LLT<CMatrix> llt(m);
    if (llt.info() != Eigen::Success)
        return false;
    const auto diag = llt.matrixLLT().diagonal().real();
    if (diag.size() > 0 && !(diag.minCoeff() > 0.0))
        return false;
    out = 2.0 * diag.array().log().sum();
    return true;
}

// log det of a Hermitian positive definite matrix from an unblocked in-place Cholesky sweep
// over its lower triangle (the upper triangle is neither read nor written). Faster than the
// blocked factorization for the small matrices in the Monte-Carlo inner loop.
inline bool logdet_hpd_lower_inplace(CMatrix &m, double &out)
{
    const Index n = m.rows();
    double acc = 0.0;
    for (Index j = 0; j < n; ++j)
    {
        double d = m(j, j).real();
        for (Index k = 0; k < j; ++k)
            d -= std::norm(m(j, k));
        if (!(d > 0.0))
            return false;
        const double root = std::sqrt(d);
        acc += std::log(d);
        m(j, j) = root;
        const double inv = 1.0 / root;
        for (Index i = j + 1; i < n; ++i)
        {
            Complex v = m(i, j);
            for (Index k = 0; k < j; ++k)
                v -= m(i, k) * std::conj(m(j, k));
            m(i, j) = v * inv;
        }
    }
    out = acc;
    return true;
}

} // namespace detail

// log det(I + M) in nats for Hermitian PSD M, via Cholesky of I + M.
inline double logdet_i_plus(const HermitianMatrix &m)
{
    const Index n = m.dim();
    if (n == 0)
        return 0.0;
    const CMatrix &mm = m.matrix();
    // PSD test: M + tau I must admit a Cholesky factor.
    const double tau = kPsdTolerance * std::max(1.0, mm.diagonal().real().cwiseAbs().maxCoeff());
    Eigen::LLT<CMatrix> probe(mm + tau * CMatrix::Identity(n, n));
    if (probe.info() != Eigen::Success)
        throw NotPositiveError("logdet_i_plus: matrix is not positive semidefinite");
    double value = 0.0;
    if (!detail::logdet_hpd(mm + CMatrix::Identity(n, n), value))
        throw NotPositiveError("logdet_i_plus: I + M is not positive definite");
    return std::max(value, 0.0);
}

// Solve M X = B for Hermitian positive definite M.
inline CMatrix solve_hpd(const HermitianMatrix &m, const CMatrix &b)
{
    if (b.rows() != m.dim())
        throw InvalidArgument("solve_hpd: dimension mismatch");
    Eigen::LLT<CMatrix> llt(m.matrix());
    if (llt.info() != Eigen::Success)
        throw NotPositiveError("solve_hpd: matrix is not positive definite");
    const RVector pivots = llt.matrixLLT().diagonal().real().cwiseAbs2();
    if (pivots.size() > 0 && !(pivots.minCoeff() > 1e-14 * pivots.maxCoeff()))
        throw NotPositiveError("solve_hpd: matrix is numerically singular");
    return llt.solve(b);
}

} // namespace ricap

#endif
