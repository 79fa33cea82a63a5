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

#ifndef RICAP_INPUT_COVARIANCE_HPP
#define RICAP_INPUT_COVARIANCE_HPP

#include "matrix_kernels.hpp"

namespace ricap
{

/// Transmit covariance in the admissible set: Hermitian PSD with trace equal to its dimension.
///
/// The eigendecomposition computed during validation is kept, so the square root needed by
/// the canonical equations and the channel sampler comes for free.
class InputCovariance
{
public:
    InputCovariance() = default;

    explicit InputCovariance(const HermitianMatrix &q)
    {
        HermitianEigen e = eigh(q);
        init(q, e.vectors, e.values);
    }

    /// Build U diag(q) U^H from a spectrum whose entries sum to U.cols().
    static InputCovariance from_spectrum(const CMatrix &vectors, const RVector &values)
    {
        InputCovariance out;
        out.init(ricap::from_spectrum(vectors, values), vectors, values);
        return out;
    }

    static InputCovariance identity(Index n) { return InputCovariance(HermitianMatrix::identity(n)); }

    /// Rescale a nonzero PSD matrix so that its trace equals its dimension.
    static InputCovariance normalized(const HermitianMatrix &psd)
    {
        const double tr = psd.trace();
        if (!(tr > 0.0))
            throw InvalidArgument("InputCovariance::normalized: trace must be positive");
        return InputCovariance((static_cast<double>(psd.dim()) / tr) * psd);
    }

    Index dim() const noexcept { return q_.dim(); }
    const HermitianMatrix &hermitian() const noexcept { return q_; }
    const CMatrix &matrix() const noexcept { return q_.matrix(); }
    const HermitianMatrix &sqrt() const noexcept { return sqrt_; }
    const RVector &eigenvalues() const noexcept { return values_; }
    const CMatrix &eigenvectors() const noexcept { return vectors_; }

private:
    void init(const HermitianMatrix &q, const CMatrix &vectors, const RVector &values)
    {
        const Index n = q.dim();
        if (n == 0)
            throw InvalidArgument("InputCovariance: empty matrix");
        if (values.size() != n || vectors.rows() != n || vectors.cols() != n)
            throw InvalidArgument("InputCovariance: spectrum size mismatch");
        if (values.minCoeff() < psd_threshold(values))
            throw NotPositiveError("InputCovariance: not positive semidefinite (eigenvalue " +
                                   std::to_string(values.minCoeff()) + ")");
        const double dn = static_cast<double>(n);
        if (!(std::abs(q.trace() - dn) <= 1e-9 * dn))
            throw InvalidArgument("InputCovariance: trace " + std::to_string(q.trace()) + " differs from dimension");
        q_ = q;
        values_ = values.cwiseMax(0.0);
        vectors_ = vectors;
        sqrt_ = ricap::from_spectrum(vectors_, values_.cwiseSqrt());
    }

    HermitianMatrix q_;
    HermitianMatrix sqrt_;
    RVector values_;
    CMatrix vectors_;
};

} // namespace ricap

#endif
