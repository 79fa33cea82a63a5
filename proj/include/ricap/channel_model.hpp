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

#ifndef RICAP_CHANNEL_MODEL_HPP
#define RICAP_CHANNEL_MODEL_HPP

#include "matrix_kernels.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ricap
{

/// Line-of-sight geometry for a uniform linear receive array: one steering angle and one
/// complex amplitude per transmit antenna.
struct LosSpec
{
    std::vector<double> angles;      // radians
    std::vector<Complex> amplitudes; // diagonal of the amplitude matrix
    double K = 1.0;                  // Rice factor, > 0
};

/// Steering-vector LOS matrix
///   A = sqrt(K/(K+1)) sqrt(N/n) [a(theta_1), ..., a(theta_n)] diag(amplitudes),
/// with a(theta) = N^{-1/2} (1, e^{i theta}, ..., e^{i (N-1) theta})^T.
inline CMatrix build_los_matrix(const LosSpec &spec, Index N)
{
    const Index n = static_cast<Index>(spec.angles.size());
    if (n < 1 || N < 1)
        throw InvalidArgument("build_los_matrix: need at least one transmit and one receive antenna");
    if (spec.amplitudes.size() != spec.angles.size())
        throw InvalidArgument("build_los_matrix: angles and amplitudes differ in length");
    if (!(spec.K > 0.0) || !std::isfinite(spec.K))
        throw InvalidArgument("build_los_matrix: Rice factor must be positive and finite");

    const double dn = static_cast<double>(n), dN = static_cast<double>(N);
    const double gain = std::sqrt(spec.K / (spec.K + 1.0)) * std::sqrt(dN / dn) / std::sqrt(dN);
    CMatrix a(N, n);
    for (Index k = 0; k < n; ++k)
        for (Index m = 0; m < N; ++m)
            a(m, k) = gain * std::polar(1.0, static_cast<double>(m) * spec.angles[static_cast<size_t>(k)]) *
                      spec.amplitudes[static_cast<size_t>(k)];
    return a;
}

/// Exponential correlation C[i][j] = rho^{|i-j|}, before any trace normalization.
inline HermitianMatrix exp_correlation(double rho, Index dim)
{
    if (!(rho >= 0.0 && rho < 1.0))
        throw InvalidArgument("exp_correlation: rho must lie in [0, 1)");
    if (dim < 1)
        throw InvalidArgument("exp_correlation: dimension must be positive");
    CMatrix c(dim, dim);
    for (Index i = 0; i < dim; ++i)
        for (Index j = 0; j < dim; ++j)
            c(i, j) = std::pow(rho, static_cast<double>(std::abs(i - j)));
    return HermitianMatrix(c);
}

class ChannelModel;
ChannelModel assemble_model(const CMatrix &a_raw, const HermitianMatrix &r_raw, const HermitianMatrix &t_raw,
                            double K, double sigma2);

/// One normalized channel instance Sigma = A + n^{-1/2} R^{1/2} X T^{1/2} observed at noise level sigma2.
///
/// Only assemble_model() creates instances, so the trace normalizations
///   (1/N) Tr R = (1/n) Tr T = 1/sqrt(K+1),  (1/N) Tr A A^H = K/(K+1)
/// always hold.
class ChannelModel
{
public:
    const CMatrix &los() const noexcept { return a_; }
    const HermitianMatrix &receive_correlation() const noexcept { return r_; }
    const HermitianMatrix &transmit_correlation() const noexcept { return t_; }
    double rice_factor() const noexcept { return k_; }
    double sigma2() const noexcept { return sigma2_; }
    Index n() const noexcept { return t_.dim(); }
    Index N() const noexcept { return r_.dim(); }
    double ratio() const noexcept { return static_cast<double>(n()) / static_cast<double>(N()); }

    /// Same geometry at another noise level.
    ChannelModel with_sigma2(double sigma2) const
    {
        if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
            throw InvalidArgument("ChannelModel: noise level must be positive and finite");
        ChannelModel out = *this;
        out.sigma2_ = sigma2;
        return out;
    }

private:
    friend ChannelModel assemble_model(const CMatrix &, const HermitianMatrix &, const HermitianMatrix &, double,
                                       double);
    ChannelModel() = default;

    CMatrix a_;
    HermitianMatrix r_;
    HermitianMatrix t_;
    double k_ = 0.0;
    double sigma2_ = 1.0;
};

namespace detail
{

inline void require_psd(const HermitianMatrix &m, const char *what)
{
    const RVector ev = eigh(m).values;
    if (ev.minCoeff() < psd_threshold(ev))
        throw NotPositiveError(std::string("assemble_model: ") + what + " is not positive semidefinite");
}

} // namespace detail

/// Rescale raw model data by positive scalars so the trace normalizations hold.
/// K = 0 is accepted as the Rayleigh limit and then requires a zero LOS matrix.
inline ChannelModel assemble_model(const CMatrix &a_raw, const HermitianMatrix &r_raw,
                                   const HermitianMatrix &t_raw, double K, double sigma2)
{
    const Index N = r_raw.dim(), n = t_raw.dim();
    if (N < 1 || n < 1)
        throw InvalidArgument("assemble_model: empty correlation matrix");
    if (a_raw.rows() != N || a_raw.cols() != n)
        throw InvalidArgument("assemble_model: LOS matrix must be N x n");
    if (!(K >= 0.0) || !std::isfinite(K))
        throw InvalidArgument("assemble_model: Rice factor must be finite and >= 0");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2))
        throw InvalidArgument("assemble_model: noise level must be positive and finite");
    detail::require_psd(r_raw, "R");
    detail::require_psd(t_raw, "T");

    const double tr_r = r_raw.trace(), tr_t = t_raw.trace();
    if (!(tr_r > 0.0))
        throw InvalidArgument("assemble_model: R has zero trace");
    if (!(tr_t > 0.0))
        throw InvalidArgument("assemble_model: T has zero trace");

    const double dN = static_cast<double>(N), dn = static_cast<double>(n);
    const double corr_target = 1.0 / std::sqrt(K + 1.0);
    const double los_energy = a_raw.squaredNorm();

    ChannelModel model;
    model.r_ = (corr_target * dN / tr_r) * r_raw;
    model.t_ = (corr_target * dn / tr_t) * t_raw;
    if (K == 0.0)
    {
        if (los_energy != 0.0)
            throw InvalidArgument("assemble_model: K = 0 requires a zero LOS matrix");
        model.a_ = CMatrix::Zero(N, n);
    }
    else
    {
        if (!(los_energy > 0.0))
            throw InvalidArgument("assemble_model: K > 0 requires a nonzero LOS matrix");
        model.a_ = std::sqrt(K / (K + 1.0) * dN / los_energy) * a_raw;
    }
    model.k_ = K;
    model.sigma2_ = sigma2;
    return model;
}

/// SNR is defined as 1 / sigma2.
inline double sigma2_from_snr_db(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }
inline double snr_db_from_sigma2(double sigma2) { return 10.0 * std::log10(1.0 / sigma2); }

/// Parameters of the randomized experiment family: exponential correlations and a
/// steering-vector LOS matrix with uniformly drawn angles.
struct GeneratorSpec
{
    Index n = 4;
    Index N = 4;
    double K = 1.0;
    double sigma2 = 1.0;
    double rho_t = 0.0;
    double rho_r = 0.0;
    std::uint64_t angle_seed = 1;
    std::vector<Complex> amplitudes; // empty means unit amplitudes
};

/// Angles uniform on [0, 2 pi) from a generator seeded with `seed`.
inline std::vector<double> random_angles(Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    std::vector<double> out(static_cast<size_t>(n));
    for (auto &x : out)
        x = u(rng);
    return out;
}

inline ChannelModel generate_model(const GeneratorSpec &g)
{
    if (g.n < 1 || g.N < 1)
        throw InvalidArgument("generate_model: antenna counts must be positive");
    CMatrix a = CMatrix::Zero(g.N, g.n);
    if (g.K > 0.0)
    {
        LosSpec los;
        los.K = g.K;
        los.angles = random_angles(g.n, g.angle_seed);
        los.amplitudes = g.amplitudes.empty() ? std::vector<Complex>(static_cast<size_t>(g.n), Complex(1.0, 0.0))
                                              : g.amplitudes;
        a = build_los_matrix(los, g.N);
    }
    return assemble_model(a, exp_correlation(g.rho_r, g.N), exp_correlation(g.rho_t, g.n), g.K, g.sigma2);
}

/// i.i.d. Rayleigh model: A = 0, R = I, T = I.
inline ChannelModel rayleigh_iid(Index n, Index N, double sigma2)
{
    return assemble_model(CMatrix::Zero(N, n), HermitianMatrix::identity(N), HermitianMatrix::identity(n), 0.0,
                          sigma2);
}

} // namespace ricap

#endif
