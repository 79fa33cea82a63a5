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

#ifndef RICAP_MUTUAL_INFO_HPP
#define RICAP_MUTUAL_INFO_HPP

#include "fixed_point.hpp"

namespace ricap
{

/// Effective gain G(kappa, kappa_tilde), the PSD square root of gain_squared.
struct EffectiveGain
{
    HermitianMatrix matrix;
};

struct AsymptoticValue
{
    double value = 0.0; // nats
    DeltaPair deltas;
    int iterations = 0; // fixed-point iterations spent
};

/// kappa T + (1/sigma2) A^H (I + kappa_tilde R)^{-1} A
inline HermitianMatrix gain_squared(double kappa, double kappa_tilde, const ChannelModel &model)
{
    detail::require_nonnegative(kappa, kappa_tilde);
    const HermitianMatrix &r = model.receive_correlation();
    const CMatrix &a = model.los();
    const HermitianMatrix shifted(CMatrix(CMatrix::Identity(r.dim(), r.dim()) + kappa_tilde * r.matrix()));
    const CMatrix los_part = a.adjoint() * solve_hpd(shifted, a) / model.sigma2();
    return hermitian_part(kappa * model.transmit_correlation().matrix() + los_part);
}

inline EffectiveGain g_matrix(double kappa, double kappa_tilde, const ChannelModel &model)
{
    return {psd_sqrt(gain_squared(kappa, kappa_tilde, model))};
}

/// log det[I + G Q G] for the Hermitian product G Q G.
inline double gain_logdet(const EffectiveGain &g, const InputCovariance &q)
{
    const CMatrix &gm = g.matrix.matrix();
    return logdet_i_plus(hermitian_part(gm * q.matrix() * gm));
}

/// V(kappa, kappa_tilde, Q) = log det[I + G Q G] + log det[I + kappa_tilde R] - sigma2 n kappa kappa_tilde.
inline double v_functional(double kappa, double kappa_tilde, const InputCovariance &q, const ChannelModel &model)
{
    if (q.dim() != model.n())
        throw InvalidArgument("v_functional: covariance dimension differs from transmit antenna count");
    const EffectiveGain g = g_matrix(kappa, kappa_tilde, model);
    const double receive = logdet_i_plus(kappa_tilde * model.receive_correlation());
    return gain_logdet(g, q) + receive -
           model.sigma2() * static_cast<double>(model.n()) * kappa * kappa_tilde;
}

/// Large-system approximant of the average mutual information: V evaluated at the solution
/// of the canonical equations for Q.
inline AsymptoticValue i_bar(const InputCovariance &q, const ChannelModel &model, const FixedPointOptions &opts = {})
{
    const FixedPointReport fp = solve_deltas(q, model, opts);
    return {v_functional(fp.solution.delta, fp.solution.delta_tilde, q, model), fp.solution, fp.iterations};
}

} // namespace ricap

#endif
