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

#ifndef RICAP_FIXED_POINT_HPP
#define RICAP_FIXED_POINT_HPP

#include "channel_model.hpp"
#include "input_covariance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ricap
{

struct DeltaPair
{
    double delta = 1.0;
    double delta_tilde = 1.0;
};

struct FixedPointOptions
{
    double tol = 1e-10;
    int max_iter = 10000;
    DeltaPair start{1.0, 1.0};
};

struct FixedPointReport
{
    DeltaPair solution;
    int iterations = 0;
    double residual = 0.0; // max(|kappa - f|, |kappa_tilde - f_tilde|) at the solution
};

/// T(Q) = Q^{1/2} T Q^{1/2}.
inline HermitianMatrix t_of_q(const InputCovariance &q, const HermitianMatrix &t)
{
    if (q.dim() != t.dim())
        throw InvalidArgument("t_of_q: dimension mismatch");
    const CMatrix &s = q.sqrt().matrix();
    return hermitian_part(s * t.matrix() * s);
}

/// The pair of maps (f, f_tilde) whose common fixed point defines (delta, delta_tilde) for one
/// input covariance. Holds the Q-dependent products so repeated evaluations only pay for two
/// small factorizations each.
class CanonicalSystem
{
public:
    CanonicalSystem(const InputCovariance &q, const ChannelModel &model)
        : model_(&model), tq_(t_of_q(q, model.transmit_correlation())),
          aq_(model.los() * q.sqrt().matrix())
    {
        if (q.dim() != model.n())
            throw InvalidArgument("CanonicalSystem: covariance dimension differs from transmit antenna count");
    }

    const HermitianMatrix &transmit_q() const noexcept { return tq_; }

    // (1/n) Tr[ R (sigma2 (I + kt R) + AQ (I + k T(Q))^{-1} AQ^H)^{-1} ]
    double f(double kappa, double kappa_tilde) const
    {
        const HermitianMatrix &r = model_->receive_correlation();
        const Index n = model_->n();
        const CMatrix inner = solve_hpd(shifted(tq_, kappa), aq_.adjoint());
        const CMatrix m = model_->sigma2() * shifted(r, kappa_tilde).matrix() + aq_ * inner;
        const CMatrix x = solve_hpd(hermitian_part(m), r.matrix());
        return x.trace().real() / static_cast<double>(n);
    }

    // (1/n) Tr[ T(Q) (sigma2 (I + k T(Q)) + AQ^H (I + kt R)^{-1} AQ)^{-1} ]
    double f_tilde(double kappa, double kappa_tilde) const
    {
        const HermitianMatrix &r = model_->receive_correlation();
        const Index n = model_->n();
        const CMatrix inner = solve_hpd(shifted(r, kappa_tilde), aq_);
        const CMatrix m = model_->sigma2() * shifted(tq_, kappa).matrix() + aq_.adjoint() * inner;
        const CMatrix x = solve_hpd(hermitian_part(m), tq_.matrix());
        return x.trace().real() / static_cast<double>(n);
    }

private:
    // I + s M
    static HermitianMatrix shifted(const HermitianMatrix &m, double s)
    {
        return HermitianMatrix(CMatrix(CMatrix::Identity(m.dim(), m.dim()) + s * m.matrix()));
    }

    const ChannelModel *model_;
    HermitianMatrix tq_;
    CMatrix aq_; // A Q^{1/2}
};

namespace detail
{

inline void require_nonnegative(double kappa, double kappa_tilde)
{
    if (!(kappa >= 0.0) || !(kappa_tilde >= 0.0) || !std::isfinite(kappa) || !std::isfinite(kappa_tilde))
        throw InvalidArgument("canonical equations: arguments must be finite and >= 0");
}

} // namespace detail

inline double eval_f(double kappa, double kappa_tilde, const InputCovariance &q, const ChannelModel &model)
{
    detail::require_nonnegative(kappa, kappa_tilde);
    return CanonicalSystem(q, model).f(kappa, kappa_tilde);
}

inline double eval_f_tilde(double kappa, double kappa_tilde, const InputCovariance &q, const ChannelModel &model)
{
    detail::require_nonnegative(kappa, kappa_tilde);
    return CanonicalSystem(q, model).f_tilde(kappa, kappa_tilde);
}

/// Damped Jacobi iteration x <- (1 - w) x + w F(x) on (kappa, kappa_tilde). The relaxation w
/// starts at 1 and halves (down to 1/16) whenever the residual grows.
/// Throws ConvergenceError when the residual is still above tol after max_iter evaluations.
inline FixedPointReport solve_deltas(const CanonicalSystem &system, const FixedPointOptions &opts = {})
{
    if (!(opts.tol > 0.0))
        throw InvalidArgument("solve_deltas: tolerance must be positive");
    if (opts.max_iter < 1)
        throw InvalidArgument("solve_deltas: max_iter must be >= 1");
    if (!(opts.start.delta > 0.0) || !(opts.start.delta_tilde > 0.0))
        throw InvalidArgument("solve_deltas: starting point must be strictly positive");

    double k = opts.start.delta, kt = opts.start.delta_tilde;
    double omega = 1.0;
    double previous = std::numeric_limits<double>::infinity();
    double residual = previous;
    for (int it = 0; it < opts.max_iter; ++it)
    {
        const double fk = system.f(k, kt);
        const double fkt = system.f_tilde(k, kt);
        residual = std::max(std::abs(k - fk), std::abs(kt - fkt));
        if (!std::isfinite(residual))
            throw ConvergenceError("solve_deltas: non-finite residual", it, residual);
        if (residual <= opts.tol)
            return {{k, kt}, it, residual};
        if (residual > previous)
            omega = std::max(omega * 0.5, 1.0 / 16.0);
        previous = residual;
        k = (1.0 - omega) * k + omega * fk;
        kt = (1.0 - omega) * kt + omega * fkt;
    }
    throw ConvergenceError("solve_deltas: canonical equations did not converge", opts.max_iter, residual);
}

inline FixedPointReport solve_deltas(const InputCovariance &q, const ChannelModel &model,
                                     const FixedPointOptions &opts = {})
{
    return solve_deltas(CanonicalSystem(q, model), opts);
}

} // namespace ricap

#endif
