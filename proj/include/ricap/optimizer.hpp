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

#ifndef RICAP_OPTIMIZER_HPP
#define RICAP_OPTIMIZER_HPP

#include "mutual_info.hpp"
#include "waterfill.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace ricap
{

struct OptimizerOptions
{
    double delta_tol = 1e-8;
    double q_tol = 1e-8;
    int max_outer = 100;
    FixedPointOptions fixed_point{};
};

struct IterationRecord
{
    double delta = 0.0;       // delta_k = delta(Q_{k-1})
    double delta_tilde = 0.0; // delta_tilde_k
    double i_bar = 0.0;       // I_bar(Q_k), nats
    double q_step = 0.0;      // ||Q_k - Q_{k-1}||_F
};

struct OptResult
{
    InputCovariance q_star;
    DeltaPair deltas_star; // solution of the canonical equations at q_star
    double i_bar_star = 0.0;
    double i_bar_initial = 0.0; // I_bar(I)
    int iterations = 0;
    bool converged = false;
    std::vector<IterationRecord> trace;
    std::vector<InputCovariance> iterates; // Q_1, Q_2, ...
};

/// Alternating maximization of the large-system approximant over the admissible set.
///
/// Starting from Q_0 = I, iteration k solves the canonical equations at Q_{k-1} for
/// (delta_k, delta_tilde_k) and sets Q_k to the waterfilling maximizer of
/// Q -> V(delta_k, delta_tilde_k, Q). The run is reported converged once consecutive delta
/// pairs move by at most delta_tol and ||Q_k - Q_{k-1}||_F / sqrt(n) <= q_tol; a limit of the
/// iterates is then the maximizer of I_bar. Exhausting max_outer returns converged = false
/// with the full trace.
inline OptResult optimize_covariance(const ChannelModel &model, const OptimizerOptions &opts = {})
{
    if (opts.max_outer < 1)
        throw InvalidArgument("optimize_covariance: max_outer must be >= 1");
    const Index n = model.n();
    const double dn = static_cast<double>(n);

    OptResult result;
    InputCovariance q_prev = InputCovariance::identity(n);
    FixedPointOptions fp = opts.fixed_point;
    FixedPointReport current = solve_deltas(q_prev, model, fp);
    result.i_bar_initial = v_functional(current.solution.delta, current.solution.delta_tilde, q_prev, model);

    for (int k = 1; k <= opts.max_outer; ++k)
    {
        const DeltaPair dk = current.solution;
        const WaterfillSolution wf = waterfill(g_matrix(dk.delta, dk.delta_tilde, model), dn);
        const InputCovariance &qk = wf.covariance;

        // Warm start: the solution is unique, so only the iteration count depends on it.
        fp.start = dk;
        const FixedPointReport next = solve_deltas(qk, model, fp);
        const DeltaPair dn1 = next.solution;

        IterationRecord rec;
        rec.delta = dk.delta;
        rec.delta_tilde = dk.delta_tilde;
        rec.i_bar = v_functional(dn1.delta, dn1.delta_tilde, qk, model);
        rec.q_step = (qk.matrix() - q_prev.matrix()).norm();
        result.trace.push_back(rec);
        result.iterates.push_back(qk);
        result.iterations = k;

        const bool deltas_settled = std::abs(dn1.delta - dk.delta) <= opts.delta_tol &&
                                    std::abs(dn1.delta_tilde - dk.delta_tilde) <= opts.delta_tol;
        const bool q_settled = rec.q_step / std::sqrt(dn) <= opts.q_tol;

        q_prev = qk;
        current = next;
        if (deltas_settled && q_settled)
        {
            result.converged = true;
            break;
        }
    }
    result.q_star = q_prev;
    result.deltas_star = current.solution;
    result.i_bar_star = result.trace.back().i_bar;
    return result;
}

/// Random element of the admissible set: W W^H for a complex Gaussian n x n W, trace-normalized.
template <class Rng>
InputCovariance random_covariance(Index n, Rng &rng)
{
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMatrix w(n, n);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            w(i, j) = Complex(gauss(rng), gauss(rng));
    return InputCovariance::normalized(hermitian_part(w * w.adjoint()));
}

/// Largest one-sided Gateaux difference quotient
///   [I_bar(Q* + lambda (P - Q*)) - I_bar(Q*)] / lambda,  lambda = 1e-4,
/// over `trials` random P in the admissible set and the n extreme points n e_i e_i^H.
/// Values <= 1e-4 certify approximate optimality; an ascent direction gives a positive value.
inline double stationarity_check(const InputCovariance &q_star, const ChannelModel &model, int trials,
                                 std::uint64_t seed = 0x5eedULL, const FixedPointOptions &fp = {})
{
    constexpr double lambda = 1e-4;
    const Index n = model.n();
    const double base = i_bar(q_star, model, fp).value;

    auto quotient = [&](const InputCovariance &p) {
        const CMatrix mixed = q_star.matrix() + lambda * (p.matrix() - q_star.matrix());
        const InputCovariance qm(hermitian_part(mixed));
        return (i_bar(qm, model, fp).value - base) / lambda;
    };

    double worst = -std::numeric_limits<double>::infinity();
    for (Index i = 0; i < n; ++i)
    {
        RVector e = RVector::Zero(n);
        e(i) = static_cast<double>(n);
        worst = std::max(worst, quotient(InputCovariance::from_spectrum(CMatrix::Identity(n, n), e)));
    }
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t)
        worst = std::max(worst, quotient(random_covariance(n, rng)));
    return worst;
}

inline double stationarity_check(const OptResult &result, const ChannelModel &model, int trials,
                                 std::uint64_t seed = 0x5eedULL, const FixedPointOptions &fp = {})
{
    return stationarity_check(result.q_star, model, trials, seed, fp);
}

} // namespace ricap

#endif
