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

#ifndef RICAP_BASELINE_HPP
#define RICAP_BASELINE_HPP

#include "monte_carlo.hpp"

#include <algorithm>
#include <functional>
#include <vector>

namespace ricap
{

/// Euclidean projection of v onto {q >= 0, sum q = budget}.
inline RVector project_simplex(const RVector &v, double budget)
{
    const Index n = v.size();
    std::vector<double> sorted(v.data(), v.data() + n);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double prefix = 0.0, theta = 0.0;
    for (Index k = 0; k < n; ++k)
    {
        prefix += sorted[static_cast<size_t>(k)];
        const double t = (prefix - budget) / static_cast<double>(k + 1);
        if (sorted[static_cast<size_t>(k)] - t > 0.0)
            theta = t;
    }
    RVector out = (v.array() - theta).cwiseMax(0.0);
    const double s = out.sum();
    if (s > 0.0)
        out *= budget / s;
    return out;
}

/// Nearest admissible covariance in Frobenius norm: project the spectrum onto the scaled simplex.
inline InputCovariance project_c1(const HermitianMatrix &m, double budget)
{
    if (!(budget > 0.0))
        throw InvalidArgument("project_c1: budget must be positive");
    const HermitianEigen e = eigh(m);
    return InputCovariance::from_spectrum(e.vectors, project_simplex(e.values, budget));
}

struct BaselineOptions
{
    std::int64_t trials = 30000;
    int max_iter = 10;
    double step0 = 1.0;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    int max_halvings = 30;
};

struct BaselineResult
{
    InputCovariance q_hat;
    McEstimate i_mc;
    int iterations = 0;
    std::vector<double> objective_trace; // MC objective of each accepted iterate, starting at Q_0 = I
};

/// Direct maximization of the Monte-Carlo average mutual information by projected gradient
/// ascent. All evaluations share one seed, so the objective is a fixed deterministic function
/// and backtracking (halving the step until the objective increases) is well defined.
/// Each line search starts at twice the previously accepted step, beginning from step0.
/// Stops early when no step within max_halvings improves the objective.
inline BaselineResult baseline_optimize(const ChannelModel &model, const BaselineOptions &opts = {})
{
    const Index n = model.n();
    const double dn = static_cast<double>(n);
    const McOptions mc{opts.trials, opts.seed, opts.threads};

    BaselineResult result;
    result.q_hat = InputCovariance::identity(n);
    McEvaluation current = mc_evaluate(result.q_hat, model, mc, opts.max_iter > 0);
    result.objective_trace.push_back(current.estimate.mean);

    double trial_step = opts.step0;
    for (int it = 0; it < opts.max_iter; ++it)
    {
        const CMatrix &grad = current.gradient->matrix();
        double step = trial_step;
        bool accepted = false;
        for (int h = 0; h <= opts.max_halvings; ++h, step *= 0.5)
        {
            const InputCovariance candidate =
                project_c1(hermitian_part(result.q_hat.matrix() + step * grad), dn);
            const McEstimate value = mc_mutual_info(candidate, model, mc);
            if (value.mean > current.estimate.mean)
            {
                result.q_hat = candidate;
                current = mc_evaluate(result.q_hat, model, mc, true);
                current.estimate = value;
                trial_step = 2.0 * step;
                accepted = true;
                break;
            }
        }
        if (!accepted)
            break;
        result.iterations = it + 1;
        result.objective_trace.push_back(current.estimate.mean);
    }
    result.i_mc = current.estimate;
    return result;
}

} // namespace ricap

#endif
