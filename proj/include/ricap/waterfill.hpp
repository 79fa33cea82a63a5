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

#ifndef RICAP_WATERFILL_HPP
#define RICAP_WATERFILL_HPP

#include "input_covariance.hpp"
#include "mutual_info.hpp"

#include <algorithm>
#include <span>
#include <vector>

namespace ricap
{

/// Water level mu with sum_i max(0, mu - 1/d_i) = budget; modes with d_i = 0 never fill.
/// Exact: the active set is found by scanning the sorted floors 1/d_i.
inline double water_level(std::span<const double> d, double budget)
{
    if (!(budget > 0.0) || !std::isfinite(budget))
        throw InvalidArgument("water_level: budget must be positive and finite");
    std::vector<double> floors;
    floors.reserve(d.size());
    for (double di : d)
    {
        if (di < 0.0 || !std::isfinite(di))
            throw InvalidArgument("water_level: gains must be finite and >= 0");
        if (di > 0.0)
            floors.push_back(1.0 / di);
    }
    if (floors.empty())
        throw InvalidArgument("water_level: no positive gain");
    std::sort(floors.begin(), floors.end());

    double prefix = 0.0;
    double mu = 0.0;
    for (size_t k = 0; k < floors.size(); ++k)
    {
        prefix += floors[k];
        const double candidate = (budget + prefix) / static_cast<double>(k + 1);
        // floors[k] enters the active set only if the level clears it.
        if (k > 0 && candidate <= floors[k])
            break;
        mu = candidate;
    }
    return mu;
}

struct WaterfillSolution
{
    InputCovariance covariance;
    double level = 0.0;      // mu; 0 when degenerate
    bool degenerate = false; // G = 0, uniform allocation returned
};

/// Maximize log det(I + G Q G) over trace(Q) = budget from the eigendecomposition of G^2.
inline WaterfillSolution waterfill(const EffectiveGain &g, double budget)
{
    const Index n = g.matrix.dim();
    if (n == 0)
        throw InvalidArgument("waterfill: empty gain matrix");
    const HermitianEigen e = eigh(g.matrix);
    RVector d = e.values.cwiseMax(0.0).cwiseAbs2();
    if (!(d.maxCoeff() > 0.0))
    {
        const RVector q = RVector::Constant(n, budget / static_cast<double>(n));
        return {InputCovariance::from_spectrum(CMatrix::Identity(n, n), q), 0.0, true};
    }
    const double mu = water_level(std::span<const double>(d.data(), static_cast<size_t>(n)), budget);
    RVector q(n);
    for (Index i = 0; i < n; ++i)
        q(i) = d(i) > 0.0 ? std::max(0.0, mu - 1.0 / d(i)) : 0.0;
    // Absorb the rounding of the level into the active modes so the trace is exact.
    q *= budget / q.sum();
    return {InputCovariance::from_spectrum(e.vectors, q), mu, false};
}

} // namespace ricap

#endif
