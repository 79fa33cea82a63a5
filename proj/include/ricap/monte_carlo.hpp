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

#ifndef RICAP_MONTE_CARLO_HPP
#define RICAP_MONTE_CARLO_HPP

#include "channel_model.hpp"
#include "input_covariance.hpp"

#include <boost/random/normal_distribution.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

namespace ricap
{

/// SplitMix64 generator. Small state makes a fresh stream per trial cheap.
class SplitMix64
{
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) noexcept : state_(state) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    static constexpr std::uint64_t mix(std::uint64_t z) noexcept
    {
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    result_type operator()() noexcept
    {
        state_ += 0x9e3779b97f4a7c15ULL;
        return mix(state_);
    }

private:
    std::uint64_t state_;
};

/// Stream for one Monte-Carlo trial; a pure function of (seed, trial).
inline SplitMix64 trial_stream(std::uint64_t seed, std::uint64_t trial) noexcept
{
    return SplitMix64(SplitMix64::mix(seed ^ SplitMix64::mix(trial + 0x632be59bd9b4e019ULL)));
}

/// Draws Sigma = A + n^{-1/2} R^{1/2} X T^{1/2} with X having i.i.d. circular complex Gaussian
/// entries, E|X_ij|^2 = 1 (variance 1/2 per real component).
///
/// With R = U_R D_R U_R^H and T = U_T D_T U_T^H the draw is realized as
///   Sigma = A + n^{-1/2} U_R D_R^{1/2} Z D_T^{1/2} U_T^H,   Z i.i.d. like X,
/// which has the law above because X = U_R Z U_T^H is again i.i.d. circular Gaussian. The map
/// from random draws to Sigma does not depend on the input covariance, so evaluations at
/// different Q with one seed use common random numbers.
class ChannelSampler
{
public:
    explicit ChannelSampler(const ChannelModel &model)
        : ChannelSampler(model.los(), model.receive_correlation(), model.transmit_correlation())
    {
    }

    /// Raw (not necessarily normalized) LOS matrix and PSD correlations.
    ChannelSampler(const CMatrix &a, const HermitianMatrix &r, const HermitianMatrix &t) : a_(a)
    {
        if (a.rows() != r.dim() || a.cols() != t.dim())
            throw InvalidArgument("ChannelSampler: LOS matrix must be N x n");
        const HermitianEigen er = eigh(r);
        const HermitianEigen et = eigh(t);
        if (er.values.minCoeff() < psd_threshold(er.values) || et.values.minCoeff() < psd_threshold(et.values))
            throw NotPositiveError("ChannelSampler: correlation matrices must be PSD");
        u_r_ = er.vectors;
        u_t_ = et.vectors;
        d_r_sqrt_ = er.values.cwiseMax(0.0).cwiseSqrt();
        d_t_sqrt_ = et.values.cwiseMax(0.0).cwiseSqrt() / std::sqrt(static_cast<double>(t.dim()));
    }

    Index N() const noexcept { return a_.rows(); }
    Index n() const noexcept { return a_.cols(); }

    template <class Rng>
    CMatrix sample(Rng &rng) const
    {
        const CMatrix z = gaussian(rng, N(), n());
        return a_ + u_r_ * (d_r_sqrt_.asDiagonal() * z * d_t_sqrt_.asDiagonal()) * u_t_.adjoint();
    }

    /// Q-dependent constants for drawing U_R^H Sigma Q^{1/2}, which has the same Gram
    /// determinant as Sigma Q^{1/2}.
    struct Folded
    {
        CMatrix a_q;          // U_R^H A Q^{1/2}
        CMatrix mix;          // n^{-1/2} D_T^{1/2} U_T^H Q^{1/2}
        CVector mix_diagonal; // set when mix is diagonal
        bool diagonal = false;
    };

    /// `q_sqrt` is the PSD square root of the input covariance.
    Folded prepare(const CMatrix &s) const
    {
        Folded f;
        f.a_q = u_r_.adjoint() * a_ * s;
        f.mix = d_t_sqrt_.asDiagonal() * (u_t_.adjoint() * s);
        CMatrix off = f.mix;
        off.diagonal().setZero();
        f.diagonal = off.cwiseAbs().maxCoeff() <= 1e-15 * std::max(1e-300, f.mix.cwiseAbs().maxCoeff());
        if (f.diagonal)
            f.mix_diagonal = f.mix.diagonal();
        return f;
    }

    template <class Rng>
    CMatrix sample_folded(const Folded &f, Rng &rng) const
    {
        const CMatrix z = gaussian(rng, N(), n());
        if (f.diagonal)
            return f.a_q + d_r_sqrt_.asDiagonal() * z * f.mix_diagonal.asDiagonal();
        return f.a_q + d_r_sqrt_.asDiagonal() * (z * f.mix);
    }

    template <class Rng>
    static CMatrix gaussian(Rng &rng, Index rows, Index cols)
    {
        boost::random::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        CMatrix x(rows, cols);
        for (Index j = 0; j < cols; ++j)
            for (Index i = 0; i < rows; ++i)
            {
                const double re = gauss(rng);
                const double im = gauss(rng);
                x(i, j) = Complex(re, im);
            }
        return x;
    }

private:
    CMatrix a_;
    CMatrix u_r_;
    CMatrix u_t_;
    RVector d_r_sqrt_;
    RVector d_t_sqrt_; // includes n^{-1/2}
};

template <class Rng>
CMatrix sample_channel(const ChannelModel &model, Rng &rng)
{
    return ChannelSampler(model).sample(rng);
}

struct McEstimate
{
    double mean = 0.0; // nats
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

struct McOptions
{
    std::int64_t trials = 30000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct McEvaluation
{
    McEstimate estimate;
    std::optional<HermitianMatrix> gradient; // E[Sigma^H (sigma2 I + Sigma Q Sigma^H)^{-1} Sigma]
};

namespace detail
{

// Trials are accumulated in fixed blocks and blocks are merged in index order, so the result
// does not depend on how many threads evaluated them.
inline constexpr std::int64_t kMcBlock = 512;

struct BlockStats
{
    std::int64_t count = 0;
    double mean = 0.0;
    double m2 = 0.0;
    CMatrix grad; // sum over trials in the block

    void push(double x)
    {
        ++count;
        const double d = x - mean;
        mean += d / static_cast<double>(count);
        m2 += d * (x - mean);
    }

    void merge(const BlockStats &o)
    {
        if (o.count == 0)
            return;
        const double total = static_cast<double>(count + o.count);
        const double d = o.mean - mean;
        mean += d * static_cast<double>(o.count) / total;
        m2 += o.m2 + d * d * static_cast<double>(count) * static_cast<double>(o.count) / total;
        count += o.count;
    }
};

template <class BlockFn>
void run_blocks(std::int64_t trials, unsigned threads, BlockFn &&fn)
{
    const std::int64_t blocks = (trials + kMcBlock - 1) / kMcBlock;
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::int64_t>(blocks, 1))));
    if (threads == 1)
    {
        for (std::int64_t b = 0; b < blocks; ++b)
            fn(b);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::int64_t b = next++; b < blocks; b = next++)
                fn(b);
        });
    for (auto &t : pool)
        t.join();
}

} // namespace detail

namespace detail
{

inline McEvaluation mc_evaluate_impl(const CMatrix &q, const CMatrix &q_sqrt, const ChannelModel &model,
                                     const McOptions &opts, bool with_gradient)
{
    if (opts.trials < 2)
        throw InvalidArgument("mc_evaluate: need at least two trials");
    if (q.rows() != model.n())
        throw InvalidArgument("mc_evaluate: covariance dimension differs from transmit antenna count");

    const ChannelSampler sampler(model);
    const ChannelSampler::Folded folded = sampler.prepare(q_sqrt);
    const Index n = model.n(), N = model.N();
    const double sigma2 = model.sigma2();
    const std::int64_t blocks = (opts.trials + detail::kMcBlock - 1) / detail::kMcBlock;
    std::vector<detail::BlockStats> stats(static_cast<size_t>(blocks));

    detail::run_blocks(opts.trials, opts.threads, [&](std::int64_t b) {
        detail::BlockStats &st = stats[static_cast<size_t>(b)];
        if (with_gradient)
            st.grad = CMatrix::Zero(n, n);
        const std::int64_t begin = b * detail::kMcBlock;
        const std::int64_t end = std::min(opts.trials, begin + detail::kMcBlock);
        CMatrix gram;
        Eigen::LLT<CMatrix> llt;
        for (std::int64_t t = begin; t < end; ++t)
        {
            SplitMix64 rng = trial_stream(opts.seed, static_cast<std::uint64_t>(t));
            if (!with_gradient)
            {
                const CMatrix s = sampler.sample_folded(folded, rng);
                // Sylvester: factor the smaller of I + S^H S / sigma2 and I + S S^H / sigma2.
                const Index m = std::min(n, N);
                gram.setIdentity(m, m);
                if (n <= N)
                    gram.selfadjointView<Eigen::Lower>().rankUpdate(s.adjoint(), 1.0 / sigma2);
                else
                    gram.selfadjointView<Eigen::Lower>().rankUpdate(s, 1.0 / sigma2);
                double ld = 0.0;
                detail::logdet_hpd_lower_inplace(gram, ld);
                st.push(ld);
            }
            else
            {
                const CMatrix sigma = sampler.sample(rng);
                const CMatrix m = sigma2 * CMatrix::Identity(N, N) + sigma * q * sigma.adjoint();
                llt.compute(m);
                const auto diag = llt.matrixLLT().diagonal().real();
                st.push(2.0 * diag.array().log().sum() - static_cast<double>(N) * std::log(sigma2));
                st.grad.noalias() += sigma.adjoint() * llt.solve(sigma);
            }
        }
    });

    detail::BlockStats total;
    CMatrix grad = with_gradient ? CMatrix(CMatrix::Zero(n, n)) : CMatrix();
    for (const auto &st : stats)
    {
        total.merge(st);
        if (with_gradient)
            grad += st.grad;
    }

    McEvaluation out;
    out.estimate.mean = total.mean;
    out.estimate.trials = opts.trials;
    out.estimate.seed = opts.seed;
    out.estimate.std_error =
        std::sqrt(total.m2 / static_cast<double>(total.count - 1)) / std::sqrt(static_cast<double>(total.count));
    if (with_gradient)
        out.gradient = hermitian_part(grad / static_cast<double>(opts.trials));
    return out;
}

} // namespace detail

/// Monte-Carlo estimate of E[log det(I + Sigma Q Sigma^H / sigma2)], optionally together with
/// the sample mean of its exact per-realization gradient in Q. Trial t draws from
/// trial_stream(seed, t), so the result depends on (seed, trials) and not on `threads`.
inline McEvaluation mc_evaluate(const InputCovariance &q, const ChannelModel &model, const McOptions &opts,
                                bool with_gradient)
{
    return detail::mc_evaluate_impl(q.matrix(), q.sqrt().matrix(), model, opts, with_gradient);
}

/// Same estimator at an arbitrary PSD matrix (no trace constraint), e.g. for finite differences.
inline McEvaluation mc_evaluate(const HermitianMatrix &q, const ChannelModel &model, const McOptions &opts,
                                bool with_gradient)
{
    return detail::mc_evaluate_impl(q.matrix(), psd_sqrt(q).matrix(), model, opts, with_gradient);
}

inline McEstimate mc_mutual_info(const InputCovariance &q, const ChannelModel &model, const McOptions &opts = {})
{
    return mc_evaluate(q, model, opts, false).estimate;
}

inline HermitianMatrix mc_gradient(const InputCovariance &q, const ChannelModel &model, const McOptions &opts = {})
{
    return *mc_evaluate(q, model, opts, true).gradient;
}

} // namespace ricap

#endif
