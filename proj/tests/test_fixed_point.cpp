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

#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace ricap;
using Catch::Approx;

namespace
{

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

CMatrix oracle_sqrt(const CMatrix &q)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(q);
    return es.eigenvectors() * es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
           es.eigenvectors().adjoint();
}

// Direct dense evaluation with explicit inverses.
std::pair<double, double> oracle_f(double k, double kt, const CMatrix &q, const ChannelModel &m)
{
    const Index n = m.n(), N = m.N();
    const CMatrix s = oracle_sqrt(q);
    const CMatrix tq = s * m.transmit_correlation().matrix() * s;
    const CMatrix &r = m.receive_correlation().matrix();
    const CMatrix &a = m.los();
    const CMatrix In = CMatrix::Identity(n, n), IN = CMatrix::Identity(N, N);
    const CMatrix mf = m.sigma2() * (IN + kt * r) + a * s * test::explicit_inverse(In + k * tq) * s * a.adjoint();
    const CMatrix mft = m.sigma2() * (In + k * tq) + s * a.adjoint() * test::explicit_inverse(IN + kt * r) * a * s;
    const double f = (r * test::explicit_inverse(mf)).trace().real() / static_cast<double>(n);
    const double ft = (tq * test::explicit_inverse(mft)).trace().real() / static_cast<double>(n);
    return {f, ft};
}

} // namespace

TEST_CASE("t_of_q identities", "[fixed_point]")
{
    std::mt19937_64 rng(5);
    const HermitianMatrix t = test::random_psd(4, rng);
    CHECK(test::frob_rel(t_of_q(InputCovariance::identity(4), t).matrix(), t.matrix()) < 1e-14);

    const InputCovariance q = random_covariance(4, rng);
    CHECK(test::frob_rel(t_of_q(q, HermitianMatrix::identity(4)).matrix(), q.matrix()) < 1e-12);

    for (int rep = 0; rep < 20; ++rep)
    {
        const InputCovariance qq = random_covariance(5, rng);
        const HermitianMatrix tt = test::random_psd(5, rng);
        const double lhs = t_of_q(qq, tt).trace();
        const double rhs = (qq.matrix() * tt.matrix()).trace().real();
        CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(rhs)));
        CHECK(eigh(t_of_q(qq, tt)).values.minCoeff() >= -1e-10 * tt.trace());
    }
    CHECK_THROWS_AS(t_of_q(InputCovariance::identity(3), t), InvalidArgument);
}

TEST_CASE("f and f_tilde on the i.i.d. Rayleigh model", "[fixed_point]")
{
    const ChannelModel m = rayleigh_iid(4, 4, 1.0);
    const InputCovariance q = InputCovariance::identity(4);
    for (double k : {0.0, 0.3, 7.0})
        CHECK(eval_f(k, 0.0, q, m) == Approx(1.0).epsilon(1e-15));
    CHECK(eval_f(2.0, 1.0, q, m) == Approx(0.5).epsilon(1e-15));
    CHECK(eval_f_tilde(0.0, 5.0, q, m) == Approx(1.0).epsilon(1e-15));
    CHECK(eval_f_tilde(3.0, 0.0, q, m) == Approx(0.25).epsilon(1e-15));
    CHECK_THROWS_AS(eval_f(-1.0, 0.0, q, m), InvalidArgument);
    CHECK_THROWS_AS(eval_f_tilde(0.0, std::nan(""), q, m), InvalidArgument);
}

TEST_CASE("f and f_tilde match a dense-inverse oracle on a Rician model", "[fixed_point]")
{
    std::mt19937_64 rng(17);
    for (double sigma2 : {0.1, 1.0, 3.0})
    {
        const ChannelModel m = test::rician_4x4(sigma2);
        for (int rep = 0; rep < 5; ++rep)
        {
            const InputCovariance q = rep == 0 ? InputCovariance::identity(4) : random_covariance(4, rng);
            const CanonicalSystem sys(q, m);
            for (auto [k, kt] : {std::pair{0.0, 0.0}, {0.4, 1.3}, {2.0, 0.1}, {10.0, 10.0}})
            {
                const auto [f, ft] = oracle_f(k, kt, q.matrix(), m);
                CHECK(std::abs(sys.f(k, kt) - f) <= 1e-12 * std::max(1.0, f));
                CHECK(std::abs(sys.f_tilde(k, kt) - ft) <= 1e-12 * std::max(1.0, ft));
            }
        }
    }
}

TEST_CASE("f is positive and strictly decreasing in kappa_tilde", "[fixed_point][property]")
{
    std::mt19937_64 rng(23);
    const ChannelModel m = test::rician_4x4(0.5);
    const CanonicalSystem sys(random_covariance(4, rng), m);
    for (double k : {0.0, 0.5, 3.0})
    {
        double prev = sys.f(k, 0.0);
        CHECK(prev > 0.0);
        for (double kt = 0.25; kt <= 8.0; kt *= 2.0)
        {
            const double cur = sys.f(k, kt);
            CHECK(cur > 0.0);
            CHECK(cur < prev);
            prev = cur;
        }
    }
}

TEST_CASE("solve_deltas: Rayleigh golden-ratio fixed point", "[fixed_point]")
{
    const FixedPointReport rep = solve_deltas(InputCovariance::identity(4), rayleigh_iid(4, 4, 1.0));
    CHECK(std::abs(rep.solution.delta - kGolden) <= 1e-9);
    CHECK(std::abs(rep.solution.delta_tilde - kGolden) <= 1e-9);
    CHECK(rep.residual <= 1e-10);
}

TEST_CASE("solve_deltas: vanishing SNR limit", "[fixed_point]")
{
    const double sigma2 = 1e6;
    FixedPointOptions opts;
    opts.tol = 1e-18;
    const FixedPointReport rep = solve_deltas(InputCovariance::identity(4), rayleigh_iid(4, 4, sigma2), opts);
    CHECK(rep.solution.delta > 0.0);
    CHECK(std::abs(rep.solution.delta * sigma2 - 1.0) <= 1e-6);
    // exact root of sigma2 d^2 + sigma2 d - 1 = 0
    const double exact = 2.0 / (sigma2 * (1.0 + std::sqrt(1.0 + 4.0 / sigma2)));
    CHECK(rep.solution.delta == Approx(exact).epsilon(1e-12));
}

TEST_CASE("solve_deltas: multi-start uniqueness on the Rician model", "[fixed_point][property]")
{
    std::mt19937_64 rng(31);
    for (double sigma2 : {0.05, 0.3162, 1.0, 3.1623})
    {
        const ChannelModel m = test::rician_4x4(sigma2);
        for (int rep = 0; rep < 4; ++rep)
        {
            const InputCovariance q = rep == 0 ? InputCovariance::identity(4) : random_covariance(4, rng);
            const CanonicalSystem sys(q, m);
            FixedPointOptions o;
            o.start = {1.0, 1.0};
            const FixedPointReport ref = solve_deltas(sys, o);
            CHECK(ref.residual <= 1e-10);
            CHECK(std::abs(ref.solution.delta - sys.f(ref.solution.delta, ref.solution.delta_tilde)) <= 1e-10);
            CHECK(std::abs(ref.solution.delta_tilde - sys.f_tilde(ref.solution.delta, ref.solution.delta_tilde)) <=
                  1e-10);
            for (DeltaPair start : {DeltaPair{0.1, 0.1}, DeltaPair{10.0, 10.0}, DeltaPair{0.01, 50.0}})
            {
                o.start = start;
                const FixedPointReport other = solve_deltas(sys, o);
                CHECK(std::abs(other.solution.delta - ref.solution.delta) <= 1e-8 * ref.solution.delta);
                CHECK(std::abs(other.solution.delta_tilde - ref.solution.delta_tilde) <=
                      1e-8 * ref.solution.delta_tilde);
            }
        }
    }
}

TEST_CASE("solve_deltas: failure modes are reported", "[fixed_point]")
{
    const ChannelModel m = test::rician_4x4(1.0);
    const InputCovariance q = InputCovariance::identity(4);
    FixedPointOptions o;
    o.max_iter = 1;
    CHECK_THROWS_AS(solve_deltas(q, m, o), ConvergenceError);
    try
    {
        solve_deltas(q, m, o);
    }
    catch (const ConvergenceError &e)
    {
        CHECK(e.iterations() == 1);
        CHECK(e.residual() > o.tol);
    }
    o = {};
    o.tol = 0.0;
    CHECK_THROWS_AS(solve_deltas(q, m, o), InvalidArgument);
    o = {};
    o.start = {0.0, 1.0};
    CHECK_THROWS_AS(solve_deltas(q, m, o), InvalidArgument);
    CHECK_THROWS_AS(solve_deltas(InputCovariance::identity(3), m), InvalidArgument);
}
