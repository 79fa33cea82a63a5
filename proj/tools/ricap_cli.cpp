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

// ricap: command-line driver (optimize | validate | baseline | bench).

#include <ricap/cli.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

namespace
{

struct Flags
{
    std::string config_path;
    std::string snr;
    std::int64_t trials = 30000;
    std::uint64_t seed = 1;
    std::string out;
    double tol_delta = 1e-8;
    double tol_q = 1e-8;
    int max_iter = 100;
    int baseline_iter = 10;
    double baseline_step = 1.0;
    bool identity_q = false;
    std::vector<long> dims;
    int bench_iterations = 5;
    int bench_runs = 3;
    unsigned threads = 1;
    std::string dump_q;
    // inline generator
    long n = 4;
    long N = 0;
    double K = 0.0;
    double rho_t = 0.0;
    double rho_r = 0.0;
    std::uint64_t angle_seed = 1;
};

struct Options
{
    CLI::Option *snr, *trials, *seed, *tol_delta, *tol_q, *max_iter;
};

Options add_common(CLI::App &sub, Flags &f)
{
    Options o{};
    sub.add_option("--config", f.config_path, "Model/run file (JSON)")->check(CLI::ExistingFile);
    o.snr = sub.add_option("--snr", f.snr, "SNR grid in dB: start:stop:step, a comma list, or one value");
    o.trials = sub.add_option("--trials", f.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    o.seed = sub.add_option("--seed", f.seed, "Monte-Carlo seed");
    sub.add_option("--out", f.out, "Output CSV path (default: stdout)");
    o.tol_delta = sub.add_option("--tol-delta", f.tol_delta, "Optimizer tolerance on delta differences");
    o.tol_q = sub.add_option("--tol-q", f.tol_q, "Optimizer tolerance on ||Q_k - Q_{k-1}||_F / sqrt(n)");
    o.max_iter = sub.add_option("--max-iter", f.max_iter, "Optimizer outer iterations")->check(CLI::PositiveNumber);
    sub.add_option("--threads", f.threads, "Worker threads for Monte-Carlo trials")->check(CLI::PositiveNumber);
    sub.add_option("--n", f.n, "Inline model: transmit antennas")->check(CLI::PositiveNumber);
    sub.add_option("--N", f.N, "Inline model: receive antennas (default n)");
    sub.add_option("--K", f.K, "Inline model: Rice factor (0 = Rayleigh)")->check(CLI::NonNegativeNumber);
    sub.add_option("--rho-t", f.rho_t, "Inline model: transmit exponential correlation")->check(CLI::Range(0.0, 0.999999));
    sub.add_option("--rho-r", f.rho_r, "Inline model: receive exponential correlation")->check(CLI::Range(0.0, 0.999999));
    sub.add_option("--angle-seed", f.angle_seed, "Inline model: seed of the LOS angles");
    return o;
}

ricap::cli::RunConfig make_config(ricap::cli::Mode mode, const Flags &f, const Options &o)
{
    using namespace ricap;
    cli::RunConfig cfg;
    cfg.mode = mode;
    json root;
    if (!f.config_path.empty())
    {
        root = read_json_file(f.config_path);
    }
    else
    {
        root["model"] = json{{"type", "generator"}, {"n", f.n},         {"N", f.N > 0 ? f.N : f.n},
                             {"K", f.K},           {"rho_t", f.rho_t}, {"rho_r", f.rho_r},
                             {"angle_seed", f.angle_seed}};
    }
    cfg.model = parse_model(root);

    if (root.contains("run"))
    {
        const json &run = root.at("run");
        try
        {
            if (run.contains("snr"))
            {
                const json &s = run.at("snr");
                cfg.snr_grid_db = s.is_string() ? cli::parse_snr_grid(s.get<std::string>()) : s.get<std::vector<double>>();
            }
            cfg.trials = run.value("trials", cfg.trials);
            cfg.seed = run.value("seed", cfg.seed);
            cfg.tol_delta = run.value("tol_delta", cfg.tol_delta);
            cfg.tol_q = run.value("tol_q", cfg.tol_q);
            cfg.max_iter = run.value("max_iter", cfg.max_iter);
        }
        catch (const json::exception &e)
        {
            throw ConfigError(std::string("run section: ") + e.what());
        }
    }
    if (o.snr->count())
        cfg.snr_grid_db = cli::parse_snr_grid(f.snr);
    if (o.trials->count())
        cfg.trials = f.trials;
    if (o.seed->count())
        cfg.seed = f.seed;
    if (o.tol_delta->count())
        cfg.tol_delta = f.tol_delta;
    if (o.tol_q->count())
        cfg.tol_q = f.tol_q;
    if (o.max_iter->count())
        cfg.max_iter = f.max_iter;
    cfg.baseline_iter = f.baseline_iter;
    cfg.baseline_step = f.baseline_step;
    cfg.identity_q = f.identity_q;
    for (long d : f.dims)
        cfg.dims.push_back(static_cast<Index>(d));
    cfg.bench_iterations = f.bench_iterations;
    cfg.bench_runs = f.bench_runs;
    cfg.threads = f.threads;
    cfg.dump_q_dir = f.dump_q;
    return cfg;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Capacity-achieving input covariance of correlated Rician MIMO channels"};
    app.require_subcommand(1);
    Flags f;

    auto *opt = app.add_subcommand("optimize", "Maximize the large-system approximant over an SNR grid");
    auto *val = app.add_subcommand("validate", "Compare the approximant with a Monte-Carlo estimate");
    auto *base = app.add_subcommand("baseline", "Compare with Monte-Carlo projected gradient ascent");
    auto *bench = app.add_subcommand("bench", "Time one iteration of each method at n = N in {2, 4, 8}");

    const Options o_opt = add_common(*opt, f);
    opt->add_option("--dump-q", f.dump_q, "Directory receiving Q* per SNR point");
    const Options o_val = add_common(*val, f);
    val->add_flag("--identity-q", f.identity_q, "Evaluate at Q = I instead of the optimizer output");
    val->add_option("--dims", f.dims, "Sweep n = N over these sizes (generated models)")->delimiter(',');
    const Options o_base = add_common(*base, f);
    base->add_option("--baseline-iter", f.baseline_iter, "Projected-gradient iterations")->check(CLI::NonNegativeNumber);
    base->add_option("--step", f.baseline_step, "Initial ascent step")->check(CLI::PositiveNumber);
    const Options o_bench = add_common(*bench, f);
    bench->add_option("--dims", f.dims, "Sizes n = N to time")->delimiter(',');
    bench->add_option("--bench-iterations", f.bench_iterations, "Iterations timed per run")->check(CLI::PositiveNumber);
    bench->add_option("--bench-runs", f.bench_runs, "Repeated runs per size")->check(CLI::PositiveNumber);

    CLI11_PARSE(app, argc, argv);

    try
    {
        using ricap::cli::Mode;
        ricap::cli::RunConfig cfg;
        if (opt->parsed())
            cfg = make_config(Mode::optimize, f, o_opt);
        else if (val->parsed())
            cfg = make_config(Mode::validate, f, o_val);
        else if (base->parsed())
            cfg = make_config(Mode::baseline, f, o_base);
        else
            cfg = make_config(Mode::bench, f, o_bench);

        if (f.out.empty())
        {
            ricap::cli::run(cfg, std::cout);
        }
        else
        {
            std::ofstream out(f.out);
            if (!out)
                throw ricap::ConfigError("cannot write '" + f.out + "'");
            ricap::cli::run(cfg, out);
        }
    }
    catch (const ricap::Error &e)
    {
        std::cerr << "ricap: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
