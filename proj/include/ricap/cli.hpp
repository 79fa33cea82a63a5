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

#ifndef RICAP_CLI_HPP
#define RICAP_CLI_HPP

// Command implementations behind the ricap executable. Each command writes RFC-4180 CSV with
// '#'-prefixed provenance lines; everything but bench timings is a deterministic function of
// the RunConfig.

#include "baseline.hpp"
#include "config.hpp"
#include "optimizer.hpp"
#include "version.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace ricap::cli
{

enum class Mode
{
    optimize,
    validate,
    baseline,
    bench
};

inline const char *mode_name(Mode m)
{
    switch (m)
    {
    case Mode::optimize: return "optimize";
    case Mode::validate: return "validate";
    case Mode::baseline: return "baseline";
    case Mode::bench: return "bench";
    }
    return "?";
}

struct RunConfig
{
    Mode mode = Mode::optimize;
    ModelSource model;
    std::vector<double> snr_grid_db;
    std::int64_t trials = 30000;
    std::uint64_t seed = 1;
    double tol_delta = 1e-8;
    double tol_q = 1e-8;
    int max_iter = 100;         // optimizer outer iterations
    int baseline_iter = 10;     // projected-gradient iterations
    double baseline_step = 1.0;
    bool identity_q = false;    // validate at Q = I instead of the optimizer's Q*
    std::vector<Index> dims;    // validate/bench: n = N sweep (generated models only)
    int bench_iterations = 5;
    int bench_runs = 3;
    unsigned threads = 1;
    std::string dump_q_dir;     // optimize: write Q* per SNR point as JSON
};

/// "start:stop:step" (inclusive), a comma list, or a single value, in dB.
inline std::vector<double> parse_snr_grid(const std::string &text)
{
    std::vector<double> out;
    auto number = [&](const std::string &s) {
        try
        {
            size_t pos = 0;
            const double v = std::stod(s, &pos);
            if (pos != s.size())
                throw ConfigError("");
            return v;
        }
        catch (const std::exception &)
        {
            throw ConfigError("bad SNR value '" + s + "'");
        }
    };
    if (text.find(':') != std::string::npos)
    {
        std::vector<std::string> parts;
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ':');)
            parts.push_back(p);
        if (parts.size() != 3)
            throw ConfigError("SNR range must be start:stop:step");
        const double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
        if (!(step > 0.0))
            throw ConfigError("SNR step must be positive");
        for (int k = 0;; ++k)
        {
            const double v = start + k * step;
            if (v > stop + 1e-9 * step)
                break;
            out.push_back(v);
        }
    }
    else if (!text.empty())
    {
        std::stringstream ss(text);
        for (std::string p; std::getline(ss, p, ',');)
            out.push_back(number(p));
    }
    return out;
}

inline void validate(const RunConfig &cfg)
{
    if (cfg.snr_grid_db.empty())
        throw ConfigError("SNR grid is empty");
    for (size_t i = 1; i < cfg.snr_grid_db.size(); ++i)
        if (!(cfg.snr_grid_db[i] > cfg.snr_grid_db[i - 1]))
            throw ConfigError("SNR grid must be strictly increasing");
    if (!cfg.model.model)
        throw ConfigError("no model given");
    if (cfg.trials < 2)
        throw ConfigError("trials must be >= 2");
    if (cfg.max_iter < 1 || cfg.baseline_iter < 0)
        throw ConfigError("iteration limits must be positive");
    if (!cfg.dims.empty() && !cfg.model.generator)
        throw ConfigError("a dimension sweep needs a generated model");
    if (cfg.bench_iterations < 1 || cfg.bench_runs < 1)
        throw ConfigError("bench iterations and runs must be positive");
}

/// FNV-1a 64-bit over a byte string.
inline std::uint64_t fnv1a(const std::string &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s)
    {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline json config_json(const RunConfig &cfg)
{
    return json{{"mode", mode_name(cfg.mode)},
                {"model", cfg.model.description},
                {"snr_db", cfg.snr_grid_db},
                {"trials", cfg.trials},
                {"seed", cfg.seed},
                {"tol_delta", cfg.tol_delta},
                {"tol_q", cfg.tol_q},
                {"max_iter", cfg.max_iter},
                {"baseline_iter", cfg.baseline_iter},
                {"baseline_step", cfg.baseline_step},
                {"identity_q", cfg.identity_q},
                {"dims", cfg.dims},
                {"bench_iterations", cfg.bench_iterations},
                {"bench_runs", cfg.bench_runs}};
}

inline std::string fmt(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

inline void write_header(const RunConfig &cfg, std::ostream &out)
{
    char hash[20];
    std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(fnv1a(config_json(cfg).dump())));
    out << "# ricap " << mode_name(cfg.mode) << "\n";
    out << "# config_hash: " << hash << "\n";
    out << "# seed: " << cfg.seed << "\n";
    out << "# build: " << build_identifier() << "\n";
    out << "# snr_db = 10*log10(1/sigma2); information in nats unless the column name says bits\n";
}

namespace detail
{

inline ChannelModel model_at(const RunConfig &cfg, double snr_db, Index dim = 0)
{
    if (dim > 0)
    {
        GeneratorSpec g = *cfg.model.generator;
        g.n = dim;
        g.N = dim;
        g.amplitudes.clear();
        return generate_model(g).with_sigma2(sigma2_from_snr_db(snr_db));
    }
    return cfg.model.model->with_sigma2(sigma2_from_snr_db(snr_db));
}

inline OptimizerOptions optimizer_options(const RunConfig &cfg)
{
    OptimizerOptions o;
    o.delta_tol = cfg.tol_delta;
    o.q_tol = cfg.tol_q;
    o.max_outer = cfg.max_iter;
    return o;
}

inline McOptions mc_options(const RunConfig &cfg) { return {cfg.trials, cfg.seed, cfg.threads}; }

inline void dump_covariance(const std::string &dir, double snr_db, const InputCovariance &q)
{
    std::filesystem::create_directories(dir);
    json rows = json::array();
    for (Index i = 0; i < q.dim(); ++i)
    {
        json row = json::array();
        for (Index j = 0; j < q.dim(); ++j)
            row.push_back({q.matrix()(i, j).real(), q.matrix()(i, j).imag()});
        rows.push_back(row);
    }
    const std::string path = dir + "/q_star_snr_" + fmt(snr_db) + "dB.json";
    std::ofstream f(path);
    if (!f)
        throw ConfigError("cannot write '" + path + "'");
    f << json{{"snr_db", snr_db}, {"Q", rows}}.dump(2) << "\n";
}

} // namespace detail

inline void cmd_optimize(const RunConfig &cfg, std::ostream &out)
{
    validate(cfg);
    write_header(cfg, out);
    out << "snr_db,i_bar_nats,i_bar_bits,iterations,converged,delta,delta_tilde\n";
    for (double snr : cfg.snr_grid_db)
    {
        const ChannelModel model = detail::model_at(cfg, snr);
        const OptResult r = optimize_covariance(model, detail::optimizer_options(cfg));
        out << fmt(snr) << ',' << fmt(r.i_bar_star) << ',' << fmt(r.i_bar_star / std::numbers::ln2) << ','
            << r.iterations << ',' << (r.converged ? "true" : "false") << ',' << fmt(r.deltas_star.delta) << ','
            << fmt(r.deltas_star.delta_tilde) << "\n";
        if (!cfg.dump_q_dir.empty())
            detail::dump_covariance(cfg.dump_q_dir, snr, r.q_star);
    }
}

inline void cmd_validate(const RunConfig &cfg, std::ostream &out)
{
    validate(cfg);
    write_header(cfg, out);
    out << "snr_db,i_bar,mc_mean,mc_stderr,gap,gap_times_n,n,q\n";
    const std::vector<Index> dims = cfg.dims.empty() ? std::vector<Index>{0} : cfg.dims;
    for (Index dim : dims)
        for (double snr : cfg.snr_grid_db)
        {
            const ChannelModel model = detail::model_at(cfg, snr, dim);
            InputCovariance q = InputCovariance::identity(model.n());
            if (!cfg.identity_q)
                q = optimize_covariance(model, detail::optimizer_options(cfg)).q_star;
            const double ib = i_bar(q, model).value;
            const McEstimate mc = mc_mutual_info(q, model, detail::mc_options(cfg));
            const double gap = mc.mean - ib;
            out << fmt(snr) << ',' << fmt(ib) << ',' << fmt(mc.mean) << ',' << fmt(mc.std_error) << ',' << fmt(gap)
                << ',' << fmt(gap * static_cast<double>(model.n())) << ',' << model.n() << ','
                << (cfg.identity_q ? "identity" : "optimal") << "\n";
        }
}

inline void cmd_baseline(const RunConfig &cfg, std::ostream &out)
{
    validate(cfg);
    write_header(cfg, out);
    out << "snr_db,i_bar_star,mc_at_q_star,mc_at_q_star_stderr,baseline_mc,baseline_stderr,baseline_iterations,"
           "difference\n";
    for (double snr : cfg.snr_grid_db)
    {
        const ChannelModel model = detail::model_at(cfg, snr);
        const OptResult opt = optimize_covariance(model, detail::optimizer_options(cfg));
        const McEstimate at_star = mc_mutual_info(opt.q_star, model, detail::mc_options(cfg));
        BaselineOptions bo;
        bo.trials = cfg.trials;
        bo.seed = cfg.seed;
        bo.threads = cfg.threads;
        bo.max_iter = cfg.baseline_iter;
        bo.step0 = cfg.baseline_step;
        const BaselineResult base = baseline_optimize(model, bo);
        out << fmt(snr) << ',' << fmt(opt.i_bar_star) << ',' << fmt(at_star.mean) << ',' << fmt(at_star.std_error)
            << ',' << fmt(base.i_mc.mean) << ',' << fmt(base.i_mc.std_error) << ',' << base.iterations << ','
            << fmt(opt.i_bar_star - base.i_mc.mean) << "\n";
    }
}

struct BenchRow
{
    Index dim = 0;
    double optimizer_mean = 0.0, optimizer_std = 0.0; // seconds per outer iteration
    double baseline_mean = 0.0, baseline_std = 0.0;   // seconds per projected-gradient iteration
};

namespace detail
{

inline void mean_std(const std::vector<double> &v, double &mean, double &sd)
{
    mean = 0.0;
    for (double x : v)
        mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v)
        ss += (x - mean) * (x - mean);
    sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

} // namespace detail

/// Wall-clock seconds per iteration of the asymptotic optimizer and of the Monte-Carlo baseline.
inline BenchRow bench_dimension(const RunConfig &cfg, Index dim)
{
    using clock = std::chrono::steady_clock;
    GeneratorSpec g = cfg.model.generator ? *cfg.model.generator : GeneratorSpec{};
    g.n = dim;
    g.N = dim;
    g.amplitudes.clear();
    const ChannelModel model = generate_model(g).with_sigma2(sigma2_from_snr_db(cfg.snr_grid_db.front()));

    OptimizerOptions oo;
    oo.delta_tol = -1.0; // never stop early: time exactly bench_iterations steps
    oo.q_tol = -1.0;
    oo.max_outer = cfg.bench_iterations;
    BaselineOptions bo;
    bo.trials = cfg.trials;
    bo.seed = cfg.seed;
    bo.threads = cfg.threads;
    bo.max_iter = cfg.bench_iterations;
    bo.step0 = cfg.baseline_step;

    std::vector<double> opt_times, base_times;
    for (int run = 0; run < cfg.bench_runs; ++run)
    {
        auto t0 = clock::now();
        const OptResult r = optimize_covariance(model, oo);
        auto t1 = clock::now();
        opt_times.push_back(std::chrono::duration<double>(t1 - t0).count() / r.iterations);

        t0 = clock::now();
        const BaselineResult b = baseline_optimize(model, bo);
        t1 = clock::now();
        base_times.push_back(std::chrono::duration<double>(t1 - t0).count() / std::max(1, b.iterations));
    }
    BenchRow row;
    row.dim = dim;
    detail::mean_std(opt_times, row.optimizer_mean, row.optimizer_std);
    detail::mean_std(base_times, row.baseline_mean, row.baseline_std);
    return row;
}

inline void cmd_bench(const RunConfig &cfg, std::ostream &out)
{
    validate(cfg);
    write_header(cfg, out);
    out << "# timings are wall-clock seconds and are not deterministic\n";
    out << "n,N,optimizer_sec_per_iter,optimizer_sec_stddev,baseline_sec_per_iter,baseline_sec_stddev,speedup\n";
    const std::vector<Index> dims = cfg.dims.empty() ? std::vector<Index>{2, 4, 8} : cfg.dims;
    for (Index d : dims)
    {
        const BenchRow r = bench_dimension(cfg, d);
        out << d << ',' << d << ',' << fmt(r.optimizer_mean) << ',' << fmt(r.optimizer_std) << ','
            << fmt(r.baseline_mean) << ',' << fmt(r.baseline_std) << ',' << fmt(r.baseline_mean / r.optimizer_mean)
            << "\n";
    }
}

inline void run(const RunConfig &cfg, std::ostream &out)
{
    switch (cfg.mode)
    {
    case Mode::optimize: cmd_optimize(cfg, out); break;
    case Mode::validate: cmd_validate(cfg, out); break;
    case Mode::baseline: cmd_baseline(cfg, out); break;
    case Mode::bench: cmd_bench(cfg, out); break;
    }
}

} // namespace ricap::cli

#endif
