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

#ifndef RICAP_CONFIG_HPP
#define RICAP_CONFIG_HPP

// Model files. A model is either generated
//
//   {"model": {"type": "generator", "n": 4, "N": 4, "K": 1, "rho_t": 0.5, "rho_r": 0.8,
//              "angle_seed": 7, "amplitudes": "unit", "snr_db": 0}}
//
// or given explicitly, matrices row-major with [re, im] entries:
//
//   {"model": {"type": "explicit", "K": 1, "sigma2": 1,
//              "A": [[[re, im], ...], ...], "R": [...], "T": [...]}}
//
// Raw matrices are rescaled to the trace normalizations. SNR_dB = 10 log10(1 / sigma2);
// give either "sigma2" or "snr_db" (default sigma2 = 1).
// An optional "run" section may carry defaults for the command line: "snr" (a
// "start:stop:step" string or a list), "trials", "seed", "tol_delta", "tol_q", "max_iter".

#include "channel_model.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace ricap
{

using json = nlohmann::json;

struct ModelSource
{
    json description;                    // normalized model section, used for provenance hashing
    std::optional<GeneratorSpec> generator; // set for generated models
    std::optional<ChannelModel> model;
};

namespace detail
{

inline Complex parse_complex(const json &v)
{
    if (v.is_number())
        return {v.get<double>(), 0.0};
    if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
        return {v[0].get<double>(), v[1].get<double>()};
    throw ConfigError("expected a complex number [re, im], got " + v.dump());
}

inline CMatrix parse_matrix(const json &v, const char *name)
{
    if (!v.is_array() || v.empty() || !v[0].is_array())
        throw ConfigError(std::string("matrix ") + name + " must be a non-empty list of rows");
    const Index rows = static_cast<Index>(v.size());
    const Index cols = static_cast<Index>(v[0].size());
    CMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
    {
        const json &row = v[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw ConfigError(std::string("matrix ") + name + " has ragged rows");
        for (Index j = 0; j < cols; ++j)
            m(i, j) = parse_complex(row[static_cast<size_t>(j)]);
    }
    return m;
}

inline double parse_sigma2(const json &m)
{
    if (m.contains("sigma2") && m.contains("snr_db"))
        throw ConfigError("give either sigma2 or snr_db, not both");
    if (m.contains("snr_db"))
        return sigma2_from_snr_db(m.at("snr_db").get<double>());
    return m.value("sigma2", 1.0);
}

} // namespace detail

inline ModelSource parse_model(const json &root)
{
    const json &m = root.contains("model") ? root.at("model") : root;
    if (!m.is_object())
        throw ConfigError("model section must be an object");
    ModelSource out;
    out.description = m;
    try
    {
        const std::string type = m.value("type", std::string("generator"));
        if (type == "generator")
        {
            GeneratorSpec g;
            g.n = m.value("n", Index{4});
            g.N = m.value("N", g.n);
            g.K = m.value("K", 1.0);
            g.rho_t = m.value("rho_t", 0.0);
            g.rho_r = m.value("rho_r", 0.0);
            g.angle_seed = m.value("angle_seed", std::uint64_t{1});
            g.sigma2 = detail::parse_sigma2(m);
            if (m.contains("amplitudes"))
            {
                const json &amp = m.at("amplitudes");
                if (amp.is_string())
                {
                    if (amp.get<std::string>() != "unit")
                        throw ConfigError("amplitudes must be \"unit\" or a list of complex values");
                }
                else
                {
                    for (const auto &a : amp)
                        g.amplitudes.push_back(detail::parse_complex(a));
                }
            }
            out.generator = g;
            out.model = generate_model(g);
        }
        else if (type == "explicit")
        {
            const CMatrix r = detail::parse_matrix(m.at("R"), "R");
            const CMatrix t = detail::parse_matrix(m.at("T"), "T");
            const double K = m.value("K", 0.0);
            const CMatrix a = m.contains("A") ? detail::parse_matrix(m.at("A"), "A") : CMatrix::Zero(r.rows(), t.rows());
            out.model = assemble_model(a, HermitianMatrix(r), HermitianMatrix(t), K, detail::parse_sigma2(m));
        }
        else
        {
            throw ConfigError("unknown model type '" + type + "'");
        }
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("model section: ") + e.what());
    }
    catch (const InvalidArgument &e)
    {
        throw ConfigError(std::string("model section: ") + e.what());
    }
    return out;
}

inline json read_json_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    try
    {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    }
    catch (const json::exception &e)
    {
        throw ConfigError("config file '" + path + "': " + e.what());
    }
}

/// Inverse of parse_model for explicit models, e.g. to save a generated instance.
inline json model_to_json(const ChannelModel &model)
{
    auto mat = [](const CMatrix &m) {
        json rows = json::array();
        for (Index i = 0; i < m.rows(); ++i)
        {
            json row = json::array();
            for (Index j = 0; j < m.cols(); ++j)
                row.push_back({m(i, j).real(), m(i, j).imag()});
            rows.push_back(row);
        }
        return rows;
    };
    return json{{"type", "explicit"},
                {"K", model.rice_factor()},
                {"sigma2", model.sigma2()},
                {"A", mat(model.los())},
                {"R", mat(model.receive_correlation().matrix())},
                {"T", mat(model.transmit_correlation().matrix())}};
}

} // namespace ricap

#endif
