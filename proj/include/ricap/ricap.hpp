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

#ifndef RICAP_RICAP_HPP
#define RICAP_RICAP_HPP

#include "baseline.hpp"
#include "channel_model.hpp"
#include "config.hpp"
#include "error.hpp"
#include "fixed_point.hpp"
#include "input_covariance.hpp"
#include "matrix_kernels.hpp"
#include "monte_carlo.hpp"
#include "mutual_info.hpp"
#include "optimizer.hpp"
#include "version.hpp"
#include "waterfill.hpp"

#endif
