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

#ifndef RICAP_VERSION_HPP
#define RICAP_VERSION_HPP

#include <string>

#define RICAP_VERSION_STRING "0.1.0"

namespace ricap
{

inline std::string build_identifier()
{
    std::string id = "ricap " RICAP_VERSION_STRING;
#if defined(__clang__)
    id += " clang " __clang_version__;
#elif defined(__GNUC__)
    id += " gcc " __VERSION__;
#endif
    return id;
}

} // namespace ricap

#endif
