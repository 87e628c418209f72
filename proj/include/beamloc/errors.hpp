// SPDX-License-Identifier: Apache-2.0
//
// beamloc: localization-aided mm-wave initial access and coverage analysis
// Copyright (C) 2026 The beamloc authors
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

#ifndef BEAMLOC_ERRORS_HPP
#define BEAMLOC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace beamloc
{
    // Argument outside the mathematical domain of an operation
    class DomainError : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    // Quadrature or series evaluation failed; `where` names the module/operation
    class NumericError : public std::runtime_error
    {
    public:
        NumericError(std::string where, const std::string &what)
            : std::runtime_error(where + ": " + what), where_(std::move(where)) {}
        [[nodiscard]] const std::string &where() const { return where_; }

    private:
        std::string where_;
    };

    // Invalid or unknown configuration key
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string key, const std::string &what)
            : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
        [[nodiscard]] const std::string &key() const { return key_; }

    private:
        std::string key_;
    };
}

#endif
