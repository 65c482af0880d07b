// SPDX-License-Identifier: Apache-2.0
//
// roughscatter: rough-surface radio scattering models, 1 GHz - 1 THz
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

#pragma once

#include <stdexcept>
#include <string>

namespace roughscatter
{
    // Base of every error thrown by the library. The C API maps each subclass
    // onto one rs_status code.
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Input outside the mathematical domain of an operation (negative height,
    // non-positive frequency, eps_r < 1, ...).
    class DomainError : public Error
    {
    public:
        using Error::Error;
    };

    // Evaluation hits a genuine singularity of the model (cos(theta_i) = 0 in
    // the Rayleigh criterion, F_alpha -> 0, v_y = 0 in the RCS kernel).
    class SingularityError : public Error
    {
    public:
        using Error::Error;
    };

    // Malformed or inconsistent configuration / scenario / CLI options.
    class ConfigError : public Error
    {
    public:
        using Error::Error;
    };

    // Text input that could not be parsed; carries a line number when known.
    class ParseError : public ConfigError
    {
    public:
        ParseError(const std::string &msg, std::size_t line = 0)
            : ConfigError(line ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
        std::size_t line() const noexcept { return line_; }

    private:
        std::size_t line_;
    };

    class IoError : public Error
    {
    public:
        using Error::Error;
    };
}
