// SPDX-License-Identifier: Apache-2.0
//
// tcsl: time-cluster spatial-lobe channel simulator
// Copyright (C) 2026 The tcsl authors
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

#ifndef tcsl_error_H
#define tcsl_error_H

#include <cstddef>
#include <stdexcept>
#include <string>

namespace tcsl
{

// Error categories; the CLI maps each to a distinct exit code
enum class ErrorKind
{
    domain,  // invalid numeric argument
    config,  // configuration file or option problem
    format,  // malformed input file (Ant3D, CSV)
    io,      // missing / unwritable path
    runtime, // anything else (degenerate data, etc.)
};

class Error : public std::runtime_error
{
public:
    Error(ErrorKind kind, const std::string &what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

// Parse / validation error that carries the offending input line (1-based, 0 = n/a)
class LineError : public Error
{
public:
    LineError(ErrorKind kind, std::size_t line, const std::string &what)
        : Error(kind, line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline const char *to_string(ErrorKind kind)
{
    switch (kind)
    {
    case ErrorKind::domain:
        return "domain error";
    case ErrorKind::config:
        return "config error";
    case ErrorKind::format:
        return "format error";
    case ErrorKind::io:
        return "io error";
    case ErrorKind::runtime:
        return "runtime error";
    }
    return "error";
}

} // namespace tcsl

#endif
