// Copyright 2026 The fluxctl Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluxctl {

enum class ErrorKind {
    InvalidArgument,
    NumericalFailure,
    NoSolution,
    Saturation,
    FitFailure,
    Schedule,
    Parse,
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string &what) : Error(ErrorKind::InvalidArgument, what) {}
};

struct NumericalFailure : Error {
    explicit NumericalFailure(const std::string &what) : Error(ErrorKind::NumericalFailure, what) {}
};

/// A root or target that lies outside what the model can reach.
struct NoSolution : Error {
    NoSolution(const std::string &what, double lo, double hi)
        : Error(ErrorKind::NoSolution, what), attainable_lo(lo), attainable_hi(hi) {}
    double attainable_lo;
    double attainable_hi;
};

struct SaturationError : Error {
    SaturationError(const std::string &what, double peak_value, std::size_t at_index)
        : Error(ErrorKind::Saturation, what), peak(peak_value), index(at_index) {}
    double peak;
    std::size_t index;
};

struct FitFailure : Error {
    FitFailure(const std::string &what, double best_residual_norm)
        : Error(ErrorKind::FitFailure, what), best_residual(best_residual_norm) {}
    double best_residual;
};

struct ScheduleError : Error {
    explicit ScheduleError(const std::string &what) : Error(ErrorKind::Schedule, what) {}
};

struct ParseError : Error {
    ParseError(const std::string &msg, std::size_t line_no, std::size_t col_no)
        : Error(ErrorKind::Parse,
                std::to_string(line_no) + ":" + std::to_string(col_no) + ": " + msg),
          line(line_no), column(col_no) {}
    std::size_t line;
    std::size_t column;
};

/// Rethrow e as the same error kind with `context` prepended to the message.
[[noreturn]] inline void rethrow_with_context(const Error &e, const std::string &context) {
    const std::string msg = context + ": " + e.what();
    switch (e.kind()) {
    case ErrorKind::InvalidArgument: throw InvalidArgument(msg);
    case ErrorKind::NumericalFailure: throw NumericalFailure(msg);
    case ErrorKind::NoSolution:
        if (const auto *n = dynamic_cast<const NoSolution *>(&e))
            throw NoSolution(msg, n->attainable_lo, n->attainable_hi);
        break;
    case ErrorKind::Saturation:
        if (const auto *s = dynamic_cast<const SaturationError *>(&e))
            throw SaturationError(msg, s->peak, s->index);
        break;
    case ErrorKind::FitFailure:
        if (const auto *f = dynamic_cast<const FitFailure *>(&e)) throw FitFailure(msg, f->best_residual);
        break;
    case ErrorKind::Schedule: throw ScheduleError(msg);
    case ErrorKind::Parse: break;
    }
    throw Error(e.kind(), msg);
}

}  // namespace fluxctl
