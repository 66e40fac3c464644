// Copyright 2026 The ptbrach Authors
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

#include <stdexcept>
#include <string>

namespace ptb {

// Numeric values are shared with ptb_status in ptbrach.h.
enum class ErrorCode : int {
  InvalidArgument = 1,
  ZeroCoupling = 2,
  NegativeCoupling = 3,
  NotExactPhase = 4,
  InconsistentRadius = 5,
  NotHermitian = 6,
  SingularMatrix = 7,
  ZeroState = 8,
  AlphaOutOfRange = 9,
  FrameMismatch = 10,
  NonrealProbability = 11,
  RouteDisagreement = 12,
  ZeroProbabilityOutcome = 13,
  SingularB = 14,
  Infeasible = 15,
  NotOrthogonalInput = 16,
  DegenerateIdentity = 17,
  DegenerateDenominator = 18,
  MetricOverflow = 19,
  CertificateFailed = 20,
  NonFinite = 21,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ptb
