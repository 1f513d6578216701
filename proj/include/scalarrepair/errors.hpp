/*
 * Copyright 2026 The scalarrepair Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scalarrepair {

enum class Errc {
  InvalidPolynomial,
  NotIrreducible,
  NotPrimitive,
  FieldTooLarge,
  FieldMismatch,
  DivisionByZero,
  ZeroVector,
  IncompatibleSubfield,
  InvalidCode,
  DuplicateEvalPoints,
  TooManySubsets,
  LengthMismatch,
  InvalidScheme,
  IncompatibleLift,
  ZeroReference,
  DimensionMismatch,
  InvalidMatrix,
  InfeasibleScheme,
  NotTwoParity,
  OddExtensionDegree,
  NotNormalized,
  SearchSpaceTooLarge,
  NoFeasibleFound,
  ParseError,
  MissingScheme,
  UnknownCode,
};

constexpr std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::InvalidPolynomial: return "InvalidPolynomial";
    case Errc::NotIrreducible: return "NotIrreducible";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::FieldMismatch: return "FieldMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::ZeroVector: return "ZeroVector";
    case Errc::IncompatibleSubfield: return "IncompatibleSubfield";
    case Errc::InvalidCode: return "InvalidCode";
    case Errc::DuplicateEvalPoints: return "DuplicateEvalPoints";
    case Errc::TooManySubsets: return "TooManySubsets";
    case Errc::LengthMismatch: return "LengthMismatch";
    case Errc::InvalidScheme: return "InvalidScheme";
    case Errc::IncompatibleLift: return "IncompatibleLift";
    case Errc::ZeroReference: return "ZeroReference";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidMatrix: return "InvalidMatrix";
    case Errc::InfeasibleScheme: return "InfeasibleScheme";
    case Errc::NotTwoParity: return "NotTwoParity";
    case Errc::OddExtensionDegree: return "OddExtensionDegree";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case Errc::NoFeasibleFound: return "NoFeasibleFound";
    case Errc::ParseError: return "ParseError";
    case Errc::MissingScheme: return "MissingScheme";
    case Errc::UnknownCode: return "UnknownCode";
  }
  return "Unknown";
}

/// All library failures are reported through this exception; code() tells them apart.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace scalarrepair
