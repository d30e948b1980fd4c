// Copyright 2026 The muck Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace muck {

enum class Errc {
  DimensionMismatch,
  InvalidArgument,
  InvalidDensity,
  DualNonIntegrable,
  LambdaUndefined,
  OutsideRegime,
  SingularHitRate,
  BudgetExhausted,
  Config,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a diagnostic.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace muck
