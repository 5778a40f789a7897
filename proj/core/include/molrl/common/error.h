//
// Copyright 2026 The molrl Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef MOLRL_COMMON_ERROR_H_
#define MOLRL_COMMON_ERROR_H_

#include <stdexcept>
#include <string>

namespace molrl {

// Every exception thrown by the library derives from Error. The category
// determines the CLI exit code (usage/config = 1, data = 2, numerical = 3).
enum class ErrorCategory { kUsage = 1, kData = 2, kNumerical = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what)
      : Error(ErrorCategory::kUsage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what)
      : Error(ErrorCategory::kData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCategory::kNumerical, what) {}
};

}  // namespace molrl

#endif  // MOLRL_COMMON_ERROR_H_
