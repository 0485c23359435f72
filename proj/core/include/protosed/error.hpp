// core/include/protosed/error.hpp
//
// Copyright 2026 The protosed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROTOSED_ERROR_HPP_
#define PROTOSED_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace protosed {

// Error categories map onto CLI exit codes: usage/config 1, data 2, numeric 3.
enum class ErrorKind { kUsage = 1, kData = 2, kNumeric = 3 };

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Bad arguments, bad configuration, malformed batches.
struct UsageError : Error {
  explicit UsageError(const std::string& m) : Error(ErrorKind::kUsage, m) {}
};

// Unreadable/missing/ill-formed files and protocol violations in the data.
struct DataError : Error {
  explicit DataError(const std::string& m) : Error(ErrorKind::kData, m) {}
};

// Non-finite values and other numeric failures.
struct NumericError : Error {
  explicit NumericError(const std::string& m) : Error(ErrorKind::kNumeric, m) {}
};

}  // namespace protosed

#endif  // PROTOSED_ERROR_HPP_
