// Copyright 2026 The pqp Authors
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

#ifndef PQP_ERROR_HPP
#define PQP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace pqp {

// Physics-level input errors are reported as std::invalid_argument.

/// Schema or value violation in a run configuration.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Output directory already holds a previous run.
class RunExistsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace pqp

#endif  // PQP_ERROR_HPP
