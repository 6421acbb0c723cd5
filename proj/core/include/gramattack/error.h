// Copyright 2026 The GramAttack Authors
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

#ifndef GRAMATTACK_ERROR_H_
#define GRAMATTACK_ERROR_H_

#include <stdexcept>
#include <string>

namespace gramattack {

// Bad input: malformed records, failed preconditions, invalid configs.
// The CLI maps this to exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure talking to a victim model. Transport problems are retriable;
// schema violations are not. The CLI maps this to exit code 3.
class OracleError : public std::runtime_error {
 public:
  OracleError(const std::string& what, bool retriable)
      : std::runtime_error(what), retriable_(retriable) {}

  bool retriable() const { return retriable_; }

 private:
  bool retriable_;
};

}  // namespace gramattack

#endif  // GRAMATTACK_ERROR_H_
