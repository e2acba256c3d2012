// Copyright 2026 The pondc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PONDC_ERROR_H_
#define PONDC_ERROR_H_

#include <stdexcept>
#include <string>

namespace pondc {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class UnknownNode : public Error {
 public:
  using Error::Error;
};

class Unsatisfiable : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class OverCapacity : public Error {
 public:
  using Error::Error;
};

// Raised when a brute-force enumeration would exceed its size guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class MixedSweep : public Error {
 public:
  using Error::Error;
};

}  // namespace pondc

#endif  // PONDC_ERROR_H_
