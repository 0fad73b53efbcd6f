// Copyright 2026 The CAS Workbench Authors.
//
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

#ifndef CAS_ERRORS_H_
#define CAS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace cas {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class InvalidTokenError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class ModelSpecError : public Error {
 public:
  using Error::Error;
};

// A constraint phrase that cannot be produced with the model vocabulary.
class ConstraintError : public Error {
 public:
  ConstraintError(const std::string& what, std::string phrase)
      : Error(what), phrase_(std::move(phrase)) {}
  const std::string& phrase() const { return phrase_; }

 private:
  std::string phrase_;
};

class DatasetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace cas

#endif  // CAS_ERRORS_H_
