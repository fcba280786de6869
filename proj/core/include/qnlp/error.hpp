// Copyright 2026 The qnlp Authors
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

namespace qnlp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed textual input (type strings, lexicon files, circuit text).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// A token that is not in the lexicon.
class VocabularyError : public Error {
 public:
  explicit VocabularyError(const std::string &token)
      : Error("out-of-vocabulary token \"" + token + "\""), token_(token) {}
  const std::string &token() const { return token_; }

 private:
  std::string token_;
};

/// Inconsistent diagram, witness, or circuit structure.
class StructureError : public Error {
 public:
  using Error::Error;
};

/// Parameter binding failed; what() lists every missing name.
class BindingError : public Error {
 public:
  using Error::Error;
};

/// Invalid configuration value (noise model, SPSA gains, splits...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnlp
