// Copyright 2026 The plmneuron Authors
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

#ifndef PLMNEURON_ERRORS_H_
#define PLMNEURON_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace plmneuron {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A file could not be opened, read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

class SequenceError : public Error {
 public:
  using Error::Error;
};

// Raised by strict FASTA parsing. `record_id` is empty when the failure
// happened before the first header.
class FastaError : public Error {
 public:
  enum class Kind { kMalformedHeader, kEmptySequence, kInvalidResidue, kTooLong };

  FastaError(Kind kind, std::string record_id, std::size_t line,
             const std::string& message)
      : Error(message), kind_(kind), record_id_(std::move(record_id)),
        line_(line) {}

  Kind kind() const { return kind_; }
  const std::string& record_id() const { return record_id_; }
  std::size_t line() const { return line_; }

 private:
  Kind kind_;
  std::string record_id_;
  std::size_t line_;
};

class DescriptorError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

class WeightFileError : public Error {
 public:
  enum class Kind { kIo, kVersionMismatch, kCorrupt };

  WeightFileError(Kind kind, const std::string& message)
      : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Remote completion failures. Each maps to a distinct CLI exit code.
class TransportError : public Error {
 public:
  using Error::Error;
};

class AuthError : public Error {
 public:
  using Error::Error;
};

class UnparseableResponseError : public Error {
 public:
  using Error::Error;
};

class UndefinedCorrelationError : public Error {
 public:
  using Error::Error;
};

class SchemaError : public Error {
 public:
  using Error::Error;
};

class NoMatchingNeuronsError : public Error {
 public:
  using Error::Error;
};

class MotifSyntaxError : public Error {
 public:
  using Error::Error;
};

}  // namespace plmneuron

#endif  // PLMNEURON_ERRORS_H_
