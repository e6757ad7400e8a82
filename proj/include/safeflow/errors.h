// Copyright 2026 The Safeflow Authors
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

#ifndef SAFEFLOW_ERRORS_H_
#define SAFEFLOW_ERRORS_H_

#include <stdexcept>
#include <string>

namespace safeflow {

// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidInstanceError : public Error {
 public:
  using Error::Error;
};

// Malformed instance file. `field()` names the offending JSON path when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message),
        field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class SchemaVersionError : public ParseError {
 public:
  explicit SchemaVersionError(long long found)
      : ParseError("version", "unsupported schema version " +
                                  std::to_string(found) + " (expected 1)"),
        found_(found) {}
  long long found() const { return found_; }

 private:
  long long found_;
};

class GenerationFailedError : public Error {
 public:
  using Error::Error;
};

// Raised when an edge is too thin for the safety margin to be positive
// (or to clear the configured floor).
class CapacityTooSmallError : public Error {
 public:
  CapacityTooSmallError(int edge_id, double capacity, double required)
      : Error("edge " + std::to_string(edge_id) + ": capacity " +
              std::to_string(capacity) + " is below the margin minimum " +
              std::to_string(required)),
        edge_id_(edge_id),
        capacity_(capacity),
        required_(required) {}
  int edge_id() const { return edge_id_; }
  double capacity() const { return capacity_; }
  double required_capacity() const { return required_; }

 private:
  int edge_id_;
  double capacity_;
  double required_;
};

class IterationLimitError : public Error {
 public:
  explicit IterationLimitError(long iterations)
      : Error("simplex iteration limit reached after " +
              std::to_string(iterations) + " pivots"),
        iterations_(iterations) {}
  long iterations() const { return iterations_; }

 private:
  long iterations_;
};

// The random walk reached a non-target node without positive support
// outflow. Only possible if the flow violates conservation.
class DeadEndError : public Error {
 public:
  DeadEndError(int commodity, int node)
      : Error("commodity " + std::to_string(commodity) +
              ": walk dead-ended at node " + std::to_string(node)),
        commodity_(commodity),
        node_(node) {}
  int commodity() const { return commodity_; }
  int node() const { return node_; }

 private:
  int commodity_;
  int node_;
};

class CyclicSupportError : public Error {
 public:
  explicit CyclicSupportError(int commodity)
      : Error("commodity " + std::to_string(commodity) +
              ": flow support contains a directed cycle"),
        commodity_(commodity) {}
  int commodity() const { return commodity_; }

 private:
  int commodity_;
};

class OracleTooLargeError : public Error {
 public:
  using Error::Error;
};

}  // namespace safeflow

#endif  // SAFEFLOW_ERRORS_H_
