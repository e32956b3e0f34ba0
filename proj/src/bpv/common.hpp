/*
   Copyright 2026 the bpverify developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bpv {

inline constexpr const char* kVersion = "0.1.0";

/// Dense real matrix; configurations x in M_{n,q} are stored with one
/// column per point.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Bad call: dimension mismatch, ordering violation, malformed input.
class InvalidArgument : public std::invalid_argument {
 public:
  explicit InvalidArgument(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerically rank-deficient configuration. Samplers and verifiers catch
/// this, count the draw as rejected, and move on.
class SingularConfiguration : public std::runtime_error {
 public:
  explicit SingularConfiguration(const std::string& what) : std::runtime_error(what) {}
};

/// Parameter outside the absolute-convergence domain of the requested
/// integral. Never silently continued.
class OutOfDomain : public std::domain_error {
 public:
  explicit OutOfDomain(const std::string& what) : std::domain_error(what) {}
};

/// Requested configuration is valid mathematically but no implemented
/// evaluation path covers it. The message names the supported paths.
class UnsupportedConfiguration : public std::runtime_error {
 public:
  explicit UnsupportedConfiguration(const std::string& what) : std::runtime_error(what) {}
};

/// Suite/function-spec text that does not parse; message carries position.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline bool all_finite(const Matrix& m) { return m.allFinite(); }

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw InvalidArgument(msg);
}

}  // namespace bpv
