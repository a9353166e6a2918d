// Copyright 2026 The ctxbind Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace ctxbind {

// Input outside the geometric domain (latitude range, pole proximity, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A field too long for the four-digit length prefix, malformed hex, ...
class EncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Public-signal vector whose shape does not match its relation kind.
class LayoutError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The proving oracle refuses to issue a proof for an unsatisfied relation.
class ProveRefused : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownDrop : public std::out_of_range {
 public:
  explicit UnknownDrop(const std::string& drop_id)
      : std::out_of_range("unknown drop: " + drop_id) {}
};

}  // namespace ctxbind
