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

#ifndef SAFEFLOW_PATH_H_
#define SAFEFLOW_PATH_H_

#include <vector>

namespace safeflow {

// A directed walk given both as node sequence and as the edge ids between
// consecutive nodes (edges.size() == nodes.size() - 1). Edge ids are needed
// because parallel edges make the node sequence ambiguous.
struct Path {
  std::vector<int> nodes;
  std::vector<int> edges;

  friend bool operator==(const Path&, const Path&) = default;
};

}  // namespace safeflow

#endif  // SAFEFLOW_PATH_H_
