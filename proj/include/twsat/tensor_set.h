// Copyright 2026 The twsat Authors
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

#ifndef TWSAT_TENSOR_SET_H
#define TWSAT_TENSOR_SET_H

#include <vector>

#include "twsat/tensor.h"

namespace twsat {

/// Where a set member came from. For a member of a contracted set, left and right are member
/// positions in the two operand sets. For a leaf set, left is the position in the original
/// candidate list and right is -1.
struct Provenance {
    int left = -1;
    int right = -1;

    bool operator==(const Provenance &other) const = default;
};

/// Tensors sharing one index set, with a provenance handle per member.
struct TensorSet {
    int d = 0;
    IndexSet indices;
    std::vector<Tensor> members;
    std::vector<Provenance> provenance;

    size_t size() const {
        return members.size();
    }

    /// Candidate list used verbatim (no truncation, no dedup); provenance is the list position.
    static TensorSet leaf(std::vector<Tensor> candidates);
};

struct SetContractOptions {
    int threads = 1;
    size_t max_set_size = 1000000;
};

/// {trunc(contract(g, h))} over all pairs, deduplicated by grid coordinates. Pairs are
/// considered in ascending (left, right) order and the first producer of each grid point is
/// kept, so the result does not depend on the thread count. Throws ResourceError once the
/// result would exceed max_set_size.
TensorSet set_contract_trunc(
    const TensorSet &a, const TensorSet &b, const NetParams &params, const SetContractOptions &options = {});

}  // namespace twsat

#endif
