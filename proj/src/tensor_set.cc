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

#include "twsat/tensor_set.h"

#include <exception>
#include <optional>
#include <thread>
#include <unordered_map>

#include "twsat/errors.h"

namespace twsat {

TensorSet TensorSet::leaf(std::vector<Tensor> candidates) {
    if (candidates.empty()) {
        throw ValidationError("tensor set must not be empty");
    }
    TensorSet out;
    out.d = candidates[0].d();
    out.indices = candidates[0].indices();
    for (size_t i = 0; i < candidates.size(); i++) {
        if (candidates[i].d() != out.d || candidates[i].indices() != out.indices) {
            throw ValidationError("tensor set members differ in shape");
        }
        out.provenance.push_back({(int)i, -1});
    }
    out.members = std::move(candidates);
    return out;
}

TensorSet set_contract_trunc(
    const TensorSet &a, const TensorSet &b, const NetParams &params, const SetContractOptions &options) {
    params.validate();
    if (a.d != b.d) {
        throw ValidationError("set_contract_trunc: dimension mismatch");
    }
    if (!a.indices.intersects(b.indices)) {
        throw ValidationError("set_contract_trunc: index sets " + a.indices.str() + " and " + b.indices.str() +
                              " share no index");
    }
    TensorSet out;
    out.d = a.d;
    out.indices = a.indices.symmetric_difference(b.indices);

    const size_t total = a.size() * b.size();
    const size_t threads = (size_t)std::max(1, options.threads);
    const size_t block = std::max<size_t>(64, threads * 16);
    std::unordered_map<GridKey, int, GridKeyHash> seen;
    std::vector<std::optional<std::pair<Tensor, GridKey>>> cells(std::min(block, total));
    std::vector<std::exception_ptr> failures(threads);

    for (size_t start = 0; start < total; start += block) {
        size_t count = std::min(block, total - start);
        auto work = [&](size_t worker) {
            try {
                for (size_t c = worker; c < count; c += threads) {
                    size_t cell = start + c;
                    cells[c] = trunc_with_key(contract(a.members[cell / b.size()], b.members[cell % b.size()]), params);
                }
            } catch (...) {
                failures[worker] = std::current_exception();
            }
        };
        if (threads == 1 || count == 1) {
            work(0);
            if (failures[0]) {
                std::rethrow_exception(failures[0]);
            }
        } else {
            std::vector<std::thread> pool;
            for (size_t w = 0; w < threads; w++) {
                pool.emplace_back(work, w);
            }
            for (auto &t : pool) {
                t.join();
            }
            for (auto &f : failures) {
                if (f) {
                    // Replay in order so the reported error is the first failing pair.
                    for (size_t c = 0; c < count; c++) {
                        size_t cell = start + c;
                        trunc_with_key(contract(a.members[cell / b.size()], b.members[cell % b.size()]), params);
                    }
                    std::rethrow_exception(f);
                }
            }
        }
        for (size_t c = 0; c < count; c++) {
            auto &[tensor, key] = *cells[c];
            if (seen.contains(key)) {
                continue;
            }
            if (out.members.size() >= options.max_set_size) {
                throw ResourceError("tensor set over " + out.indices.str() + " exceeds the cap of " +
                                    std::to_string(options.max_set_size) + " members");
            }
            size_t cell = start + c;
            seen.emplace(std::move(key), (int)out.members.size());
            out.members.push_back(std::move(tensor));
            out.provenance.push_back({(int)(cell / b.size()), (int)(cell % b.size())});
            cells[c].reset();
        }
    }
    return out;
}

}  // namespace twsat
