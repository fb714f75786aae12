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

#include "twsat/index_set.h"

#include <algorithm>
#include <iterator>

#include "twsat/errors.h"

namespace twsat {

IndexSet::IndexSet(std::initializer_list<int> values) : IndexSet(std::vector<int>(values)) {
}

IndexSet::IndexSet(std::vector<int> values) : values_(std::move(values)) {
    std::sort(values_.begin(), values_.end());
    for (size_t i = 0; i < values_.size(); i++) {
        if (values_[i] <= 0) {
            throw ValidationError("index " + std::to_string(values_[i]) + " is not a positive integer");
        }
        if (i > 0 && values_[i] == values_[i - 1]) {
            throw ValidationError("index " + std::to_string(values_[i]) + " repeated within one index set");
        }
    }
}

IndexSet IndexSet::from_sorted_unchecked(std::vector<int> values) {
    IndexSet s;
    s.values_ = std::move(values);
    return s;
}

bool IndexSet::contains(int index) const {
    return std::binary_search(values_.begin(), values_.end(), index);
}

int IndexSet::position(int index) const {
    auto it = std::lower_bound(values_.begin(), values_.end(), index);
    if (it == values_.end() || *it != index) {
        return -1;
    }
    return (int)(it - values_.begin());
}

IndexSet IndexSet::symmetric_difference(const IndexSet &other) const {
    std::vector<int> out;
    std::set_symmetric_difference(
        values_.begin(), values_.end(), other.values_.begin(), other.values_.end(), std::back_inserter(out));
    return from_sorted_unchecked(std::move(out));
}

IndexSet IndexSet::intersection(const IndexSet &other) const {
    std::vector<int> out;
    std::set_intersection(
        values_.begin(), values_.end(), other.values_.begin(), other.values_.end(), std::back_inserter(out));
    return from_sorted_unchecked(std::move(out));
}

bool IndexSet::intersects(const IndexSet &other) const {
    auto a = values_.begin();
    auto b = other.values_.begin();
    while (a != values_.end() && b != other.values_.end()) {
        if (*a == *b) {
            return true;
        }
        if (*a < *b) {
            ++a;
        } else {
            ++b;
        }
    }
    return false;
}

std::string IndexSet::str() const {
    std::string s = "{";
    for (size_t i = 0; i < values_.size(); i++) {
        if (i) {
            s += ',';
        }
        s += std::to_string(values_[i]);
    }
    return s + "}";
}

}  // namespace twsat
