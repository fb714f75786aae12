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

#ifndef TWSAT_INDEX_SET_H
#define TWSAT_INDEX_SET_H

#include <initializer_list>
#include <string>
#include <vector>

namespace twsat {

/// Finite set of positive integers kept strictly ascending.
class IndexSet {
   public:
    IndexSet() = default;
    IndexSet(std::initializer_list<int> values);
    /// Sorts the values. Throws ValidationError on duplicates or non-positive entries.
    explicit IndexSet(std::vector<int> values);

    static IndexSet from_sorted_unchecked(std::vector<int> values);

    size_t size() const {
        return values_.size();
    }
    bool empty() const {
        return values_.empty();
    }
    const std::vector<int> &values() const {
        return values_;
    }
    auto begin() const {
        return values_.begin();
    }
    auto end() const {
        return values_.end();
    }
    int operator[](size_t i) const {
        return values_[i];
    }
    bool contains(int index) const;
    /// Position of index in the sorted list, or -1.
    int position(int index) const;

    IndexSet symmetric_difference(const IndexSet &other) const;
    IndexSet intersection(const IndexSet &other) const;
    bool intersects(const IndexSet &other) const;

    std::string str() const;

    bool operator==(const IndexSet &other) const = default;
    auto operator<=>(const IndexSet &other) const = default;

   private:
    std::vector<int> values_;
};

}  // namespace twsat

#endif
