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

#ifndef TWSAT_TENSOR_H
#define TWSAT_TENSOR_H

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twsat/index_set.h"

namespace twsat {

using Complex = std::complex<double>;

/// Largest entry count a single tensor may hold before contraction refuses to allocate it.
inline constexpr size_t kMaxTensorEntries = size_t{1} << 26;

/// Dense d-state tensor over an index set.
///
/// Each index i carries a variable sigma_i ranging over the d*d matrix units |b1><b2|, encoded as
/// b1*d + b2. Entries are stored row-major over the ascending index list: the smallest index is
/// the most significant digit. A tensor over the empty set holds exactly one complex number.
class Tensor {
   public:
    Tensor() = default;
    /// Zero tensor.
    Tensor(int d, IndexSet indices);
    Tensor(int d, IndexSet indices, std::vector<Complex> data);

    static Tensor scalar(Complex value, int d);

    int d() const {
        return d_;
    }
    const IndexSet &indices() const {
        return indices_;
    }
    int rank() const {
        return (int)indices_.size();
    }
    size_t size() const {
        return data_.size();
    }
    std::span<const Complex> data() const {
        return data_;
    }
    std::span<Complex> data() {
        return data_;
    }
    Complex operator[](size_t flat) const {
        return data_[flat];
    }
    Complex &operator[](size_t flat) {
        return data_[flat];
    }
    /// Entry addressed by one sigma code per index, in ascending index order.
    Complex at(std::span<const int> sigma) const;
    Complex &at(std::span<const int> sigma);
    /// Value of a rank-0 tensor.
    Complex value() const;

    bool operator==(const Tensor &other) const = default;

   private:
    int d_ = 0;
    IndexSet indices_;
    std::vector<Complex> data_;
};

/// Number of entries of a d-state tensor of the given rank. Throws ResourceError past
/// kMaxTensorEntries.
size_t tensor_entry_count(int d, size_t rank);

inline int sigma_code(int d, int b1, int b2) {
    return b1 * d + b2;
}

/// Sums the product of entries over every assignment of the shared variables. The result lives
/// on the symmetric difference of the index sets. Contraction with no shared index (an outer
/// product) is refused unless allow_outer is set.
Tensor contract(const Tensor &a, const Tensor &b, bool allow_outer = false);

/// Largest entry modulus.
double linf_norm(const Tensor &g);
/// linf_norm of the entrywise difference; shapes must agree.
double distance(const Tensor &a, const Tensor &b);

/// Grid parameters: entries are snapped to integer multiples of epsilon/2 inside [-bound, bound].
/// Accuracy guarantees assume bound == 1.
struct NetParams {
    double epsilon = 0.01;
    double bound = 1.0;
    /// Clamp components beyond bound + epsilon instead of rejecting them. Products of truncated
    /// operands can overshoot the bound even when the exact values stay inside it.
    bool clamp_outside = false;

    void validate() const;
};

/// Integer grid coordinates (real, imaginary per entry) identifying a truncated tensor exactly.
using GridKey = std::vector<int64_t>;

struct GridKeyHash {
    size_t operator()(const GridKey &key) const;
};

/// Snaps each real and imaginary part to the nearest multiple of epsilon/2, ties to the even
/// multiple, clamped to [-bound, bound]. Throws ValidationError when a component lies beyond
/// bound + epsilon, unless clamp_outside is set. NaN is always rejected.
Tensor trunc(const Tensor &g, const NetParams &params);
std::pair<Tensor, GridKey> trunc_with_key(const Tensor &g, const NetParams &params);

}  // namespace twsat

#endif
