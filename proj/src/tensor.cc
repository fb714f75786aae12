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

#include "twsat/tensor.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "twsat/errors.h"

namespace twsat {

size_t tensor_entry_count(int d, size_t rank) {
    size_t per = (size_t)d * (size_t)d;
    size_t total = 1;
    for (size_t i = 0; i < rank; i++) {
        if (total > kMaxTensorEntries / per) {
            throw ResourceError(
                "tensor of rank " + std::to_string(rank) + " with d=" + std::to_string(d) + " is too large to store");
        }
        total *= per;
    }
    return total;
}

Tensor::Tensor(int d, IndexSet indices) : d_(d), indices_(std::move(indices)) {
    if (d < 1) {
        throw ValidationError("tensor dimension must be positive");
    }
    data_.assign(tensor_entry_count(d, indices_.size()), Complex{0, 0});
}

Tensor::Tensor(int d, IndexSet indices, std::vector<Complex> data)
    : d_(d), indices_(std::move(indices)), data_(std::move(data)) {
    if (d < 1) {
        throw ValidationError("tensor dimension must be positive");
    }
    if (data_.size() != tensor_entry_count(d, indices_.size())) {
        throw ValidationError("tensor data size does not match d^(2*rank)");
    }
}

Tensor Tensor::scalar(Complex value, int d) {
    return Tensor(d, IndexSet{}, {value});
}

namespace {

size_t flat_index(const Tensor &t, std::span<const int> sigma) {
    if ((int)sigma.size() != t.rank()) {
        throw ValidationError("tensor address has the wrong number of variables");
    }
    size_t per = (size_t)t.d() * t.d();
    size_t flat = 0;
    for (int s : sigma) {
        if (s < 0 || (size_t)s >= per) {
            throw ValidationError("tensor address variable out of range");
        }
        flat = flat * per + (size_t)s;
    }
    return flat;
}

}  // namespace

Complex Tensor::at(std::span<const int> sigma) const {
    return data_[flat_index(*this, sigma)];
}

Complex &Tensor::at(std::span<const int> sigma) {
    return data_[flat_index(*this, sigma)];
}

Complex Tensor::value() const {
    if (rank() != 0) {
        throw ValidationError("value() requires a rank-0 tensor");
    }
    return data_[0];
}

Tensor contract(const Tensor &a, const Tensor &b, bool allow_outer) {
    if (a.d() != b.d()) {
        throw ValidationError("contract: dimension mismatch (" + std::to_string(a.d()) + " vs " +
                              std::to_string(b.d()) + ")");
    }
    const int d = a.d();
    const size_t per = (size_t)d * d;
    const IndexSet &ia = a.indices();
    const IndexSet &ib = b.indices();
    IndexSet shared = ia.intersection(ib);
    if (shared.empty() && !allow_outer) {
        throw ValidationError("contract: index sets " + ia.str() + " and " + ib.str() + " share no index");
    }
    IndexSet out_idx = ia.symmetric_difference(ib);
    Tensor out(d, out_idx);

    auto strides = [&](const IndexSet &s) {
        std::vector<size_t> st(s.size());
        size_t acc = 1;
        for (size_t j = s.size(); j-- > 0;) {
            st[j] = acc;
            acc *= per;
        }
        return st;
    };
    auto sa = strides(ia);
    auto sb = strides(ib);

    // Offsets into a and b for every assignment of the shared variables.
    size_t n_shared = tensor_entry_count(d, shared.size());
    std::vector<size_t> off_a(n_shared, 0);
    std::vector<size_t> off_b(n_shared, 0);
    for (size_t s = 0; s < n_shared; s++) {
        size_t rem = s;
        for (size_t j = shared.size(); j-- > 0;) {
            size_t digit = rem % per;
            rem /= per;
            off_a[s] += digit * sa[ia.position(shared[j])];
            off_b[s] += digit * sb[ib.position(shared[j])];
        }
    }

    // Stride of each output index within a or b.
    std::vector<size_t> out_sa(out_idx.size(), 0);
    std::vector<size_t> out_sb(out_idx.size(), 0);
    for (size_t j = 0; j < out_idx.size(); j++) {
        int pa = ia.position(out_idx[j]);
        if (pa >= 0) {
            out_sa[j] = sa[pa];
        } else {
            out_sb[j] = sb[ib.position(out_idx[j])];
        }
    }

    const Complex *pa = a.data().data();
    const Complex *pb = b.data().data();
    auto dst = out.data();
    for (size_t o = 0; o < dst.size(); o++) {
        size_t base_a = 0;
        size_t base_b = 0;
        size_t rem = o;
        for (size_t j = out_idx.size(); j-- > 0;) {
            size_t digit = rem % per;
            rem /= per;
            base_a += digit * out_sa[j];
            base_b += digit * out_sb[j];
        }
        Complex acc{0, 0};
        for (size_t s = 0; s < n_shared; s++) {
            acc += pa[base_a + off_a[s]] * pb[base_b + off_b[s]];
        }
        dst[o] = acc;
    }
    return out;
}

double linf_norm(const Tensor &g) {
    double m = 0;
    for (const auto &x : g.data()) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double distance(const Tensor &a, const Tensor &b) {
    if (a.d() != b.d() || a.indices() != b.indices()) {
        throw ValidationError("distance: tensors differ in shape (" + a.indices().str() + " vs " +
                              b.indices().str() + ")");
    }
    double m = 0;
    for (size_t i = 0; i < a.size(); i++) {
        m = std::max(m, std::abs(a[i] - b[i]));
    }
    return m;
}

void NetParams::validate() const {
    if (!(epsilon > 0 && epsilon < 1)) {
        throw ValidationError("net parameter epsilon must lie in (0, 1)");
    }
    if (!(bound > 0) || !std::isfinite(bound)) {
        throw ValidationError("net clamp bound must be positive and finite");
    }
    if (bound / (epsilon / 2) > 4.0e18) {
        throw ValidationError("net grid too fine for 64-bit grid coordinates");
    }
}

size_t GridKeyHash::operator()(const GridKey &key) const {
    uint64_t h = 1469598103934665603ULL;
    for (int64_t v : key) {
        h ^= (uint64_t)v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        h *= 1099511628211ULL;
    }
    return (size_t)h;
}

std::pair<Tensor, GridKey> trunc_with_key(const Tensor &g, const NetParams &params) {
    params.validate();
    const double step = params.epsilon / 2;
    const double limit = params.bound + params.epsilon;
    const int64_t kmax = (int64_t)std::floor(params.bound / step * (1 + 1e-12));
    auto snap = [&](double x) -> int64_t {
        if (!(std::fabs(x) <= limit) && (std::isnan(x) || !params.clamp_outside)) {
            std::ostringstream msg;
            msg << "entry outside net range: component " << x << " exceeds bound " << params.bound << " + epsilon";
            throw ValidationError(msg.str());
        }
        int64_t k = (int64_t)std::nearbyint(std::clamp(x, -limit, limit) / step);
        return std::clamp(k, -kmax, kmax);
    };
    Tensor out(g.d(), g.indices());
    GridKey key;
    key.reserve(2 * g.size());
    for (size_t i = 0; i < g.size(); i++) {
        int64_t kr = snap(g[i].real());
        int64_t ki = snap(g[i].imag());
        key.push_back(kr);
        key.push_back(ki);
        out[i] = Complex((double)kr * step, (double)ki * step);
    }
    return {std::move(out), std::move(key)};
}

Tensor trunc(const Tensor &g, const NetParams &params) {
    return trunc_with_key(g, params).first;
}

}  // namespace twsat
