// Copyright 2026 The ocf Authors
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

#ifndef OCF_DETAIL_MIXED_RADIX_HPP
#define OCF_DETAIL_MIXED_RADIX_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "ocf/errors.hpp"

namespace ocf::detail {

// Flattens vectors with 0 <= v[k] < radix[k] into a single index. The first
// coordinate varies fastest.
class MixedRadix {
 public:
  MixedRadix() = default;
  explicit MixedRadix(std::vector<int> radix, std::size_t limit =
                          std::numeric_limits<std::size_t>::max())
      : radix_(std::move(radix)) {
    stride_.resize(radix_.size());
    std::size_t s = 1;
    for (std::size_t k = 0; k < radix_.size(); ++k) {
      if (radix_[k] <= 0) throw ContractError("mixed radix needs radix >= 1");
      stride_[k] = s;
      if (s > limit / static_cast<std::size_t>(radix_[k]))
        throw ResourceError("table of more than " + std::to_string(limit) +
                            " states requested");
      s *= static_cast<std::size_t>(radix_[k]);
    }
    size_ = s;
  }

  std::size_t size() const { return size_; }
  std::size_t dims() const { return radix_.size(); }
  int radix(std::size_t k) const { return radix_[k]; }
  std::size_t stride(std::size_t k) const { return stride_[k]; }

  std::size_t encode(const std::vector<int>& v) const {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < radix_.size(); ++k) idx += stride_[k] * v[k];
    return idx;
  }

  std::vector<int> decode(std::size_t idx) const {
    std::vector<int> v(radix_.size());
    for (std::size_t k = 0; k < radix_.size(); ++k) {
      v[k] = static_cast<int>(idx % radix_[k]);
      idx /= radix_[k];
    }
    return v;
  }

  int digit(std::size_t idx, std::size_t k) const {
    return static_cast<int>((idx / stride_[k]) % radix_[k]);
  }

 private:
  std::vector<int> radix_;
  std::vector<std::size_t> stride_;
  std::size_t size_ = 1;
};

}  // namespace ocf::detail

#endif  // OCF_DETAIL_MIXED_RADIX_HPP
