// Copyright 2026 The cpl Authors
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

#ifndef CPL_BIT_VECTOR_H
#define CPL_BIT_VECTOR_H

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cpl {

/// Fixed-length packed bit vector.
class BitVector {
   public:
    BitVector() = default;
    explicit BitVector(size_t num_bits) : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {
    }

    size_t size() const {
        return num_bits_;
    }
    size_t num_words() const {
        return words_.size();
    }
    bool get(size_t k) const {
        return (words_[k >> 6] >> (k & 63)) & 1;
    }
    void set(size_t k, bool v) {
        uint64_t m = uint64_t{1} << (k & 63);
        if (v) {
            words_[k >> 6] |= m;
        } else {
            words_[k >> 6] &= ~m;
        }
    }
    void flip(size_t k) {
        words_[k >> 6] ^= uint64_t{1} << (k & 63);
    }
    uint64_t word(size_t w) const {
        return words_[w];
    }
    uint64_t &word(size_t w) {
        return words_[w];
    }

    BitVector &operator^=(const BitVector &other) {
        for (size_t w = 0; w < words_.size(); w++) {
            words_[w] ^= other.words_[w];
        }
        return *this;
    }
    BitVector operator^(const BitVector &other) const {
        BitVector r = *this;
        r ^= other;
        return r;
    }
    BitVector operator&(const BitVector &other) const {
        BitVector r = *this;
        for (size_t w = 0; w < words_.size(); w++) {
            r.words_[w] &= other.words_[w];
        }
        return r;
    }
    bool operator==(const BitVector &other) const = default;

    size_t popcount() const {
        size_t t = 0;
        for (uint64_t w : words_) {
            t += std::popcount(w);
        }
        return t;
    }
    bool none() const {
        for (uint64_t w : words_) {
            if (w) {
                return false;
            }
        }
        return true;
    }
    /// Parity of the popcount of (this & other).
    bool dot(const BitVector &other) const {
        uint64_t acc = 0;
        for (size_t w = 0; w < words_.size(); w++) {
            acc ^= words_[w] & other.words_[w];
        }
        return std::popcount(acc) & 1;
    }
    std::vector<size_t> ones() const {
        std::vector<size_t> r;
        for (size_t w = 0; w < words_.size(); w++) {
            uint64_t v = words_[w];
            while (v) {
                r.push_back(w * 64 + std::countr_zero(v));
                v &= v - 1;
            }
        }
        return r;
    }

   private:
    size_t num_bits_ = 0;
    std::vector<uint64_t> words_;
};

}  // namespace cpl

#endif
