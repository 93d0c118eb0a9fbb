#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ncr/error.hpp"

namespace ncr {

// Finite word over {0,1}. Text form is ASCII '0'/'1'.
class BitString {
 public:
  BitString() = default;
  static BitString from_string(const std::string& text);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_.at(i) ? 1 : 0; }

  void push_back(int b) { bits_.push_back(b != 0); }
  void append(const BitString& o) {
    bits_.insert(bits_.end(), o.bits_.begin(), o.bits_.end());
  }
  void append_run(int b, std::size_t count) {
    bits_.insert(bits_.end(), count, b != 0);
  }

  BitString take(std::size_t n) const;
  BitString concat(const BitString& o) const {
    BitString r = *this;
    r.append(o);
    return r;
  }

  bool is_prefix_of(const BitString& o) const;

  std::string str() const;

  bool operator==(const BitString& o) const { return bits_ == o.bits_; }
  bool operator!=(const BitString& o) const { return bits_ != o.bits_; }
  // Lexicographic on the bit vectors; shorter strings compare by prefix.
  bool operator<(const BitString& o) const { return bits_ < o.bits_; }

 private:
  std::vector<bool> bits_;
};

// Builds b0^c0 ^ b1^c1 ^ ... from (bit, repeat-count) blocks.
BitString concat_blocks(const std::vector<std::pair<int, std::size_t>>& parts);

// Deterministic infinite bit sequence defined by a pure indexed generator:
// repeated reads of the same index always return the same bit.
class BitStream {
 public:
  using Generator = std::function<int(std::size_t)>;

  BitStream(Generator gen, std::string name)
      : gen_(std::make_shared<Generator>(std::move(gen))),
        name_(std::move(name)) {}

  int bit(std::size_t i) const { return (*gen_)(i) ? 1 : 0; }
  BitString prefix(std::size_t n) const;
  const std::string& name() const { return name_; }

  static BitStream zeros();
  static BitStream ones();
  static BitStream alternating();  // 0101...
  static BitStream periodic(const BitString& pattern);
  // Finite prefix extended with a constant tail.
  static BitStream eventually(const BitString& prefix, int tail_bit);

 private:
  std::shared_ptr<Generator> gen_;
  std::string name_;
};

inline BitString stream_prefix(const BitStream& x, std::size_t n) {
  return x.prefix(n);
}

}  // namespace ncr
