#include "ncr/bits.hpp"

namespace ncr {

BitString BitString::from_string(const std::string& text) {
  BitString r;
  for (char c : text) {
    if (c != '0' && c != '1')
      throw ParseError(std::string("bad bit character '") + c + "'");
    r.push_back(c == '1');
  }
  return r;
}

BitString BitString::take(std::size_t n) const {
  if (n > size()) throw std::out_of_range("BitString::take past end");
  BitString r;
  r.bits_.assign(bits_.begin(), bits_.begin() + static_cast<long>(n));
  return r;
}

bool BitString::is_prefix_of(const BitString& o) const {
  if (size() > o.size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (bits_[i] != o.bits_[i]) return false;
  return true;
}

std::string BitString::str() const {
  std::string s;
  s.reserve(size());
  for (bool b : bits_) s.push_back(b ? '1' : '0');
  return s;
}

BitString concat_blocks(
    const std::vector<std::pair<int, std::size_t>>& parts) {
  BitString r;
  for (const auto& [b, count] : parts) r.append_run(b, count);
  return r;
}

BitString BitStream::prefix(std::size_t n) const {
  BitString r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(bit(i));
  return r;
}

BitStream BitStream::zeros() {
  return BitStream([](std::size_t) { return 0; }, "zeros");
}

BitStream BitStream::ones() {
  return BitStream([](std::size_t) { return 1; }, "ones");
}

BitStream BitStream::alternating() {
  return BitStream([](std::size_t i) { return static_cast<int>(i & 1); },
                   "alt");
}

BitStream BitStream::periodic(const BitString& pattern) {
  if (pattern.empty()) throw ValidationError("periodic: empty pattern");
  return BitStream(
      [pattern](std::size_t i) { return pattern.bit(i % pattern.size()); },
      "periodic:" + pattern.str());
}

BitStream BitStream::eventually(const BitString& prefix, int tail_bit) {
  return BitStream(
      [prefix, tail_bit](std::size_t i) {
        return i < prefix.size() ? prefix.bit(i) : tail_bit;
      },
      "eventually:" + prefix.str() + "+" + std::to_string(tail_bit));
}

}  // namespace ncr
