#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace swarmauth {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

/// Appends `value` as a `width`-byte big-endian integer (width <= 8).
void put_be(Bytes& out, std::uint64_t value, std::size_t width);
void put_bytes(Bytes& out, ByteView data);
/// u32 big-endian length followed by the data.
void put_prefixed(Bytes& out, ByteView data);

std::string to_hex(ByteView data);

// Sequential reader over an encoded buffer. Any overrun throws DecodeError.
class ByteReader {
 public:
  explicit ByteReader(ByteView data) : data_(data) {}

  std::uint64_t be(std::size_t width);
  ByteView take(std::size_t n);
  ByteView prefixed();

  bool done() const noexcept { return pos_ == data_.size(); }
  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  void expect_done() const;

 private:
  ByteView data_;
  std::size_t pos_ = 0;
};

}  // namespace swarmauth
