#include "swarmauth/bytes.hpp"

#include "swarmauth/error.hpp"

namespace swarmauth {

void put_be(Bytes& out, std::uint64_t value, std::size_t width) {
  for (std::size_t i = width; i-- > 0;) {
    out.push_back(static_cast<std::uint8_t>(i >= 8 ? 0 : value >> (8 * i)));
  }
}

void put_bytes(Bytes& out, ByteView data) {
  out.insert(out.end(), data.begin(), data.end());
}

void put_prefixed(Bytes& out, ByteView data) {
  put_be(out, data.size(), 4);
  put_bytes(out, data);
}

std::string to_hex(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string s;
  s.reserve(data.size() * 2);
  for (auto b : data) {
    s.push_back(kDigits[b >> 4]);
    s.push_back(kDigits[b & 0xf]);
  }
  return s;
}

std::uint64_t ByteReader::be(std::size_t width) {
  auto raw = take(width);
  std::uint64_t v = 0;
  for (auto b : raw) {
    if (v >> 56) throw Error(Errc::kDecodeError, "integer overflow");
    v = (v << 8) | b;
  }
  return v;
}

ByteView ByteReader::take(std::size_t n) {
  if (n > remaining()) throw Error(Errc::kDecodeError, "truncated input");
  auto out = data_.subspan(pos_, n);
  pos_ += n;
  return out;
}

ByteView ByteReader::prefixed() {
  auto n = be(4);
  return take(static_cast<std::size_t>(n));
}

void ByteReader::expect_done() const {
  if (!done()) throw Error(Errc::kDecodeError, "trailing bytes");
}

}  // namespace swarmauth
