#ifndef ICTHP_BINARY_IO_HPP_
#define ICTHP_BINARY_IO_HPP_

#include <bit>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>

#include "icthp/core.hpp"

// Explicit little-endian scalar IO so on-disk formats are bit-exact on any
// host.

namespace icthp::binio {

inline void write_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

inline void write_u64(std::ostream& out, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

inline void write_f32(std::ostream& out, float v) {
  write_u32(out, std::bit_cast<std::uint32_t>(v));
}

inline void write_f64(std::ostream& out, double v) {
  write_u64(out, std::bit_cast<std::uint64_t>(v));
}

inline std::uint32_t read_u32(std::istream& in, const char* what) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) {
    throw Error(ErrorCode::BadFormat, std::string("truncated while reading ") + what);
  }
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline std::uint64_t read_u64(std::istream& in, const char* what) {
  unsigned char b[8];
  if (!in.read(reinterpret_cast<char*>(b), 8)) {
    throw Error(ErrorCode::BadFormat, std::string("truncated while reading ") + what);
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

inline float read_f32(std::istream& in, const char* what) {
  return std::bit_cast<float>(read_u32(in, what));
}

inline double read_f64(std::istream& in, const char* what) {
  return std::bit_cast<double>(read_u64(in, what));
}

}  // namespace icthp::binio

#endif  // ICTHP_BINARY_IO_HPP_
