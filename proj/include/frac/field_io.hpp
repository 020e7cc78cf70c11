#pragma once

#include "frac/grid.hpp"

#include <iosfwd>
#include <string>

namespace frac {

// Flat binary field files: a 32-byte header
//   "FRSF" | u32 version | u32 n | u32 N | f64 L | u8 representation | 7 pad
// followed by little-endian f64 (re, im) pairs in row-major order.

inline constexpr std::uint32_t kFieldFormatVersion = 1;

std::string serialize_field(const Field& field);
Field deserialize_field(const std::string& bytes);

void write_field(const std::string& path, const Field& field);
Field read_field(const std::string& path);

/// Git blob hash (SHA-1 of "blob <size>\0" + bytes), lowercase hex.
std::string blob_hash(const std::string& bytes);
inline std::string field_hash(const Field& field) { return blob_hash(serialize_field(field)); }

}  // namespace frac
