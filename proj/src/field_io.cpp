#include "frac/field_io.hpp"

#include "frac/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace frac {

namespace {

template <class T>
void put(std::string& out, T v) {
  char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  out.append(b, sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw PreconditionError("field file is truncated");
  char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(b, b + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

std::string serialize_field(const Field& field) {
  const GridSpec& g = field.grid();
  std::string out;
  out.reserve(32 + 16 * static_cast<std::size_t>(g.size()));
  out.append("FRSF", 4);
  put<std::uint32_t>(out, kFieldFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.dim()));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points()));
  put<double>(out, g.length());
  put<std::uint8_t>(out, static_cast<std::uint8_t>(field.representation()));
  out.append(7, '\0');
  for (Index i = 0; i < g.size(); ++i) {
    put<double>(out, field.data()[i].real());
    put<double>(out, field.data()[i].imag());
  }
  return out;
}

Field deserialize_field(const std::string& bytes) {
  if (bytes.size() < 32 || bytes.compare(0, 4, "FRSF") != 0) throw PreconditionError("not a field file");
  std::size_t pos = 4;
  const auto version = get<std::uint32_t>(bytes, pos);
  if (version != kFieldFormatVersion) throw PreconditionError("unsupported field file version");
  const auto n = get<std::uint32_t>(bytes, pos);
  const auto N = get<std::uint32_t>(bytes, pos);
  const auto L = get<double>(bytes, pos);
  const auto rep = get<std::uint8_t>(bytes, pos);
  if (rep > 1) throw PreconditionError("field file has an unknown representation");
  pos = 32;
  GridSpec g(static_cast<int>(n), static_cast<int>(N), L);
  if (bytes.size() != 32 + 16 * static_cast<std::size_t>(g.size()))
    throw PreconditionError("field file size does not match its header");
  ComplexArray data(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double re = get<double>(bytes, pos);
    const double im = get<double>(bytes, pos);
    data[i] = Complex(re, im);
  }
  return Field(g, static_cast<Representation>(rep), std::move(data));
}

void write_field(const std::string& path, const Field& field) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  const std::string bytes = serialize_field(field);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

Field read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw PreconditionError("field file not found: " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return deserialize_field(ss.str());
}

std::string blob_hash(const std::string& bytes) {
  const std::string header = "blob " + std::to_string(bytes.size()) + std::string(1, '\0');
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr);
  EVP_DigestUpdate(ctx, header.data(), header.size());
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace frac
