#include "qpspec/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include <openssl/evp.h>
#include <zlib.h>

namespace qps {

std::filesystem::path cache_directory() {
  std::filesystem::path dir;
  if (const char* env = std::getenv("QPSPEC_CACHE_DIR"); env != nullptr && *env != '\0') {
    dir = env;
  } else if (const char* home = std::getenv("HOME"); home != nullptr && *home != '\0') {
    dir = std::filesystem::path(home) / ".cache" / "qpspec";
  } else {
    dir = std::filesystem::path(".qpspec-cache");
  }
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);  // leave failures to the caller's open()
  return dir;
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256_hex: digest failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 0xf]);
  }
  return out;
}

void write_gzip_file(const std::filesystem::path& path, std::string_view bytes) {
  // write to a sibling temp file, then rename, so concurrent readers never
  // observe a half-written entry
  const std::filesystem::path tmp = path.string() + ".tmp";
  gzFile gz = gzopen(tmp.string().c_str(), "wb");
  if (gz == nullptr) throw std::runtime_error("write_gzip_file: cannot open " + tmp.string());
  std::size_t off = 0;
  bool ok = true;
  while (ok && off < bytes.size()) {
    const auto chunk = static_cast<unsigned>(std::min<std::size_t>(bytes.size() - off, 1u << 20));
    ok = gzwrite(gz, bytes.data() + off, chunk) == static_cast<int>(chunk);
    off += chunk;
  }
  ok = gzclose(gz) == Z_OK && ok;
  if (!ok) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw std::runtime_error("write_gzip_file: write failed for " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<std::string> read_gzip_file(const std::filesystem::path& path) {
  gzFile gz = gzopen(path.string().c_str(), "rb");
  if (gz == nullptr) return std::nullopt;
  std::string out;
  std::vector<char> buf(1 << 20);
  for (;;) {
    const int got = gzread(gz, buf.data(), static_cast<unsigned>(buf.size()));
    if (got < 0) {
      gzclose(gz);
      return std::nullopt;
    }
    out.append(buf.data(), static_cast<std::size_t>(got));
    if (got < static_cast<int>(buf.size())) break;
  }
  if (gzclose(gz) != Z_OK) return std::nullopt;
  return out;
}

}  // namespace qps
