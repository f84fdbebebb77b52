#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

namespace qps {

// QPSPEC_CACHE_DIR when set, otherwise $HOME/.cache/qpspec, otherwise
// ./.qpspec-cache. Created on demand.
std::filesystem::path cache_directory();

std::string sha256_hex(std::string_view bytes);

void write_gzip_file(const std::filesystem::path& path, std::string_view bytes);
// std::nullopt when the file is missing or not valid gzip.
std::optional<std::string> read_gzip_file(const std::filesystem::path& path);

}  // namespace qps
