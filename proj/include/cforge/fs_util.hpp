#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace cforge::fs {

std::string read_file(const std::filesystem::path &path);

// Writes to a sibling temp file, then renames over `path`. Creates parent dirs.
void atomic_write(const std::filesystem::path &path, std::string_view contents);

} // namespace cforge::fs
