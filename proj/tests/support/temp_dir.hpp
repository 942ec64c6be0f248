#pragma once

#include <filesystem>
#include <fstream>
#include <string>

namespace testutil {

/// Fresh scratch directory under the system temp root, wiped on creation.
inline std::filesystem::path make_temp_dir(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / ("dtnlab_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
}

inline std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

} // namespace testutil
