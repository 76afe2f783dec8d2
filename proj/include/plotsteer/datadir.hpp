#pragma once
// Locates the repo data directory (templates, criteria catalog, task
// manifest, fiducial tables). Resolution order: explicit override,
// PLOTSTEER_DATA_DIR env var, compiled-in source-tree default.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "plotsteer/errors.hpp"

#ifndef PLOTSTEER_SOURCE_DATA_DIR
#define PLOTSTEER_SOURCE_DATA_DIR "data"
#endif

namespace plotsteer {

inline std::string& data_dir_override() {
    static std::string dir;
    return dir;
}

inline void set_data_dir(const std::string& dir) { data_dir_override() = dir; }

inline std::string data_dir() {
    if (!data_dir_override().empty()) return data_dir_override();
    if (const char* env = std::getenv("PLOTSTEER_DATA_DIR"); env && *env) return env;
    return PLOTSTEER_SOURCE_DATA_DIR;
}

inline std::string data_path(const std::string& relative) {
    return (std::filesystem::path(data_dir()) / relative).string();
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw WriteFailure(path);
    out << content;
    if (!out) throw WriteFailure(path);
}

} // namespace plotsteer
