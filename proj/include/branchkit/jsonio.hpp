#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>

#include "json.hpp"

namespace branchkit {

using ordered_json = nlohmann::ordered_json;

inline std::string dump_json(const ordered_json& j) { return j.dump(2) + "\n"; }

// Write-to-temp-then-rename so readers never observe a half-written report.
inline void write_json_atomic(const std::string& path, const ordered_json& j) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path dir = target.parent_path();
  if (dir.empty()) dir = ".";
  fs::path tmp = dir / (target.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
    out << dump_json(j);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename failed: " + target.string() + ": " + ec.message());
  }
}

}  // namespace branchkit
