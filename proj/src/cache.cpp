#include <fstream>
#include <iostream>

#include "dimred/harness.hpp"

namespace dimred {

std::optional<json> Cache::lookup(const std::string& key) const {
  if (!enabled_) return std::nullopt;
  const auto path = dir_ / (key + ".json");
  std::ifstream in(path);
  if (!in) return std::nullopt;
  try {
    json j = json::parse(in);
    return j;
  } catch (const std::exception& e) {
    std::cerr << "warning: corrupt cache entry " << path.string()
              << ", recomputing (" << e.what() << ")\n";
    return std::nullopt;
  }
}

void Cache::store(const std::string& key, const json& value) const {
  if (!enabled_) return;
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  const auto tmp = dir_ / (key + ".json.tmp");
  const auto final_path = dir_ / (key + ".json");
  {
    std::ofstream out(tmp);
    out << value.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, final_path, ec);
  if (ec)
    std::cerr << "warning: cache store failed for " << final_path.string()
              << "\n";
}

}  // namespace dimred
