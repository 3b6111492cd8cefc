#include <openssl/evp.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <unistd.h>

#include "qform/cli.hpp"

namespace qform {

namespace fs = std::filesystem;

std::string Cache::key(const std::string& material) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(material.data(), material.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

std::optional<Json> Cache::get(const std::string& key) const {
  if (!enabled()) return std::nullopt;
  std::ifstream in(fs::path(dir_) / (key + ".json"));
  if (!in) return std::nullopt;
  try {
    Json j = Json::parse(in);
    if (!j.is_object() || !j.contains("key") || j["key"] != key || !j.contains("value")) return std::nullopt;
    return j["value"];
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

void Cache::put(const std::string& key, const Json& value) const {
  if (!enabled()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec) return;  // the cache is advisory
  const fs::path final_path = fs::path(dir_) / (key + ".json");
  const fs::path tmp = fs::path(dir_) / (key + ".tmp." + std::to_string(::getpid()) + "." +
                                         std::to_string(std::random_device{}()));
  {
    std::ofstream out(tmp);
    if (!out) return;
    Json doc;
    doc["key"] = key;
    doc["value"] = value;
    out << doc.dump();
    if (!out) {
      fs::remove(tmp, ec);
      return;
    }
  }
  fs::rename(tmp, final_path, ec);
  if (ec) fs::remove(tmp, ec);
}

}  // namespace qform
