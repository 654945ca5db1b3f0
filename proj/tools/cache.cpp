#include "cache.hpp"

#include <openssl/sha.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "mbl/errors.hpp"
#include "mbl/io.hpp"

namespace fs = std::filesystem;

namespace mbl {

namespace {
constexpr const char* kFormat = "chartab-v1";
}

std::string sha256_hex(const std::string& data) {
  unsigned char md[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(data.data()), data.size(), md);
  std::string out;
  char buf[3];
  for (unsigned char c : md) {
    std::snprintf(buf, sizeof buf, "%02x", c);
    out += buf;
  }
  return out;
}

std::string cache_root() {
  if (const char* c = std::getenv("MBL_CACHE"); c && *c) return c;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return std::string(x) + "/mbl";
  if (const char* h = std::getenv("HOME"); h && *h) return std::string(h) + "/.cache/mbl";
  return ".mbl-cache";
}

std::shared_ptr<const CharacterTable> cached_character_table(const PermGroup& g, const std::string& file_bytes) {
  const fs::path dir = cache_root();
  const fs::path file = dir / (std::string(kFormat) + "-" + sha256_hex(file_bytes) + ".json");
  std::error_code ec;
  if (fs::exists(file, ec)) {
    try {
      return std::make_shared<const CharacterTable>(table_from_json(g, parse_json(read_file(file.string()), file.string())));
    } catch (const Error&) {
      // fall through and recompute
    }
  }
  auto t = std::make_shared<const CharacterTable>(character_table(g));
  fs::create_directories(dir, ec);
  if (!ec) {
    // Write then rename so concurrent runs never see a partial entry.
    const fs::path tmp = file.string() + ".tmp" + std::to_string(reinterpret_cast<std::uintptr_t>(t.get()));
    {
      std::ofstream out(tmp, std::ios::binary);
      out << to_json(*t).dump();
    }
    fs::rename(tmp, file, ec);
    if (ec) fs::remove(tmp, ec);
  }
  return t;
}

}  // namespace mbl
