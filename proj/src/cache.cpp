#include "koszul/cache.hpp"

#include <openssl/evp.h>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <unistd.h>

namespace fs = std::filesystem;

namespace koszul {

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return os.str();
}

std::string cache_key(std::string_view version, std::string_view input, std::string_view command,
                      std::string_view options) {
  const std::string input_digest = sha256_hex(input);
  std::string buf;
  for (std::string_view part : {version, std::string_view(input_digest), command, options}) {
    buf += std::to_string(part.size());
    buf += ':';
    buf += part;
    buf += '\n';
  }
  return sha256_hex(buf);
}

void write_atomic(const std::string& path, std::string_view content) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("short write to " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw std::runtime_error("cannot rename onto " + target.string());
  }
}

ResultCache::ResultCache(std::string dir) : dir_(std::move(dir)) {
  if (dir_.empty()) return;
  std::error_code ec;
  fs::create_directories(dir_, ec);
  if (ec || !fs::is_directory(dir_, ec) || ::access(dir_.c_str(), W_OK) != 0) {
    warnings_.push_back("cache directory " + dir_ + " is not writable; running without a cache");
    return;
  }
  enabled_ = true;
}

std::string ResultCache::path_for(const std::string& key) const { return (fs::path(dir_) / (key + ".cache")).string(); }

std::optional<CacheEntry> ResultCache::lookup(const std::string& key) {
  if (!enabled_) return std::nullopt;
  std::ifstream in(path_for(key), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string all = ss.str();
  const std::size_t nl = all.find('\n');
  const std::string prefix = "sha256:";
  if (nl == std::string::npos || all.compare(0, prefix.size(), prefix) != 0) {
    warnings_.push_back("cache entry " + path_for(key) + " is malformed; recomputing");
    return std::nullopt;
  }
  const std::string body = all.substr(nl + 1);
  if (all.substr(prefix.size(), nl - prefix.size()) != sha256_hex(body)) {
    warnings_.push_back("cache entry " + path_for(key) + " failed its digest check; recomputing");
    return std::nullopt;
  }
  const std::size_t nl2 = body.find('\n');
  CacheEntry e;
  try {
    if (nl2 == std::string::npos || body.compare(0, 5, "exit:") != 0) throw std::invalid_argument("header");
    e.exit_code = std::stoi(body.substr(5, nl2 - 5));
  } catch (const std::exception&) {
    warnings_.push_back("cache entry " + path_for(key) + " is malformed; recomputing");
    return std::nullopt;
  }
  e.payload = body.substr(nl2 + 1);
  return e;
}

void ResultCache::store(const std::string& key, const CacheEntry& entry) {
  if (!enabled_) return;
  const std::string body = "exit:" + std::to_string(entry.exit_code) + "\n" + entry.payload;
  try {
    write_atomic(path_for(key), "sha256:" + sha256_hex(body) + "\n" + body);
  } catch (const std::exception& e) {
    warnings_.push_back(std::string("cache store failed: ") + e.what());
  }
}

std::vector<std::string> ResultCache::take_warnings() {
  std::vector<std::string> out;
  out.swap(warnings_);
  return out;
}

}  // namespace koszul
