#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace koszul {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::string_view data);

/// Digest over the tool version, the exact input bytes, the command and the
/// canonical option text.
std::string cache_key(std::string_view version, std::string_view input, std::string_view command,
                      std::string_view options);

struct CacheEntry {
  int exit_code = 0;
  std::string payload;
};

/// On-disk result store. Each entry is `<key>.cache`: a first line
/// `sha256:<hex>` over the remainder, then `exit:<code>`, then the payload.
/// Entries whose digest does not match are ignored.
class ResultCache {
 public:
  /// An empty dir disables the cache. An unusable dir disables it with a warning.
  explicit ResultCache(std::string dir);

  bool enabled() const { return enabled_; }
  const std::string& dir() const { return dir_; }
  std::string path_for(const std::string& key) const;

  std::optional<CacheEntry> lookup(const std::string& key);
  /// Write-then-rename. Failures become warnings.
  void store(const std::string& key, const CacheEntry& entry);

  /// Warnings accumulated since the last call.
  std::vector<std::string> take_warnings();

 private:
  std::string dir_;
  bool enabled_ = false;
  std::vector<std::string> warnings_;
};

/// Writes `content` to `path` via a temporary file in the same directory and a
/// rename. Throws std::runtime_error on failure.
void write_atomic(const std::string& path, std::string_view content);

}  // namespace koszul
