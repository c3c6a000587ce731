#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

namespace kpx::cli {

// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

// Records what produced a set of artifacts: command, resolved options, seed,
// input and output digests and the toolkit version. No timestamps or host
// details, so identical runs give identical manifests.
class Manifest {
 public:
  explicit Manifest(std::string_view command);

  nlohmann::ordered_json& options() { return doc_["options"]; }
  void set_seed(std::uint64_t seed) { doc_["seed"] = seed; }
  void add_input(std::string_view role, const std::filesystem::path& path);
  void add_output(const std::filesystem::path& path);

  std::string dump() const { return doc_.dump(2) + "\n"; }
  void write(const std::filesystem::path& path) const;

 private:
  nlohmann::ordered_json doc_;
};

// "<artifact>.manifest.json"
std::filesystem::path manifest_path(const std::filesystem::path& artifact);

}  // namespace kpx::cli
