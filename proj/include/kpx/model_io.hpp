#pragma once

// Versioned binary model container. Layout (all integers and floats
// little-endian; floats are IEEE-754 binary64):
//
//   "KPXMODEL"            8-byte magic
//   u32 version           currently 1
//   config block          architecture, scheme, loss, hyperparameters
//   feature block         flags, window, three optional tag inventories
//   history block         per-epoch loss and validation metrics
//   tensor block          name, rows, cols, values in declaration order
//   "ENDMODEL"            8-byte trailer

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "kpx/model.hpp"

namespace kpx {

inline constexpr std::uint32_t kModelFormatVersion = 1;

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ModelVersionError : public ModelFormatError {
 public:
  explicit ModelVersionError(std::uint32_t found);
  std::uint32_t found() const { return found_; }

 private:
  std::uint32_t found_;
};

class CorruptModelError : public ModelFormatError {
 public:
  using ModelFormatError::ModelFormatError;
};

void write_model(std::ostream& out, const Model& model);
Model read_model(std::istream& in);

void save_model(const Model& model, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace kpx
