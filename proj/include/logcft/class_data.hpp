#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "logcft/galois.hpp"

namespace logcft {

struct ClassData {
  std::uint64_t class_number_K = 1;
  std::uint64_t class_star_vs_augmentation = 1;
  std::string provenance;
};

struct ClassDataRecord {
  std::int64_t modulus = 1;
  std::vector<std::int64_t> subgroup;
  std::int64_t ell = 2;
  std::optional<std::vector<std::int64_t>> quadratic;
  ClassData data;
};

// Blocks of `key = value` lines separated by blank lines; '#' starts a comment.
std::vector<ClassDataRecord> parse_class_data(std::istream& in);
std::vector<ClassDataRecord> load_class_data(const std::string& path);
const std::vector<ClassDataRecord>& bundled_class_data();
const char* bundled_class_data_text();

// Record describing the same field as ext.
std::optional<ClassData> find_class_data(const std::vector<ClassDataRecord>& records, const AbelianExtension& ext);

}  // namespace logcft
