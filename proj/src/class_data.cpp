#include "logcft/class_data.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "logcft/arith.hpp"
#include "logcft/errors.hpp"

namespace logcft {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::int64_t> int_list(const std::string& v, const std::string& key) {
  std::vector<std::int64_t> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stoll(item, &pos));
      if (pos != item.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("class data: bad integer '" + item + "' for key " + key);
    }
  }
  return out;
}

std::uint64_t positive(const std::string& v, const std::string& key) {
  auto xs = int_list(v, key);
  if (xs.size() != 1 || xs[0] <= 0) throw InputError("class data: " + key + " must be a positive integer");
  return static_cast<std::uint64_t>(xs[0]);
}

ClassDataRecord finish(const std::map<std::string, std::string>& kv, int line) {
  ClassDataRecord r;
  auto need = [&](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end())
      throw InputError("class data record ending at line " + std::to_string(line) + " lacks '" + key + "'");
    return it->second;
  };
  r.ell = static_cast<std::int64_t>(positive(need("ell"), "ell"));
  if (!arith::is_prime(r.ell)) throw InputError("class data: ell must be a prime");
  if (kv.count("quad")) {
    r.quadratic = int_list(kv.at("quad"), "quad");
  } else {
    r.modulus = static_cast<std::int64_t>(positive(need("modulus"), "modulus"));
    if (kv.count("subgroup")) r.subgroup = int_list(kv.at("subgroup"), "subgroup");
  }
  r.data.class_number_K = positive(need("class_number_K"), "class_number_K");
  r.data.class_star_vs_augmentation = positive(need("class_star_vs_augmentation"), "class_star_vs_augmentation");
  for (std::uint64_t v : {r.data.class_number_K, r.data.class_star_vs_augmentation}) {
    std::uint64_t x = v;
    while (x % static_cast<std::uint64_t>(r.ell) == 0) x /= static_cast<std::uint64_t>(r.ell);
    if (x != 1) throw InputError("class data: " + std::to_string(v) + " is not a power of l = " + std::to_string(r.ell));
  }
  r.data.provenance = need("provenance");
  if (r.data.provenance.empty()) throw InputError("class data: provenance must be nonempty");
  for (auto& [k, v] : kv) {
    static const char* known[] = {"ell", "quad", "modulus", "subgroup", "class_number_K",
                                  "class_star_vs_augmentation", "provenance"};
    bool ok = false;
    for (const char* n : known) ok = ok || k == n;
    if (!ok) throw InputError("class data: unknown key '" + k + "'");
  }
  return r;
}

}  // namespace

std::vector<ClassDataRecord> parse_class_data(std::istream& in) {
  std::vector<ClassDataRecord> out;
  std::map<std::string, std::string> kv;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string s = trim(raw.substr(0, raw.find('#')));
    if (s.empty()) {
      if (!kv.empty()) out.push_back(finish(kv, line));
      kv.clear();
      continue;
    }
    auto eq = s.find('=');
    if (eq == std::string::npos) throw InputError("class data line " + std::to_string(line) + ": expected key = value");
    std::string key = trim(s.substr(0, eq));
    if (kv.count(key)) throw InputError("class data line " + std::to_string(line) + ": duplicate key " + key);
    kv[key] = trim(s.substr(eq + 1));
  }
  if (!kv.empty()) out.push_back(finish(kv, line));
  return out;
}

std::vector<ClassDataRecord> load_class_data(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InputError("cannot read class data file '" + path + "'");
  return parse_class_data(f);
}

const char* bundled_class_data_text() {
  return
#include "bundled_class_data.inc"
      ;
}

const std::vector<ClassDataRecord>& bundled_class_data() {
  static const std::vector<ClassDataRecord> records = [] {
    std::istringstream in(bundled_class_data_text());
    return parse_class_data(in);
  }();
  return records;
}

std::optional<ClassData> find_class_data(const std::vector<ClassDataRecord>& records, const AbelianExtension& ext) {
  for (const auto& r : records) {
    if (r.ell != ext.ell()) continue;
    std::optional<AbelianExtension> cand;
    if (r.quadratic) {
      cand = AbelianExtension::from_quadratic_generators(*r.quadratic);
    } else {
      for (bool inf : {false, true}) {
        try {
          cand = AbelianExtension::from_character_data(r.modulus, r.subgroup, r.ell, inf);
          break;
        } catch (const InvalidExtension&) {
        }
      }
      if (!cand) throw InputError("class data record for modulus " + std::to_string(r.modulus) + " is invalid");
    }
    if (same_field(*cand, ext)) return r.data;
  }
  return std::nullopt;
}

}  // namespace logcft
