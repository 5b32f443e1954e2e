#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "logcft/class_data.hpp"
#include "logcft/errors.hpp"

using namespace logcft;

namespace {

std::vector<ClassDataRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_class_data(in);
}

}  // namespace

TEST_CASE("bundled class data") {
  const auto& recs = bundled_class_data();
  REQUIRE(recs.size() == 2);
  auto l = AbelianExtension::from_quadratic_generators({-1, 7});
  auto cd = find_class_data(recs, l);
  REQUIRE(cd);
  CHECK(cd->class_star_vs_augmentation == 1);
  CHECK(cd->class_number_K == 1);
  CHECK_FALSE(cd->provenance.empty());
  // Same field given by character data: the squares mod 28.
  auto l2 = AbelianExtension::from_subgroup(28, {9, 25}, 2);
  REQUIRE(same_field(l2, l));
  CHECK(find_class_data(recs, l2));
  CHECK_FALSE(find_class_data(recs, AbelianExtension::from_quadratic_generators({7})));
  CHECK(std::string(bundled_class_data_text()).find("provenance") != std::string::npos);
}

TEST_CASE("parse_class_data") {
  auto recs = parse(
      "# comment\n"
      "ell = 3\n"
      "modulus = 7\n"
      "subgroup = 6\n"
      "class_number_K = 1\n"
      "class_star_vs_augmentation = 3  # trailing comment\n"
      "provenance = synthetic\n"
      "\n\n"
      "ell = 2\n"
      "quad = 5\n"
      "class_number_K = 1\n"
      "class_star_vs_augmentation = 1\n"
      "provenance = synthetic too\n");
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].modulus == 7);
  CHECK(recs[0].subgroup == std::vector<std::int64_t>{6});
  CHECK(recs[0].data.class_star_vs_augmentation == 3);
  CHECK(recs[0].data.provenance == "synthetic");
  CHECK(recs[1].quadratic == std::vector<std::int64_t>{5});
  CHECK(find_class_data(recs, AbelianExtension::from_subgroup(7, {6}, 3)));
  CHECK(parse("").empty());
}

TEST_CASE("malformed class data") {
  const std::string base = "ell = 2\nquad = 5\nclass_number_K = 1\nclass_star_vs_augmentation = 1\n";
  CHECK_THROWS_AS(parse(base), InputError);  // no provenance
  CHECK_THROWS_AS(parse(base + "provenance = x\ncolour = red\n"), InputError);
  CHECK_THROWS_AS(parse(base + "provenance = x\nell = 2\n"), InputError);
  CHECK_THROWS_AS(parse("ell = 2\nquad = 5\nclass_number_K = 3\nclass_star_vs_augmentation = 1\nprovenance = x\n"),
                  InputError);
  CHECK_THROWS_AS(parse("ell = 2\nclass_number_K = 1\nprovenance = x\n"), InputError);
  CHECK_THROWS_AS(parse("just words\nprovenance = x\n"), InputError);
  CHECK_THROWS_AS(load_class_data("/nonexistent/class_data.txt"), InputError);
}

TEST_CASE("load_class_data reads files") {
  std::string path = "class_data_test.tmp";
  {
    std::ofstream f(path);
    f << bundled_class_data_text();
  }
  auto recs = load_class_data(path);
  std::remove(path.c_str());
  CHECK(recs.size() == bundled_class_data().size());
}
