#include <doctest.h>

#include <clocale>
#include <cmath>
#include <limits>

#include "magres/errors.hpp"
#include "magres/report.hpp"

using namespace magres;

TEST_CASE("doubles: 15 significant digits in scientific notation") {
  CHECK(format_double(1.0) == "1.00000000000000e+00");
  CHECK(format_double(-0.000123456789012345678) == "-1.23456789012346e-04");
  CHECK(format_double(6.02214076e23) == "6.02214076000000e+23");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("formatting ignores the C locale") {
  const char* old = std::setlocale(LC_NUMERIC, nullptr);
  const std::string saved = old ? old : "C";
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) CHECK(format_double(0.5) == "5.00000000000000e-01");
  std::setlocale(LC_NUMERIC, saved.c_str());
}

TEST_CASE("csv layout") {
  Table t;
  t.columns = {"k", "x", "label"};
  t.preamble = {"run"};
  t.trailer = {"done"};
  t.add_row({std::int64_t{3}, 0.25, std::string("a,b")});
  CHECK(t.to_csv() == "# run\nk,x,label\n3,2.50000000000000e-01,\"a,b\"\n# done\n");
  CHECK_THROWS_AS(t.add_row({std::int64_t{1}}), Error);
  const auto j = t.to_json();
  CHECK(j.find("\"columns\"") != std::string::npos);
  CHECK(j.find("0.25") != std::string::npos);
}

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}
