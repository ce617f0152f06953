#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ovl/cli.hpp"

#include <sstream>
#include <stdexcept>

using namespace ovl;

namespace {

std::string data(const std::string& name) { return std::string(OVL_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("discriminant") {
  std::ostringstream out;
  CHECK(cmd_discriminant(data("tx_k1.json"), out) == 0);
  CHECK(out.str().find("group: Z/6 x Z/3 (order 18)") != std::string::npos);
  CHECK(out.str().find("signature (2,1)") != std::string::npos);

  std::ostringstream a1;
  cmd_discriminant(data("a1.json"), a1);
  CHECK(a1.str().find("group: Z/2 (order 2)") != std::string::npos);
  CHECK(a1.str().find("q = 1/2") != std::string::npos);

  std::ostringstream ta3;
  cmd_discriminant(data("ta3_k2.json"), ta3);
  CHECK(ta3.str().find("group: Z/36 x Z/3 x Z/3 (order 324)") != std::string::npos);

  std::ostringstream bad;
  CHECK_THROWS_AS(cmd_discriminant(data("missing.json"), bad), std::invalid_argument);
}

TEST_CASE("overlattices") {
  std::ostringstream out;
  CHECK(cmd_overlattices(data("ta3_k2.json"), 3, data("tx_k2.json"), out) == 0);
  const std::string s = out.str();
  CHECK(s.find("13 subgroups of order 3, 1 isotropic") != std::string::npos);
  CHECK(s.find("H = <(0,0,1/3)>  isotropic") != std::string::npos);
  CHECK(s.find("same genus as target: yes") != std::string::npos);
  CHECK(s.find("H = <(0,1/3,0)>  rejected, q = 2/3") != std::string::npos);

  std::ostringstream none;
  cmd_overlattices(data("ta3_k2.json"), 5, std::nullopt, none);
  CHECK(none.str().rfind("0 subgroups of order 5, 0 isotropic", 0) == 0);
}

TEST_CASE("kummer table") {
  std::ostringstream tsv;
  CHECK(cmd_kummer_table(1, 9, "tsv", tsv) == 0);
  std::istringstream in(tsv.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "k\tn_over\twitnesses");
  std::vector<int> counts;
  while (std::getline(in, line)) counts.push_back(std::stoi(line.substr(line.find('\t') + 1)));
  CHECK(counts == std::vector<int>{1, 1, 1, 1, 1, 2, 1, 1, 3});

  std::ostringstream empty;
  cmd_kummer_table(5, 4, "tsv", empty);
  CHECK(empty.str() == "k\tn_over\twitnesses\n");

  std::ostringstream k54;
  cmd_kummer_table(54, 54, "tsv", k54);
  CHECK(k54.str().find("54\t3\t") != std::string::npos);

  std::ostringstream text;
  cmd_kummer_table(6, 6, "text", text);
  CHECK(text.str().find("(0,0,1/3) (1/3,0,0)") != std::string::npos);

  std::ostringstream bad;
  CHECK_THROWS_AS(cmd_kummer_table(1, 2, "xml", bad), std::invalid_argument);
}

TEST_CASE("verify") {
  for (std::int64_t k : {6, 9}) {
    std::ostringstream out;
    CHECK(cmd_verify(k, 2, out) == 0);
    CHECK(out.str().find("FAIL") == std::string::npos);
  }
  std::ostringstream out7;
  CHECK(cmd_verify(7, 2, out7) == 0);
  CHECK(out7.str().find("N/A") != std::string::npos);
  CHECK(out7.str().find(" 0 failed") != std::string::npos);
}
