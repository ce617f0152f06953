#include "ovl/lattice_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ovl {

IntegralLattice parse_lattice(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("lattice file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rank") || !j.contains("gram"))
    throw std::invalid_argument("lattice file: expected an object with \"rank\" and \"gram\"");
  if (!j["rank"].is_number_integer()) throw std::invalid_argument("lattice file: rank must be an integer");
  const auto n = j["rank"].get<std::int64_t>();
  const auto& rows = j["gram"];
  if (n < 1 || !rows.is_array() || static_cast<std::int64_t>(rows.size()) != n)
    throw std::invalid_argument("lattice file: gram does not have rank rows");

  IntMatrix g(n, n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != n)
      throw std::invalid_argument("lattice file: row " + std::to_string(i + 1) + " does not have rank entries");
    for (std::int64_t c = 0; c < n; ++c) {
      const auto& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number_integer()) throw std::invalid_argument("lattice file: gram entries must be integers");
      g(i, c) = v.get<std::int64_t>();
    }
  }
  if (!is_symmetric(g)) throw std::invalid_argument("lattice file: gram matrix not symmetric");
  return IntegralLattice(g);
}

IntegralLattice load_lattice(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_lattice(ss.str());
}

std::string dump_lattice(const IntegralLattice& l) {
  nlohmann::json j;
  j["rank"] = l.rank();
  j["gram"] = nlohmann::json::array();
  for (Eigen::Index i = 0; i < l.rank(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index c = 0; c < l.rank(); ++c) row.push_back(to_int64(l.gram()(i, c)));
    j["gram"].push_back(row);
  }
  return j.dump() + "\n";
}

}  // namespace ovl
