#include "qdilog/seed_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qdilog/errors.hpp"

namespace qdilog {

using nlohmann::json;

SeedSpec builtin_seed(const std::string& name) {
  const ExchangeMatrix a2({{0, -1}, {1, 0}});
  if (name == "A1") return {name, ExchangeMatrix(std::vector<std::vector<int>>{{0}}), {{0, 0}, {0}}};
  if (name == "A2") return {name, a2, {{0, 1, 0, 1, 0}, {1, 0}}};
  if (name == "A2-principal") {
    const MutationSchedule s{{0, 1, 0, 1, 0}, {1, 0}};
    return {name, principal_extension(a2), s.extended(4)};
  }
  throw SpecParseError("unknown builtin seed '" + name + "' (expected A1, A2, A2-principal)");
}

SeedSpec parse_seed_json(const std::string& text, const std::string& name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SpecParseError(std::string("seed JSON: ") + e.what());
  }
  try {
    const auto n = j.at("n").get<std::size_t>();
    const auto rows = j.at("B").get<std::vector<std::vector<int>>>();
    if (rows.size() != n) throw SpecParseError("seed JSON: B has " + std::to_string(rows.size()) + " rows, n = " + std::to_string(n));
    SeedSpec s{name, ExchangeMatrix(rows), {}};
    for (int k : j.value("sequence", std::vector<int>{})) {
      if (k < 1 || static_cast<std::size_t>(k) > n) throw SpecParseError("seed JSON: sequence entry " + std::to_string(k) + " out of range");
      s.schedule.sequence.push_back(static_cast<std::size_t>(k - 1));
    }
    if (j.contains("nu")) {
      for (int v : j.at("nu").get<std::vector<int>>()) {
        if (v < 1 || static_cast<std::size_t>(v) > n) throw SpecParseError("seed JSON: nu entry " + std::to_string(v) + " out of range");
        s.schedule.nu.push_back(static_cast<std::size_t>(v - 1));
      }
    } else {
      s.schedule.nu = identity_permutation(n);
    }
    s.schedule.validate(n);
    return s;
  } catch (const SpecParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw SpecParseError(std::string("seed JSON: ") + e.what());
  }
}

SeedSpec load_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecParseError("cannot open seed file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_seed_json(ss.str(), path);
}

std::string seed_to_json(const SeedSpec& seed) {
  json j;
  j["n"] = seed.matrix.rank();
  j["B"] = seed.matrix.rows();
  std::vector<std::size_t> seq, nu;
  for (auto k : seed.schedule.sequence) seq.push_back(k + 1);
  for (auto v : seed.schedule.nu) nu.push_back(v + 1);
  j["sequence"] = seq;
  j["nu"] = nu;
  return j.dump();
}

}  // namespace qdilog
