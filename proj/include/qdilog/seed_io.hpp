#pragma once

// Seed specifications: built-in fixtures and JSON seed files.
// JSON form: {"n": int, "B": [[int]], "sequence": [int], "nu": [int]},
// 1-based, nu as the image list [ν(1), ..., ν(n)] (identity if absent).

#include <string>

#include "qdilog/exchange.hpp"

namespace qdilog {

struct SeedSpec {
  std::string name;
  ExchangeMatrix matrix;
  MutationSchedule schedule;  // 0-based
};

// "A1", "A2", "A2-principal". Throws SpecParseError for other names.
SeedSpec builtin_seed(const std::string& name);

// Throws SpecParseError on malformed input.
SeedSpec parse_seed_json(const std::string& text, const std::string& name = "file");
SeedSpec load_seed_file(const std::string& path);

std::string seed_to_json(const SeedSpec& seed);

}  // namespace qdilog
