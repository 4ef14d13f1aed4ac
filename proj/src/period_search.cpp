#include "qdilog/period_search.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace qdilog {

namespace {

using Key = std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>>;

Key key_of(const TropicalState& s) { return {s.matrix.rows(), s.cvectors}; }

struct Node {
  TropicalState state;
  std::vector<std::size_t> sequence;
};

}  // namespace

std::vector<MutationSchedule> find_periods(const ExchangeMatrix& b, std::size_t depth, const SearchLimits& limits) {
  const std::size_t n = b.rank();
  if (n == 0 || n > limits.max_rank) throw std::invalid_argument("period search needs 1 <= rank <= max_rank");
  if (depth > limits.max_depth) throw std::invalid_argument("period search depth exceeds max_depth");

  std::vector<MutationSchedule> found;
  std::set<Key> seen{key_of(TropicalState::initial(b))};
  std::vector<Node> frontier{{TropicalState::initial(b), {}}};
  for (std::size_t level = 0; level < depth && !frontier.empty(); ++level) {
    std::vector<Node> next;
    for (const Node& node : frontier) {
      for (std::size_t k = 0; k < n; ++k) {
        Node child{mutate_tropical(node.state, k), node.sequence};
        child.sequence.push_back(k);
        if (auto nu = matching_permutation(b, child.state)) {
          found.push_back({child.sequence, *nu});
          continue;
        }
        if (seen.insert(key_of(child.state)).second) next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return found;
}

}  // namespace qdilog
