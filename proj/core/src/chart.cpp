#include "phasegeom/chart.hpp"

#include <stdexcept>
#include <unordered_set>

namespace phasegeom {

Chart::Chart(std::vector<std::string> names, bool includes_time)
    : names_(std::move(names)), includes_time_(includes_time) {
  if (names_.size() < 2 || names_.size() % 2 != 0) {
    throw std::invalid_argument("Chart: dimension must be even and >= 2, got " +
                                std::to_string(names_.size()));
  }
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw std::invalid_argument("Chart: empty coordinate name");
    if (n == "t") throw std::invalid_argument("Chart: 't' is reserved for time");
    if (!seen.insert(n).second) {
      throw std::invalid_argument("Chart: duplicate coordinate name '" + n + "'");
    }
  }
}

std::optional<int> Chart::index_of(std::string_view name) const {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

}  // namespace phasegeom
