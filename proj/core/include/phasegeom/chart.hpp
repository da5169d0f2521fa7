#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace phasegeom {

/// Coordinate chart of an even-dimensional phase space.
/// Holds the ordered coordinate names; expressions refer to coordinates
/// by index into this chart, plus the distinguished time symbol t.
class Chart {
 public:
  Chart() = default;
  /// Throws std::invalid_argument unless names are distinct, nonempty,
  /// and the count is even and >= 2.
  explicit Chart(std::vector<std::string> names, bool includes_time = true);

  int dimension() const { return static_cast<int>(names_.size()); }
  int half_dimension() const { return dimension() / 2; }
  bool includes_time() const { return includes_time_; }

  const std::string& name(int a) const { return names_.at(static_cast<size_t>(a)); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<int> index_of(std::string_view name) const;

 private:
  std::vector<std::string> names_;
  bool includes_time_ = true;
};

}  // namespace phasegeom
