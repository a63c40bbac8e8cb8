#include "dtmpade/profile.hpp"

#include <charconv>
#include <cmath>

namespace dtmpade {

std::vector<double> make_grid(double start, double end, double step) {
  if (!std::isfinite(start) || !std::isfinite(end) || !std::isfinite(step)) {
    throw PreconditionError("grid bounds must be finite");
  }
  if (!(step > 0.0)) throw PreconditionError("grid step must be positive");
  if (end < start) throw PreconditionError("grid end lies before its start");
  // The regular point nearest `end` is replaced by `end` itself.
  auto n = static_cast<long>(std::floor((end - start) / step + 0.5));
  if (n == 0 && end > start) n = 1;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (long i = 0; i < n; ++i) grid.push_back(start + static_cast<double>(i) * step);
  grid.push_back(end);
  return grid;
}

std::vector<double> parse_grid(std::string_view text) {
  double parts[3];
  std::size_t pos = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t stop = i < 2 ? text.find(':', pos) : text.size();
    if (stop == std::string_view::npos) throw PreconditionError("grid must be written start:end:step");
    const std::string_view field = text.substr(pos, stop - pos);
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), parts[i]);
    if (ec != std::errc{} || ptr != field.data() + field.size() || field.empty()) {
      throw PreconditionError("cannot parse grid field '" + std::string(field) + "'");
    }
    pos = stop + 1;
  }
  return make_grid(parts[0], parts[1], parts[2]);
}

}  // namespace dtmpade
