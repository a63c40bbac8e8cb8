#include "dtmpade/dtm.hpp"

namespace dtmpade {

std::string_view to_string(RecurrenceMode mode) {
  return mode == RecurrenceMode::PaperFidelity ? "paper" : "corrected";
}

std::string_view to_string(Problem problem) { return problem == Problem::Blasius ? "blasius" : "free-convection"; }

std::optional<RecurrenceMode> parse_mode(std::string_view text) {
  if (text == "corrected") return RecurrenceMode::Corrected;
  if (text == "paper") return RecurrenceMode::PaperFidelity;
  return std::nullopt;
}

std::optional<Problem> parse_problem(std::string_view text) {
  if (text == "free-convection") return Problem::FreeConvection;
  if (text == "blasius") return Problem::Blasius;
  return std::nullopt;
}

}  // namespace dtmpade
