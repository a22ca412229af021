#pragma once

#include <string>
#include <string_view>

#include "burgers/solver.hpp"

namespace burgers {

// Plain-text problem format, one `key = value` assignment per line, with
// `#` comments. f, g and h are mandatory expressions (quotes optional);
// see the README for the full key list. Unknown keys are rejected and all
// diagnostics cite line numbers.
Problem parse_problem_text(std::string_view text, const std::string& origin = "<string>");
Problem load_problem_file(const std::string& path);

}  // namespace burgers
