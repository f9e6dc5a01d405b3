// commands.hpp
// Subcommand dispatch for the dequantlab tool.

#pragma once

#include <string>
#include <vector>

#include "dequant/report.hpp"

namespace dequant::cli {

// `args` excludes the program name. Never throws for bad input; usage and
// domain errors come back as reports with the matching exit code.
Report run(const std::vector<std::string>& args);

}  // namespace dequant::cli
