// report.hpp
// Command results as an ordered JSON payload with two renderings: aligned
// "key  value" lines (nested keys flattened with dots, array elements by
// index) and a single JSON object.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace dequant::cli {

enum class Format { Text, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kPromise = 1;  // promise violated, or entangled where separable was required
inline constexpr int kUsage = 2;
}  // namespace exit_code

struct Report {
  std::string command;  // echo of the invocation
  nlohmann::ordered_json payload = nlohmann::ordered_json::object();
  Format format = Format::Text;
  int exit_code = exit_code::kOk;
  std::string preformatted;  // help text; replaces the text rendering when set

  std::string render() const;
  std::string render_text() const;
  std::string render_json() const;
};

// Flattens a JSON value into (dotted key, rendered scalar) pairs in order.
// Strings render bare; every other scalar renders as its JSON text.
std::vector<std::pair<std::string, std::string>> flatten(const nlohmann::ordered_json& j,
                                                         const std::string& prefix = "");

}  // namespace dequant::cli
