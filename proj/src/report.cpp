#include "dequant/report.hpp"

#include <algorithm>
#include <sstream>

namespace dequant::cli {

using nlohmann::ordered_json;

namespace {

std::string join_key(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

ordered_json envelope(const Report& r) {
  ordered_json j = ordered_json::object();
  j["command"] = r.command;
  j["exit_code"] = r.exit_code;
  j["result"] = r.payload;
  return j;
}

}  // namespace

std::vector<std::pair<std::string, std::string>> flatten(const ordered_json& j,
                                                         const std::string& prefix) {
  std::vector<std::pair<std::string, std::string>> out;
  if (j.is_object()) {
    if (j.empty()) out.emplace_back(prefix, "{}");
    for (const auto& [k, v] : j.items()) {
      auto sub = flatten(v, join_key(prefix, k));
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else if (j.is_array()) {
    if (j.empty()) out.emplace_back(prefix, "[]");
    for (std::size_t i = 0; i < j.size(); ++i) {
      auto sub = flatten(j[i], join_key(prefix, std::to_string(i)));
      out.insert(out.end(), sub.begin(), sub.end());
    }
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
  return out;
}

std::string Report::render() const { return format == Format::Json ? render_json() : render_text(); }

std::string Report::render_text() const {
  if (!preformatted.empty()) return preformatted;
  const auto rows = flatten(envelope(*this));
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::ostringstream os;
  for (const auto& [key, value] : rows) {
    os << key << std::string(width - key.size() + 2, ' ') << value << '\n';
  }
  return os.str();
}

std::string Report::render_json() const { return envelope(*this).dump(2) + "\n"; }

}  // namespace dequant::cli
