// SPDX-License-Identifier: MIT
#include <sstream>

#include "json.hpp"
#include "upt/cli.hpp"
#include "upt/errors.hpp"

namespace upt::cli {

void Report::set(const std::string& key, const std::string& value) {
  for (auto& [k, v] : fields)
    if (k == key) {
      v = value;
      return;
    }
  fields.emplace_back(key, value);
}

std::optional<std::string> Report::get(const std::string& key) const {
  for (const auto& [k, v] : fields)
    if (k == key) return v;
  return std::nullopt;
}

std::string to_text(const Report& r) {
  std::string out;
  for (const auto& [k, v] : r.fields) out += k + ": " + v + "\n";
  return out;
}

std::string to_json(const Report& r) {
  // Keys keep their order.
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.fields) j[k] = v;
  return j.dump() + "\n";
}

std::vector<Report> parse_reports(const std::string& text) {
  std::vector<Report> out;
  std::istringstream in(text);
  Report cur;
  int number = 0;
  auto flush = [&] {
    if (!cur.fields.empty()) out.push_back(std::move(cur));
    cur = Report{};
  };
  for (std::string line; std::getline(in, line);) {
    ++number;
    if (line.empty()) {
      flush();
      continue;
    }
    if (line.front() == '{') {
      flush();
      nlohmann::ordered_json j;
      try {
        j = nlohmann::ordered_json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw ParseError(number, e.what());
      }
      Report r;
      for (const auto& [k, v] : j.items()) r.fields.emplace_back(k, v.get<std::string>());
      out.push_back(std::move(r));
      continue;
    }
    const auto colon = line.find(": ");
    if (colon == std::string::npos) throw ParseError(number, "expected \"key: value\"");
    cur.fields.emplace_back(line.substr(0, colon), line.substr(colon + 2));
  }
  flush();
  return out;
}

}  // namespace upt::cli
