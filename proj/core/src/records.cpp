#include "fauxgraph/records.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace fauxgraph {

std::string_view to_string(Platform platform) {
  switch (platform) {
    case Platform::kReddit:
      return "reddit";
    case Platform::kTwitter:
      return "twitter";
  }
  return "reddit";
}

std::optional<Platform> parse_platform(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "reddit") return Platform::kReddit;
  if (lower == "twitter") return Platform::kTwitter;
  return std::nullopt;
}

}  // namespace fauxgraph
