#include "factcheck/ingest/robots.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace factcheck::ingest {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Product token: "Foo-Bot/1.2 (+http://...)" -> "foo-bot"
std::string product_token(std::string_view agent) {
  const auto end = agent.find_first_of("/ ");
  return lower(trim(agent.substr(0, end)));
}

bool match_from(std::string_view pattern, std::string_view path) {
  // Iterative wildcard match with backtracking over the last '*'.
  std::size_t p = 0, s = 0;
  std::size_t star = std::string_view::npos, star_s = 0;
  while (true) {
    if (p < pattern.size() && pattern[p] == '$' && p + 1 == pattern.size()) {
      if (s == path.size()) return true;
    } else if (p == pattern.size()) {
      return true;  // prefix match
    } else if (pattern[p] == '*') {
      star = p++;
      star_s = s;
      continue;
    } else if (s < path.size() && pattern[p] == path[s]) {
      ++p, ++s;
      continue;
    }
    if (star == std::string_view::npos || star_s >= path.size()) return false;
    p = star + 1;
    s = ++star_s;
  }
}

}  // namespace

bool robots_pattern_matches(std::string_view pattern, std::string_view path) {
  return match_from(pattern, path);
}

RobotsRules RobotsRules::disallow_all() {
  RobotsRules r;
  r.rules_.push_back({"/", false});
  return r;
}

RobotsRules RobotsRules::parse(std::string_view robots_txt, std::string_view user_agent) {
  const std::string me = product_token(user_agent);

  struct Group {
    std::vector<std::string> agents;
    std::vector<Rule> rules;
  };
  std::vector<Group> groups;
  bool last_was_agent = false;

  std::istringstream in{std::string(robots_txt)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) continue;
    const std::string key = lower(trim(line.substr(0, colon)));
    const std::string_view value = trim(line.substr(colon + 1));

    if (key == "user-agent") {
      if (!last_was_agent || groups.empty()) groups.emplace_back();
      groups.back().agents.push_back(product_token(value).empty() ? lower(value) : product_token(value));
      last_was_agent = true;
    } else if (key == "allow" || key == "disallow") {
      last_was_agent = false;
      if (groups.empty() || value.empty()) continue;
      groups.back().rules.push_back({std::string(value), key == "allow"});
    } else {
      last_was_agent = false;
    }
  }

  RobotsRules specific, wildcard;
  bool have_specific = false;
  for (const auto& g : groups) {
    for (const auto& agent : g.agents) {
      if (!me.empty() && agent == me) {
        have_specific = true;
        specific.rules_.insert(specific.rules_.end(), g.rules.begin(), g.rules.end());
        break;
      }
      if (agent == "*") {
        wildcard.rules_.insert(wildcard.rules_.end(), g.rules.begin(), g.rules.end());
        break;
      }
    }
  }
  return have_specific ? specific : wildcard;
}

bool RobotsRules::allowed(std::string_view path) const {
  if (path == "/robots.txt") return true;
  std::size_t best_len = 0;
  bool verdict = true;
  bool any = false;
  for (const auto& rule : rules_) {
    if (!robots_pattern_matches(rule.pattern, path)) continue;
    const std::size_t len = rule.pattern.size();
    if (!any || len > best_len || (len == best_len && rule.allow && !verdict)) {
      best_len = len;
      verdict = rule.allow;
      any = true;
    }
  }
  return verdict;
}

}  // namespace factcheck::ingest
