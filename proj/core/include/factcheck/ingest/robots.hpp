#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace factcheck::ingest {

/// Allow/Disallow rules of the robots.txt group that applies to one user agent.
class RobotsRules {
 public:
  struct Rule {
    std::string pattern;  // may contain '*' and a trailing '$'
    bool allow = false;
  };

  RobotsRules() = default;

  /// Selects the group naming `user_agent` (case-insensitive product token
  /// match), falling back to the '*' group.
  static RobotsRules parse(std::string_view robots_txt, std::string_view user_agent);

  static RobotsRules allow_all() { return {}; }
  static RobotsRules disallow_all();

  /// Longest matching pattern wins; Allow wins ties. `path` includes the query.
  bool allowed(std::string_view path) const;

  const std::vector<Rule>& rules() const { return rules_; }

 private:
  std::vector<Rule> rules_;
};

bool robots_pattern_matches(std::string_view pattern, std::string_view path);

}  // namespace factcheck::ingest
