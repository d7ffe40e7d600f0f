#pragma once

#include <chrono>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "factcheck/ingest/robots.hpp"

namespace factcheck::ingest {

/// Shared per-host crawl state: the last dispatch slot of every host and the
/// cached robots rules. Internally synchronized; one instance is shared by
/// every crawl running in the process.
class Politeness {
 public:
  using Clock = std::chrono::steady_clock;

  explicit Politeness(std::chrono::milliseconds default_interval = std::chrono::milliseconds(1000));

  Politeness(const Politeness&) = delete;
  Politeness& operator=(const Politeness&) = delete;

  void set_interval(const std::string& host, std::chrono::milliseconds interval);
  std::chrono::milliseconds interval(const std::string& host) const;

  /// Reserves the next dispatch slot for `host` and sleeps until it arrives.
  /// Slots of one host are at least interval(host) apart, whatever the
  /// number of calling threads. Returns the slot.
  Clock::time_point acquire(const std::string& host);

  std::optional<RobotsRules> cached_robots(const std::string& host) const;
  void store_robots(const std::string& host, RobotsRules rules);

 private:
  mutable std::mutex mu_;
  std::chrono::milliseconds default_interval_;
  std::map<std::string, std::chrono::milliseconds> intervals_;
  std::map<std::string, Clock::time_point> last_slot_;
  std::map<std::string, RobotsRules> robots_;
};

}  // namespace factcheck::ingest
