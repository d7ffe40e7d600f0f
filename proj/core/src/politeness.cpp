#include "factcheck/ingest/politeness.hpp"

#include <thread>

namespace factcheck::ingest {

Politeness::Politeness(std::chrono::milliseconds default_interval)
    : default_interval_(default_interval) {}

void Politeness::set_interval(const std::string& host, std::chrono::milliseconds interval) {
  std::lock_guard lock(mu_);
  intervals_[host] = interval;
}

std::chrono::milliseconds Politeness::interval(const std::string& host) const {
  std::lock_guard lock(mu_);
  const auto it = intervals_.find(host);
  return it == intervals_.end() ? default_interval_ : it->second;
}

Politeness::Clock::time_point Politeness::acquire(const std::string& host) {
  Clock::time_point slot;
  {
    std::lock_guard lock(mu_);
    const auto it = intervals_.find(host);
    const auto gap = it == intervals_.end() ? default_interval_ : it->second;
    const auto now = Clock::now();
    slot = now;
    if (const auto last = last_slot_.find(host); last != last_slot_.end()) {
      slot = std::max(now, last->second + gap);
    }
    last_slot_[host] = slot;
  }
  std::this_thread::sleep_until(slot);
  // Oversleeping pushes the slot back so the next gap is still measured from
  // the real dispatch.
  const auto woke = Clock::now();
  std::lock_guard lock(mu_);
  auto& last = last_slot_[host];
  if (woke > last) last = woke;
  return woke;
}

std::optional<RobotsRules> Politeness::cached_robots(const std::string& host) const {
  std::lock_guard lock(mu_);
  const auto it = robots_.find(host);
  if (it == robots_.end()) return std::nullopt;
  return it->second;
}

void Politeness::store_robots(const std::string& host, RobotsRules rules) {
  std::lock_guard lock(mu_);
  robots_[host] = std::move(rules);
}

}  // namespace factcheck::ingest
