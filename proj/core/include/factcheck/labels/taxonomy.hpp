#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace factcheck::labels {

/// Veracity of an article's main claim.
enum class VerdictClass { kTrue, kFalse, kPartiallyFalse, kOther };

/// Topical domain of an article.
enum class DomainClass { kHealth, kElection, kCrime, kClimate, kEconomy, kEducation };

inline constexpr std::array<VerdictClass, 4> kAllVerdicts = {
    VerdictClass::kTrue, VerdictClass::kFalse, VerdictClass::kPartiallyFalse, VerdictClass::kOther};

inline constexpr std::array<DomainClass, 6> kAllDomains = {
    DomainClass::kHealth,  DomainClass::kElection, DomainClass::kCrime,
    DomainClass::kClimate, DomainClass::kEconomy,  DomainClass::kEducation};

// Stable lowercase names used in files: "true", "false", "partially_false",
// "other"; "health", "election", ...
std::string_view name(VerdictClass c);
std::string_view name(DomainClass c);
std::optional<VerdictClass> parse_verdict_class(std::string_view s);
std::optional<DomainClass> parse_domain_class(std::string_view s);

/// A raw label with no table entry, carrying its canonical form.
struct Unmapped {
  std::string canonical;
  friend bool operator==(const Unmapped&, const Unmapped&) = default;
};

template <typename Class>
using Outcome = std::variant<Class, Unmapped>;

}  // namespace factcheck::labels
