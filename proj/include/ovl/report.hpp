#pragma once

#include <string>
#include <vector>

namespace ovl {

enum class CheckStatus { pass, fail, not_applicable };

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::fail;
  std::string detail;
};

/// Ordered list of named checks. Failures are carried here, never thrown.
struct VerificationReport {
  std::string title;
  std::vector<Check> checks;

  void add(std::string name, bool ok, std::string detail = {}) {
    checks.push_back({std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)});
  }
  void add_not_applicable(std::string name, std::string detail = {}) {
    checks.push_back({std::move(name), CheckStatus::not_applicable, std::move(detail)});
  }
  /// Appends every check of `other`, prefixing names with `prefix`.
  void append(const VerificationReport& other, const std::string& prefix = {}) {
    for (const auto& c : other.checks) checks.push_back({prefix + c.name, c.status, c.detail});
  }
  /// True when no check failed (not-applicable checks do not count).
  bool passed() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
};

inline const char* status_label(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "PASS";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::not_applicable:
      return "N/A";
  }
  return "?";
}

}  // namespace ovl
