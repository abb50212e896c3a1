#pragma once

#include <string>
#include <vector>

namespace treebar {

struct Witness {
  std::string identity;  // which identity failed
  std::string detail;    // where, and with which basis elements
};

/// Outcome of a verification: empty failure list means pass.
class Report {
 public:
  Report() = default;
  explicit Report(std::string name) : name_{std::move(name)} {}

  const std::string& name() const { return name_; }
  bool passed() const { return failures_.empty(); }
  const std::vector<Witness>& failures() const { return failures_; }

  void fail(std::string identity, std::string detail) {
    failures_.push_back({std::move(identity), std::move(detail)});
  }
  void absorb(const Report& other) {
    failures_.insert(failures_.end(), other.failures_.begin(), other.failures_.end());
  }

 private:
  std::string name_;
  std::vector<Witness> failures_;
};

}  // namespace treebar
