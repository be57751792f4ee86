#pragma once

#include <string>
#include <vector>

namespace tgk {

/// A concrete piece of evidence for a failed (or informative) check: where,
/// and the nonzero residual found there.
struct Witness {
  std::string location;
  std::string value;
};

/// Common shape of every check result.
struct CheckOutcome {
  bool passed = true;
  std::vector<Witness> witnesses;

  void fail(std::string location, std::string value) {
    passed = false;
    witnesses.push_back({std::move(location), std::move(value)});
  }

  void merge(const CheckOutcome& o) {
    passed = passed && o.passed;
    witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
  }
};

/// Residual strings can be long; witnesses keep a bounded prefix.
inline std::string clip(std::string s, std::size_t limit = 160) {
  if (s.size() > limit) s = s.substr(0, limit) + "...";
  return s;
}

}  // namespace tgk
