#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace qchan {

inline constexpr int kMaxWitnesses = 10;

/// Outcome of a theorem/inequality check. Slacks are "how far inside the
/// inequality" each trial landed (equality checks record the negated
/// deviation); the check passes iff min_slack >= -threshold.
struct CheckReport {
  std::string name;
  int trials = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::vector<std::string> witnesses;  // failing instances, capped
  uint64_t seed = 0;
  double threshold = 1e-9;

  bool passed() const { return min_slack >= -threshold; }

  void record(double slack, const std::string& witness) {
    ++trials;
    if (slack < min_slack) min_slack = slack;
    if (slack < -threshold && static_cast<int>(witnesses.size()) < kMaxWitnesses)
      witnesses.push_back(witness);
  }

  /// Fold a sub-report into this one (suite aggregation).
  void absorb(const CheckReport& sub) {
    trials += sub.trials;
    if (sub.min_slack < min_slack) min_slack = sub.min_slack;
    for (const auto& w : sub.witnesses)
      if (static_cast<int>(witnesses.size()) < kMaxWitnesses)
        witnesses.push_back(sub.name.empty() ? w : sub.name + ": " + w);
  }
};

}  // namespace qchan
