// Blocked (instance, seed) list shared by every evaluation in one
// configurator run: the first M entries cover each training instance exactly
// once, every further full batch of M is a fresh permutation, and a final
// partial batch holds distinct instances. Competing configurations are always
// compared on identical list prefixes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rng.hpp"

namespace paramils {

struct Instance {
  std::string name;  // path for subprocess targets, any token for surrogates
  std::optional<std::uint32_t> pinned_seed;  // overrides random seeds
};

/// Parses an instance file: one instance per line, optional second
/// whitespace-separated column pinning a fixed seed. '#' starts a comment.
std::vector<Instance> parse_instance_file(const std::string& text);
std::vector<Instance> load_instance_file(const std::string& path);

class InstanceSeedList {
 public:
  /// The list owns its rng stream by value: extending is a pure function of
  /// (training set, seed, target length), so prefixes are stable no matter
  /// when extensions happen.
  InstanceSeedList(std::vector<Instance> training, Rng rng);

  /// Appends pairs until the list holds at least target_length entries.
  void extend(int target_length);

  int size() const { return static_cast<int>(pairs_.size()); }
  int training_size() const { return static_cast<int>(training_.size()); }
  const std::vector<Instance>& training() const { return training_; }

  /// 1-based accessors, matching run slot numbering.
  const Instance& instance_at(int i) const {
    return training_[static_cast<size_t>(pairs_[static_cast<size_t>(i - 1)].first)];
  }
  int instance_id_at(int i) const {
    return pairs_[static_cast<size_t>(i - 1)].first;
  }
  std::uint32_t seed_at(int i) const {
    return pairs_[static_cast<size_t>(i - 1)].second;
  }

 private:
  std::vector<Instance> training_;
  Rng rng_;
  std::vector<std::pair<int, std::uint32_t>> pairs_;
  std::vector<int> batch_;  // permutation currently being consumed
};

/// Convenience one-shot constructor.
InstanceSeedList build_list(std::vector<Instance> training, int target_length,
                            Rng rng);

/// Throws ValidationError when the two sets share an instance name.
void require_disjoint(const std::vector<Instance>& train,
                      const std::vector<Instance>& test);

}  // namespace paramils
