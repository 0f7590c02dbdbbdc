// Parameter configuration space: categorical parameters with conditional
// activation and forbidden value combinations.
//
// Configurations are canonical value objects: inactive parameters always hold
// their defaults, and the identity key is computed over active parameters
// only, so two assignments that differ only in inactive parameters compare
// equal and share one cache entry.
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rng.hpp"

namespace paramils {

struct Parameter {
  std::string name;
  std::vector<std::string> domain;  // ordered, pairwise distinct
  int default_index = 0;
};

/// Activation rule: `child` is relevant only while `parent` is active and
/// holds one of `activating_values`. At most one condition per child.
struct Condition {
  int child = -1;
  int parent = -1;
  std::vector<int> activating_values;  // indices into the parent's domain
};

/// A combination of (parameter, value) pairs that must not occur together.
struct ForbiddenCombination {
  std::vector<std::pair<int, int>> assignments;  // (param index, value index)
};

class ConfigurationSpace;

/// One full assignment in canonical form. Immutable; produced by
/// ConfigurationSpace factory methods only.
class Configuration {
 public:
  Configuration() = default;

  const std::vector<int>& values() const { return values_; }
  int value(int param) const { return values_[static_cast<size_t>(param)]; }

  /// Canonical key over active parameters, e.g. "alpha=1.3,rho=0".
  const std::string& identity() const { return identity_; }

  bool operator==(const Configuration& other) const {
    return identity_ == other.identity_;
  }
  bool operator!=(const Configuration& other) const {
    return !(*this == other);
  }

 private:
  friend class ConfigurationSpace;
  std::vector<int> values_;
  std::string identity_;
};

class ConfigurationSpace {
 public:
  /// Parses the line-oriented space file format:
  ///   name {v1,v2,...}[default]
  ///   child | parent in {v1,v2,...}
  ///   {name=value, name=value, ...}
  /// '#' starts a comment; blank lines are ignored.
  /// Throws ParseError with line/column on malformed input, ValidationError
  /// on semantic problems (duplicate names, cycles, infeasible default).
  static ConfigurationSpace parse(std::string_view text);

  /// Inverse of parse(); parse(serialize()) reconstructs an equal space.
  std::string serialize() const;

  std::size_t parameter_count() const { return params_.size(); }
  const std::vector<Parameter>& parameters() const { return params_; }
  const Parameter& parameter(int i) const {
    return params_[static_cast<size_t>(i)];
  }
  int parameter_index(std::string_view name) const;  // -1 when absent
  const std::vector<Condition>& conditions() const { return conditions_; }
  const std::vector<ForbiddenCombination>& forbidden() const {
    return forbidden_;
  }

  /// Number of full assignments (product of domain sizes), as a double since
  /// realistic spaces overflow 64 bits.
  double total_assignments() const;

  /// Active flags for a full assignment. A parameter is active iff it has no
  /// condition, or its parent is active and holds an activating value.
  std::vector<bool> active_mask(const std::vector<int>& values) const;

  /// Canonical form: inactive parameters reset to defaults, identity over
  /// active parameters. Throws ValidationError when the active part violates
  /// a forbidden combination.
  Configuration canonicalize(const std::vector<int>& values) const;

  /// Like canonicalize() but reports infeasibility as nullopt.
  std::optional<Configuration> try_canonicalize(
      const std::vector<int>& values) const;

  /// Builds a configuration from name -> value-token pairs. Unmentioned
  /// parameters take their defaults.
  Configuration from_assignment(
      const std::vector<std::pair<std::string, std::string>>& pairs) const;

  Configuration default_configuration() const;

  /// All distinct feasible configurations reachable by changing exactly one
  /// active parameter to another domain value, in randomized order.
  std::vector<Configuration> neighbors(const Configuration& config,
                                       Rng& rng) const;

  /// Uniform draw from neighbors(config) without materializing the shuffle.
  std::optional<Configuration> random_neighbor(const Configuration& config,
                                               Rng& rng) const;

  /// Uniform over full assignments (not equivalence classes; classes that
  /// collapse many assignments are drawn proportionally more often).
  /// Rejection-samples around forbidden combinations; throws ValidationError
  /// after max_rejections failed draws.
  Configuration sample_random(Rng& rng, int max_rejections = 10000) const;

  /// Serializes a configuration as "name=value" lines (active params only).
  std::string configuration_text(const Configuration& config) const;

 private:
  void validate();
  bool feasible(const std::vector<int>& values,
                const std::vector<bool>& active) const;
  std::vector<Configuration> neighbors_unordered(
      const Configuration& config) const;

  std::vector<Parameter> params_;
  std::vector<Condition> conditions_;
  std::vector<int> condition_of_;  // per param: index into conditions_ or -1
  std::vector<ForbiddenCombination> forbidden_;
  std::vector<int> activation_order_;  // parents before children
};

}  // namespace paramils
