#include "space.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "errors.hpp"

namespace paramils {

namespace {

// Cursor over one line, tracking the column for error reporting.
struct LineCursor {
  std::string_view text;
  int line;
  std::size_t pos = 0;

  int col() const { return static_cast<int>(pos) + 1; }
  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }

  void skip_ws() {
    while (!done() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
  }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(line, col(), msg);
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }

  bool accept(char c) {
    skip_ws();
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }

  // A token is any run of characters outside the structural set.
  std::string token(const char* what) {
    skip_ws();
    const std::string_view stop = "{}[],|=#";
    std::size_t start = pos;
    while (!done() && stop.find(text[pos]) == std::string_view::npos &&
           text[pos] != ' ' && text[pos] != '\t') {
      ++pos;
    }
    if (pos == start) fail(std::string("expected ") + what);
    return std::string(text.substr(start, pos - start));
  }

  std::vector<std::string> brace_list(const char* what) {
    expect('{');
    std::vector<std::string> items;
    items.push_back(token(what));
    while (accept(',')) items.push_back(token(what));
    expect('}');
    return items;
  }
};

std::string join(const std::vector<std::string>& items, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += sep;
    out += items[i];
  }
  return out;
}

}  // namespace

int ConfigurationSpace::parameter_index(std::string_view name) const {
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (params_[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

ConfigurationSpace ConfigurationSpace::parse(std::string_view text) {
  ConfigurationSpace space;
  struct PendingCondition {
    std::string child, parent;
    std::vector<std::string> values;
    int line, col;
  };
  struct PendingForbidden {
    std::vector<std::pair<std::string, std::string>> pairs;
    int line, col;
  };
  std::vector<PendingCondition> pending_conditions;
  std::vector<PendingForbidden> pending_forbidden;

  int line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    std::size_t end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(begin, end - begin);
    begin = end + 1;
    ++line_no;
    if (end == text.size() && raw.empty() && begin > text.size()) break;

    // Strip comment and trailing carriage return.
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    while (!raw.empty() && (raw.back() == '\r' || raw.back() == ' ' ||
                            raw.back() == '\t'))
      raw.remove_suffix(1);

    LineCursor cur{raw, line_no};
    cur.skip_ws();
    if (cur.done()) continue;

    if (cur.peek() == '{') {
      // Forbidden combination: {a=1, b=2}
      PendingForbidden forb{{}, line_no, cur.col()};
      cur.expect('{');
      do {
        std::string name = cur.token("parameter name");
        cur.expect('=');
        std::string value = cur.token("value");
        forb.pairs.emplace_back(std::move(name), std::move(value));
      } while (cur.accept(','));
      cur.expect('}');
      cur.skip_ws();
      if (!cur.done()) cur.fail("trailing characters");
      pending_forbidden.push_back(std::move(forb));
      continue;
    }

    std::string first = cur.token("parameter name");
    cur.skip_ws();
    if (cur.peek() == '|') {
      // Condition: child | parent in {v1,v2}
      cur.expect('|');
      PendingCondition cond;
      cond.child = std::move(first);
      cond.line = line_no;
      cond.col = cur.col();
      cond.parent = cur.token("parent name");
      std::string kw = cur.token("'in'");
      if (kw != "in") cur.fail("expected 'in'");
      cond.values = cur.brace_list("activating value");
      cur.skip_ws();
      if (!cur.done()) cur.fail("trailing characters");
      pending_conditions.push_back(std::move(cond));
      continue;
    }

    // Parameter: name {v1,v2,...}[default]
    Parameter param;
    param.name = std::move(first);
    std::vector<std::string> domain = cur.brace_list("domain value");
    cur.expect('[');
    std::string def = cur.token("default value");
    cur.expect(']');
    cur.skip_ws();
    if (!cur.done()) cur.fail("trailing characters");

    for (std::size_t i = 0; i < domain.size(); ++i) {
      for (std::size_t j = i + 1; j < domain.size(); ++j) {
        if (domain[i] == domain[j])
          throw ParseError(line_no, 1,
                           "duplicate domain value '" + domain[i] +
                               "' for parameter '" + param.name + "'");
      }
    }
    auto it = std::find(domain.begin(), domain.end(), def);
    if (it == domain.end())
      throw ParseError(line_no, 1,
                       "default '" + def + "' not in domain of parameter '" +
                           param.name + "'");
    param.default_index = static_cast<int>(it - domain.begin());
    param.domain = std::move(domain);
    if (space.parameter_index(param.name) >= 0)
      throw ParseError(line_no, 1,
                       "duplicate parameter '" + param.name + "'");
    space.params_.push_back(std::move(param));
  }

  // Resolve conditions and forbidden combinations now that all parameters
  // are known (they may be declared in any order).
  space.condition_of_.assign(space.params_.size(), -1);
  for (const auto& pc : pending_conditions) {
    Condition cond;
    cond.child = space.parameter_index(pc.child);
    cond.parent = space.parameter_index(pc.parent);
    if (cond.child < 0)
      throw ParseError(pc.line, pc.col, "unknown parameter '" + pc.child + "'");
    if (cond.parent < 0)
      throw ParseError(pc.line, pc.col,
                       "unknown parameter '" + pc.parent + "'");
    if (cond.child == cond.parent)
      throw ParseError(pc.line, pc.col,
                       "parameter '" + pc.child + "' conditioned on itself");
    if (space.condition_of_[static_cast<size_t>(cond.child)] >= 0)
      throw ParseError(pc.line, pc.col,
                       "multiple conditions for parameter '" + pc.child + "'");
    const Parameter& parent = space.parameter(cond.parent);
    for (const auto& v : pc.values) {
      auto it = std::find(parent.domain.begin(), parent.domain.end(), v);
      if (it == parent.domain.end())
        throw ParseError(pc.line, pc.col,
                         "value '" + v + "' not in domain of '" +
                             parent.name + "'");
      cond.activating_values.push_back(
          static_cast<int>(it - parent.domain.begin()));
    }
    space.condition_of_[static_cast<size_t>(cond.child)] =
        static_cast<int>(space.conditions_.size());
    space.conditions_.push_back(std::move(cond));
  }

  for (const auto& pf : pending_forbidden) {
    ForbiddenCombination forb;
    for (const auto& [name, value] : pf.pairs) {
      int p = space.parameter_index(name);
      if (p < 0)
        throw ParseError(pf.line, pf.col, "unknown parameter '" + name + "'");
      const Parameter& param = space.parameter(p);
      auto it = std::find(param.domain.begin(), param.domain.end(), value);
      if (it == param.domain.end())
        throw ParseError(pf.line, pf.col,
                         "value '" + value + "' not in domain of '" + name +
                             "'");
      forb.assignments.emplace_back(
          p, static_cast<int>(it - param.domain.begin()));
    }
    if (forb.assignments.size() < 2)
      throw ParseError(pf.line, pf.col,
                       "forbidden combination needs at least two entries");
    space.forbidden_.push_back(std::move(forb));
  }

  space.validate();
  return space;
}

void ConfigurationSpace::validate() {
  if (params_.empty())
    throw ValidationError("space declares no parameters");

  // Cycle check over the parent->child graph; also yields the activation
  // order (parents before children).
  const std::size_t n = params_.size();
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  activation_order_.clear();
  activation_order_.reserve(n);
  // Iterative DFS following the unique parent edge of each node.
  for (std::size_t start = 0; start < n; ++start) {
    if (state[start] == 2) continue;
    std::vector<std::size_t> chain;
    std::size_t cur = start;
    while (true) {
      if (state[cur] == 1) {
        throw ValidationError("cyclic conditions involving parameter '" +
                              params_[cur].name + "'");
      }
      if (state[cur] == 2) break;
      state[cur] = 1;
      chain.push_back(cur);
      int cond = condition_of_[cur];
      if (cond < 0) break;
      cur = static_cast<std::size_t>(
          conditions_[static_cast<size_t>(cond)].parent);
    }
    // Unwind: deepest ancestor first.
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      state[*it] = 2;
      activation_order_.push_back(static_cast<int>(*it));
    }
  }

  // The default assignment must be feasible.
  std::vector<int> defaults(n);
  for (std::size_t i = 0; i < n; ++i) defaults[i] = params_[i].default_index;
  if (!feasible(defaults, active_mask(defaults)))
    throw ValidationError(
        "default configuration violates a forbidden combination");
}

std::string ConfigurationSpace::serialize() const {
  std::string out;
  for (const auto& p : params_) {
    out += p.name + " {" + join(p.domain, ",") + "}[" +
           p.domain[static_cast<size_t>(p.default_index)] + "]\n";
  }
  for (const auto& c : conditions_) {
    const Parameter& parent = parameter(c.parent);
    std::vector<std::string> vals;
    for (int v : c.activating_values)
      vals.push_back(parent.domain[static_cast<size_t>(v)]);
    out += parameter(c.child).name + " | " + parent.name + " in {" +
           join(vals, ",") + "}\n";
  }
  for (const auto& f : forbidden_) {
    std::vector<std::string> pairs;
    for (const auto& [p, v] : f.assignments)
      pairs.push_back(parameter(p).name + "=" +
                      parameter(p).domain[static_cast<size_t>(v)]);
    out += "{" + join(pairs, ", ") + "}\n";
  }
  return out;
}

double ConfigurationSpace::total_assignments() const {
  double total = 1.0;
  for (const auto& p : params_) total *= static_cast<double>(p.domain.size());
  return total;
}

std::vector<bool> ConfigurationSpace::active_mask(
    const std::vector<int>& values) const {
  std::vector<bool> active(params_.size(), true);
  for (int idx : activation_order_) {
    const int cond_idx = condition_of_[static_cast<size_t>(idx)];
    if (cond_idx < 0) continue;
    const Condition& cond = conditions_[static_cast<size_t>(cond_idx)];
    bool on = active[static_cast<size_t>(cond.parent)] &&
              std::find(cond.activating_values.begin(),
                        cond.activating_values.end(),
                        values[static_cast<size_t>(cond.parent)]) !=
                  cond.activating_values.end();
    active[static_cast<size_t>(idx)] = on;
  }
  return active;
}

bool ConfigurationSpace::feasible(const std::vector<int>& values,
                                  const std::vector<bool>& active) const {
  // A combination only applies when every referenced parameter is active
  // with the listed value.
  for (const auto& f : forbidden_) {
    bool hit = true;
    for (const auto& [p, v] : f.assignments) {
      if (!active[static_cast<size_t>(p)] ||
          values[static_cast<size_t>(p)] != v) {
        hit = false;
        break;
      }
    }
    if (hit) return false;
  }
  return true;
}

std::optional<Configuration> ConfigurationSpace::try_canonicalize(
    const std::vector<int>& values) const {
  std::vector<bool> active = active_mask(values);
  Configuration config;
  config.values_ = values;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!active[i]) config.values_[i] = params_[i].default_index;
  }
  if (!feasible(config.values_, active)) return std::nullopt;
  std::string id;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!active[i]) continue;
    if (!id.empty()) id += ',';
    id += params_[i].name;
    id += '=';
    id += params_[i].domain[static_cast<size_t>(config.values_[i])];
  }
  config.identity_ = std::move(id);
  return config;
}

Configuration ConfigurationSpace::canonicalize(
    const std::vector<int>& values) const {
  if (values.size() != params_.size())
    throw ValidationError("assignment length does not match parameter count");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (values[i] < 0 ||
        values[i] >= static_cast<int>(params_[i].domain.size()))
      throw ValidationError("value index out of range for parameter '" +
                            params_[i].name + "'");
  }
  auto config = try_canonicalize(values);
  if (!config)
    throw ValidationError("assignment violates a forbidden combination");
  return *config;
}

Configuration ConfigurationSpace::from_assignment(
    const std::vector<std::pair<std::string, std::string>>& pairs) const {
  std::vector<int> values(params_.size());
  for (std::size_t i = 0; i < params_.size(); ++i)
    values[i] = params_[i].default_index;
  for (const auto& [name, value] : pairs) {
    int p = parameter_index(name);
    if (p < 0) throw ValidationError("unknown parameter '" + name + "'");
    const Parameter& param = parameter(p);
    auto it = std::find(param.domain.begin(), param.domain.end(), value);
    if (it == param.domain.end())
      throw ValidationError("value '" + value + "' not in domain of '" + name +
                            "'");
    values[static_cast<size_t>(p)] =
        static_cast<int>(it - param.domain.begin());
  }
  return canonicalize(values);
}

Configuration ConfigurationSpace::default_configuration() const {
  std::vector<int> values(params_.size());
  for (std::size_t i = 0; i < params_.size(); ++i)
    values[i] = params_[i].default_index;
  return canonicalize(values);
}

std::vector<Configuration> ConfigurationSpace::neighbors_unordered(
    const Configuration& config) const {
  std::vector<bool> active = active_mask(config.values());
  std::vector<Configuration> result;
  std::unordered_set<std::string> seen;
  seen.insert(config.identity());
  for (std::size_t p = 0; p < params_.size(); ++p) {
    if (!active[p]) continue;
    std::vector<int> values = config.values();
    for (int v = 0; v < static_cast<int>(params_[p].domain.size()); ++v) {
      if (v == config.values()[p]) continue;
      values[p] = v;
      auto neighbor = try_canonicalize(values);
      if (!neighbor) continue;
      if (seen.insert(neighbor->identity()).second)
        result.push_back(std::move(*neighbor));
    }
  }
  return result;
}

std::vector<Configuration> ConfigurationSpace::neighbors(
    const Configuration& config, Rng& rng) const {
  std::vector<Configuration> result = neighbors_unordered(config);
  shuffle_vector(result, rng);
  return result;
}

std::optional<Configuration> ConfigurationSpace::random_neighbor(
    const Configuration& config, Rng& rng) const {
  std::vector<Configuration> all = neighbors_unordered(config);
  if (all.empty()) return std::nullopt;
  return all[uniform_index(rng, all.size())];
}

Configuration ConfigurationSpace::sample_random(Rng& rng,
                                                int max_rejections) const {
  for (int attempt = 0; attempt < max_rejections; ++attempt) {
    std::vector<int> values(params_.size());
    for (std::size_t i = 0; i < params_.size(); ++i)
      values[i] =
          static_cast<int>(uniform_index(rng, params_[i].domain.size()));
    if (auto config = try_canonicalize(values)) return *config;
  }
  throw ValidationError(
      "random sampling failed " + std::to_string(max_rejections) +
      " times; forbidden combinations leave (almost) no feasible space");
}

std::string ConfigurationSpace::configuration_text(
    const Configuration& config) const {
  std::vector<bool> active = active_mask(config.values());
  std::string out;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!active[i]) continue;
    out += params_[i].name + "=" +
           params_[i].domain[static_cast<size_t>(config.value(
               static_cast<int>(i)))] +
           "\n";
  }
  return out;
}

}  // namespace paramils
