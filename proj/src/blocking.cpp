#include "blocking.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "errors.hpp"

namespace paramils {

std::vector<Instance> parse_instance_file(const std::string& text) {
  std::vector<Instance> result;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos)
      line.resize(hash);
    std::istringstream fields(line);
    Instance inst;
    if (!(fields >> inst.name)) continue;  // blank line
    std::string seed_field;
    if (fields >> seed_field) {
      try {
        unsigned long v = std::stoul(seed_field);
        if (v > 0xfffffffful) throw std::out_of_range("seed");
        inst.pinned_seed = static_cast<std::uint32_t>(v);
      } catch (const std::exception&) {
        throw ParseError(line_no, 1, "bad seed '" + seed_field + "'");
      }
      std::string extra;
      if (fields >> extra)
        throw ParseError(line_no, 1, "trailing field '" + extra + "'");
    }
    result.push_back(std::move(inst));
  }
  return result;
}

std::vector<Instance> load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open instance file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  auto instances = parse_instance_file(buf.str());
  if (instances.empty())
    throw ValidationError("instance file is empty: " + path);
  return instances;
}

InstanceSeedList::InstanceSeedList(std::vector<Instance> training, Rng rng)
    : training_(std::move(training)), rng_(rng) {
  if (training_.empty())
    throw ValidationError("training instance set is empty");
}

void InstanceSeedList::extend(int target_length) {
  const int m = training_size();
  while (size() < target_length) {
    const int pos = size() % m;
    if (pos == 0) {
      batch_.resize(static_cast<size_t>(m));
      for (int i = 0; i < m; ++i) batch_[static_cast<size_t>(i)] = i;
      shuffle_vector(batch_, rng_);
    }
    const int inst = batch_[static_cast<size_t>(pos)];
    const auto& pinned = training_[static_cast<size_t>(inst)].pinned_seed;
    const std::uint32_t seed = pinned ? *pinned : uniform_u32(rng_);
    pairs_.emplace_back(inst, seed);
  }
}

InstanceSeedList build_list(std::vector<Instance> training, int target_length,
                            Rng rng) {
  if (target_length < 1)
    throw ValidationError("list length must be at least 1");
  InstanceSeedList list(std::move(training), rng);
  list.extend(target_length);
  return list;
}

void require_disjoint(const std::vector<Instance>& train,
                      const std::vector<Instance>& test) {
  std::unordered_set<std::string> names;
  for (const auto& t : train) names.insert(t.name);
  for (const auto& t : test) {
    if (names.count(t.name))
      throw ValidationError("instance '" + t.name +
                            "' appears in both training and test sets");
  }
}

}  // namespace paramils
