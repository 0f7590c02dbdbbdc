// Trajectory log: one row per incumbent change and per ILS iteration
// boundary. CSV format:
//   # seed=<run seed>
//   wall_s,target_s,iteration,incumbent_id,n_runs,train_estimate
#pragma once

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace paramils {

struct TrajectoryEntry {
  double wall_s = 0.0;
  double target_s = 0.0;  // consumed target time, nondecreasing
  long iteration = 0;
  std::string incumbent_id;
  int n_runs = 0;
  double train_estimate = 0.0;
};

class TrajectoryLog {
 public:
  void set_seed(std::uint64_t seed) {
    seed_ = seed;
    has_seed_ = true;
  }
  std::uint64_t seed() const { return seed_; }

  void append(TrajectoryEntry entry) { entries_.push_back(std::move(entry)); }
  const std::vector<TrajectoryEntry>& entries() const { return entries_; }

  void write_csv(std::ostream& out) const {
    if (has_seed_) out << "# seed=" << seed_ << "\n";
    out << "wall_s,target_s,iteration,incumbent_id,n_runs,train_estimate\n";
    char buf[128];
    for (const auto& e : entries_) {
      std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%ld,", e.wall_s, e.target_s,
                    e.iteration);
      out << buf << '"' << e.incumbent_id << '"' << ',' << e.n_runs << ',';
      std::snprintf(buf, sizeof(buf), "%.10g", e.train_estimate);
      out << buf << "\n";
    }
  }

 private:
  std::vector<TrajectoryEntry> entries_;
  std::uint64_t seed_ = 0;
  bool has_seed_ = false;
};

}  // namespace paramils
