#ifndef UADB_EXPERIMENTS_HPP
#define UADB_EXPERIMENTS_HPP

#include <cstdint>
#include <vector>

#include "uadb/models.hpp"
#include "uadb/ua_database.hpp"

namespace uadb {

// Synthetic x-relation: `rows` x-tuples over `cols` string columns. Each
// cell is independently uncertain with probability uncertain_rate; a row
// with uncertain cells gets a second alternative that differs on exactly
// those cells. All x-tuples are non-optional.
XDB synth_xdb(std::size_t rows, std::size_t cols, double uncertain_rate,
              std::uint64_t seed);

// Exact certain answers of a projection over an x-relation, without world
// enumeration: a projected tuple is certain iff some non-optional x-tuple
// agrees on the projection across all of its alternatives. Cross-checked
// against the enumerating oracle in the test suite.
KRelation xdb_projection_certain(const XDB& db,
                                 const std::vector<std::string>& attrs);

struct FnrSample {
  std::vector<std::string> attrs;
  bool xkey_retained = false;
  double fnr = 0;
  double fpr = 0;
};

struct FnrPoint {
  std::size_t width = 0;
  std::vector<FnrSample> samples;
  double min = 0, q25 = 0, median = 0, q75 = 0, max = 0;
};

struct FnrConfig {
  std::size_t rows = 1000;
  std::size_t cols = 8;
  double uncertain_rate = 0.1;
  std::size_t queries_per_width = 9;
  std::uint64_t seed = 0;
};

// For every projection width 1..cols, runs seeded random projections over
// one synthetic x-DB and reports the distribution of the false negative
// rate. The false positive rate is zero on every run by c-soundness.
std::vector<FnrPoint> experiment_fnr(const FnrConfig& cfg);

struct UtilityPoint {
  double corruption_rate = 0;
  double certain_precision = 1;
  double certain_recall = 1;
  double ua_precision = 1;
  double ua_recall = 1;
};

struct UtilityConfig {
  std::size_t rows = 500;
  std::size_t cols = 6;
  std::size_t projection_width = 3;
  std::vector<double> corruption_rates = {0.1, 0.3, 0.5};
  std::uint64_t seed = 0;
};

// Corrupts a ground-truth table into an x-DB whose best guess prefers the
// corrupted alternative, then compares certain-only answers and best-guess
// answers against the ground truth.
std::vector<UtilityPoint> experiment_utility(const UtilityConfig& cfg);

std::string render_fnr_csv(const std::vector<FnrPoint>& points);
std::string render_utility_csv(const std::vector<UtilityPoint>& points);

}  // namespace uadb

#endif
