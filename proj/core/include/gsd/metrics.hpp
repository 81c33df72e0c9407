#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gsd/schema.hpp"

namespace gsd {

struct TypeF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;
};

struct F1Report {
  double macro_f1 = 1.0;       // mean per-true-type F1 (the F1* score)
  double micro_accuracy = 1.0; // fraction of correctly typed elements
  std::map<std::string, TypeF1> per_type;  // keyed by true type
};

/// Majority-based F1*: every discovered type is tagged with the majority true
/// type of its members (ties to the lexicographically smallest); per true
/// type, TP/FP/FN follow from that tagging and F1* is the macro average.
/// Throws when the two maps do not cover the same element set. Empty input
/// scores 1.0.
F1Report majority_f1(const std::map<std::string, std::string>& assignment,
                     const std::map<std::string, std::string>& truth);

/// error(p) = fraction of sampled values whose per-value datatype differs
/// from the full scan's aggregate datatype. Throws on an empty sample.
double datatype_sampling_error(const std::vector<std::string>& full,
                               const std::vector<std::string>& sample);

}  // namespace gsd
