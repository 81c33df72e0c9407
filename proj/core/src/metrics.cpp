#include "gsd/metrics.hpp"

#include <stdexcept>

#include "gsd/constraints.hpp"

namespace gsd {

F1Report majority_f1(const std::map<std::string, std::string>& assignment,
                     const std::map<std::string, std::string>& truth) {
  if (assignment.size() != truth.size())
    throw std::runtime_error("assignment and truth cover different elements");
  for (const auto& [id, t] : truth)
    if (!assignment.count(id))
      throw std::runtime_error("element missing from assignment: " + id);

  F1Report report;
  if (truth.empty()) return report;

  // discovered type -> (true type -> member count)
  std::map<std::string, std::map<std::string, std::int64_t>> composition;
  std::map<std::string, std::int64_t> truth_total;
  for (const auto& [id, true_type] : truth) {
    ++composition[assignment.at(id)][true_type];
    ++truth_total[true_type];
  }

  // majority tagging; ties to the lexicographically smallest true type
  std::map<std::string, std::string> majority;
  for (const auto& [disc, counts] : composition) {
    std::int64_t best = -1;
    for (const auto& [true_type, count] : counts) {
      if (count > best) {
        best = count;
        majority[disc] = true_type;
      }
    }
  }

  std::map<std::string, std::int64_t> tp, fp;
  for (const auto& [disc, counts] : composition) {
    const std::string& tag = majority.at(disc);
    for (const auto& [true_type, count] : counts) {
      if (true_type == tag)
        tp[tag] += count;
      else
        fp[tag] += count;
    }
  }

  double f1_sum = 0.0;
  std::int64_t correct = 0;
  for (const auto& [true_type, total] : truth_total) {
    TypeF1 entry;
    entry.support = total;
    const std::int64_t t = tp.count(true_type) ? tp.at(true_type) : 0;
    const std::int64_t f = fp.count(true_type) ? fp.at(true_type) : 0;
    const std::int64_t fn = total - t;
    entry.precision = (t + f) > 0 ? static_cast<double>(t) / static_cast<double>(t + f) : 0.0;
    entry.recall = (t + fn) > 0 ? static_cast<double>(t) / static_cast<double>(t + fn) : 0.0;
    entry.f1 = (entry.precision + entry.recall) > 0.0
                   ? 2.0 * entry.precision * entry.recall /
                         (entry.precision + entry.recall)
                   : 0.0;
    report.per_type.emplace(true_type, entry);
    f1_sum += entry.f1;
    correct += t;
  }
  report.macro_f1 = f1_sum / static_cast<double>(truth_total.size());
  report.micro_accuracy =
      static_cast<double>(correct) / static_cast<double>(truth.size());
  return report;
}

double datatype_sampling_error(const std::vector<std::string>& full,
                               const std::vector<std::string>& sample) {
  if (sample.empty()) throw std::runtime_error("empty sample");
  const Datatype aggregate = infer_datatype(full);
  std::size_t mismatched = 0;
  for (const auto& v : sample)
    if (classify_value(v) != aggregate) ++mismatched;
  return static_cast<double>(mismatched) / static_cast<double>(sample.size());
}

}  // namespace gsd
