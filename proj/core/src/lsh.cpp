#include "gsd/lsh.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace gsd {

std::string lsh_method_name(LshMethod m) {
  return m == LshMethod::Elsh ? "elsh" : "minhash";
}

LshMethod lsh_method_from_name(const std::string& name) {
  if (name == "elsh") return LshMethod::Elsh;
  if (name == "minhash") return LshMethod::MinHash;
  throw std::runtime_error("unknown LSH method: " + name);
}

namespace {

double euclidean(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

constexpr std::size_t kMinSample = 10000;
constexpr std::size_t kMaxPairs = 100000;

}  // namespace

AdaptiveEstimate estimate_params(const std::vector<FeatureVector>& vectors,
                                 std::size_t total_count,
                                 std::size_t distinct_labels, ElementKind kind,
                                 std::uint64_t seed, LshMethod method) {
  if (vectors.size() < 2)
    throw std::runtime_error("adaptive estimation needs at least 2 vectors");

  std::mt19937_64 rng(seed);
  const std::size_t want = std::min<std::size_t>(
      total_count,
      std::max<std::size_t>(
          static_cast<std::size_t>(std::ceil(0.01 * static_cast<double>(total_count))),
          kMinSample));
  const std::size_t n = std::min(want, vectors.size());

  std::vector<std::size_t> sample(vectors.size());
  for (std::size_t i = 0; i < sample.size(); ++i) sample[i] = i;
  std::shuffle(sample.begin(), sample.end(), rng);
  sample.resize(n);

  const std::size_t all_pairs = n * (n - 1) / 2;
  double sum = 0.0;
  std::size_t count = 0;
  if (all_pairs <= kMaxPairs) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        sum += euclidean(vectors[sample[i]].values, vectors[sample[j]].values);
        ++count;
      }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    while (count < kMaxPairs) {
      std::size_t i = pick(rng), j = pick(rng);
      if (i == j) continue;
      sum += euclidean(vectors[sample[i]].values, vectors[sample[j]].values);
      ++count;
    }
  }

  AdaptiveEstimate est;
  est.mu = count ? sum / static_cast<double>(count) : 0.0;
  est.b_base = 1.2 * est.mu;
  est.distinct_labels = distinct_labels;
  est.element_count = total_count;
  const std::size_t L = distinct_labels;
  est.alpha = (L <= 3) ? 0.8 : (L <= 10 ? 1.0 : 1.5);

  const double log_count = std::log10(static_cast<double>(total_count));
  const double t_raw =
      kind == ElementKind::NodeKind
          ? est.b_base * std::max(5.0, est.alpha * std::min(25.0, log_count))
          : est.b_base * std::max(3.0, est.alpha * std::min(20.0, log_count));
  int tables = static_cast<int>(std::llround(t_raw));
  tables = std::clamp(tables, 1, 64);

  est.resolved.method = method;
  est.resolved.seed = seed;
  est.resolved.num_tables = tables;
  est.resolved.bucket_length = est.b_base > 0.0 ? est.b_base * est.alpha : 1.0;
  return est;
}

Clustering elsh_cluster(const std::vector<FeatureVector>& vectors,
                        const LshParams& params) {
  Clustering result;
  result.kind = vectors.empty() ? ElementKind::NodeKind : vectors.front().kind;
  if (vectors.empty()) return result;
  if (params.bucket_length <= 0.0)
    throw std::invalid_argument("bucket length must be > 0");
  if (params.num_tables < 1)
    throw std::invalid_argument("table count must be >= 1");

  const std::size_t dim = vectors.front().values.size();
  for (const auto& v : vectors)
    if (v.values.size() != dim)
      throw std::runtime_error("mixed feature vector lengths");

  std::mt19937_64 rng(params.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> offset(0.0, params.bucket_length);
  std::vector<std::vector<double>> projections(params.num_tables);
  std::vector<double> offsets(params.num_tables);
  for (int t = 0; t < params.num_tables; ++t) {
    projections[t].resize(dim);
    for (auto& a : projections[t]) a = gauss(rng);
    offsets[t] = offset(rng);
  }

  std::map<std::vector<std::int64_t>, std::vector<std::string>> buckets;
  for (const auto& v : vectors) {
    std::vector<std::int64_t> signature(params.num_tables);
    for (int t = 0; t < params.num_tables; ++t) {
      double dot = 0.0;
      for (std::size_t i = 0; i < dim; ++i)
        dot += projections[t][i] * v.values[i];
      signature[t] = static_cast<std::int64_t>(
          std::floor((dot + offsets[t]) / params.bucket_length));
    }
    buckets[std::move(signature)].push_back(v.owner);
  }

  for (auto& [sig, members] : buckets) {
    std::sort(members.begin(), members.end());
    result.clusters.push_back(std::move(members));
  }
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

Clustering minhash_cluster(const std::vector<TokenSet>& elements,
                           int num_tables, std::uint64_t seed,
                           ElementKind kind) {
  if (num_tables < 1) throw std::invalid_argument("table count must be >= 1");
  Clustering result;
  result.kind = kind;
  if (elements.empty()) return result;

  // multiply-shift coefficients per hash function
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> mul(num_tables), add(num_tables);
  for (int t = 0; t < num_tables; ++t) {
    mul[t] = rng() | 1ull;  // odd multiplier
    add[t] = rng();
  }

  std::vector<std::string> empties;
  std::map<std::vector<std::uint64_t>, std::vector<std::string>> buckets;
  for (const auto& el : elements) {
    if (el.tokens.empty()) {
      empties.push_back(el.owner);
      continue;
    }
    std::vector<std::uint64_t> signature(num_tables,
                                         ~static_cast<std::uint64_t>(0));
    for (const auto& tok : el.tokens) {
      const std::uint64_t h = stable_hash(tok);
      for (int t = 0; t < num_tables; ++t) {
        const std::uint64_t v = mul[t] * h + add[t];
        if (v < signature[t]) signature[t] = v;
      }
    }
    buckets[std::move(signature)].push_back(el.owner);
  }

  for (auto& [sig, members] : buckets) {
    std::sort(members.begin(), members.end());
    result.clusters.push_back(std::move(members));
  }
  if (!empties.empty()) {
    std::sort(empties.begin(), empties.end());
    result.clusters.push_back(std::move(empties));
  }
  std::sort(result.clusters.begin(), result.clusters.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return result;
}

std::set<std::string> node_tokens(const Node& node) {
  std::set<std::string> tokens(node.labels.begin(), node.labels.end());
  for (const auto& [k, v] : node.properties) tokens.insert(k);
  return tokens;
}

std::set<std::string> edge_tokens(const Edge& edge, const LabelSet& src_labels,
                                  const LabelSet& tgt_labels) {
  std::set<std::string> tokens(edge.labels.begin(), edge.labels.end());
  for (const auto& [k, v] : edge.properties) tokens.insert(k);
  tokens.insert("src:" + canonical_label_key(src_labels));
  tokens.insert("tgt:" + canonical_label_key(tgt_labels));
  return tokens;
}

}  // namespace gsd
