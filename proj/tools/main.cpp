// Command line front end: discover, incremental, inject-noise, gen-synthetic,
// evaluate (benchmark grid) and sweep (parameter heatmap).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gsd/dataio.hpp"
#include "gsd/harness.hpp"
#include "gsd/metrics.hpp"
#include "gsd/noise.hpp"
#include "gsd/pipeline.hpp"
#include "gsd/serialize.hpp"
#include "gsd/synthetic.hpp"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;
using namespace gsd;

// exit code 1; anything else escaping a command is exit code 2
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InputFlags {
  std::string input;
  std::string edges;
  std::string format = "jsonl";
};

struct DiscoveryFlags {
  std::string method = "elsh";
  double theta = 0.9;
  int dim = 5;
  std::uint64_t seed = 0;
  bool adaptive = false;
  double bucket_length = 0.0;
  int tables = 0;
  int threads = 1;
  bool sample_datatypes = false;
};

void add_input_flags(CLI::App* cmd, InputFlags& flags) {
  cmd->add_option("--input", flags.input,
                  "input graph: JSONL file, or the node CSV for --format csv")
      ->required();
  cmd->add_option("--edges", flags.edges, "edge CSV (required for --format csv)");
  cmd->add_option("--format", flags.format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
}

void add_discovery_flags(CLI::App* cmd, DiscoveryFlags& flags) {
  cmd->add_option("--method", flags.method, "elsh or minhash")
      ->check(CLI::IsMember({"elsh", "minhash"}));
  cmd->add_option("--theta", flags.theta, "Jaccard merge threshold")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--dim", flags.dim, "label embedding dimension");
  cmd->add_option("--seed", flags.seed, "global seed");
  cmd->add_flag("--adaptive", flags.adaptive,
                "force adaptive LSH parameters (default unless --bucket-length"
                " or --tables is given)");
  cmd->add_option("--bucket-length", flags.bucket_length, "ELSH bucket length");
  cmd->add_option("--tables", flags.tables, "number of hash tables");
  cmd->add_option("--threads", flags.threads, "worker threads")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--sample-datatypes", flags.sample_datatypes,
                "sample property values for datatype inference");
}

void add_out_flag(CLI::App* cmd, std::string& out) {
  cmd->add_option("--out", out, "output directory (env GSD_OUT)")
      ->envname("GSD_OUT")
      ->required();
}

GraphSource make_source(const InputFlags& flags, std::size_t batch_size) {
  GraphSource source;
  source.batch_size = batch_size;
  source.node_path = flags.input;
  if (flags.format == "csv") {
    source.format = GraphFormat::CsvPair;
    if (flags.edges.empty())
      throw InputError("--format csv requires --edges");
    source.edge_path = flags.edges;
  } else {
    source.format = GraphFormat::Jsonl;
    if (!flags.edges.empty())
      throw InputError("--edges applies only to --format csv");
  }
  return source;
}

DiscoveryOptions make_options(const DiscoveryFlags& flags, CLI::App* cmd) {
  DiscoveryOptions opts;
  opts.method = lsh_method_from_name(flags.method);
  opts.theta = flags.theta;
  opts.dim = flags.dim;
  opts.seed = flags.seed;
  opts.threads = flags.threads;
  opts.sample_datatypes = flags.sample_datatypes;

  const bool explicit_params =
      cmd->count("--bucket-length") > 0 || cmd->count("--tables") > 0;
  opts.adaptive = flags.adaptive || !explicit_params;
  if (!opts.adaptive) {
    if (opts.method == LshMethod::Elsh && cmd->count("--bucket-length") == 0)
      throw InputError("non-adaptive elsh needs --bucket-length");
    if (cmd->count("--tables") == 0)
      throw InputError("non-adaptive runs need --tables");
    opts.bucket_length =
        cmd->count("--bucket-length") ? flags.bucket_length : 1.0;
    opts.num_tables = flags.tables;
    if (opts.num_tables < 1) throw InputError("--tables must be >= 1");
    if (opts.method == LshMethod::Elsh && opts.bucket_length <= 0.0)
      throw InputError("--bucket-length must be > 0");
  }
  return opts;
}

PropertyGraph load_or_input_error(const GraphSource& source) {
  try {
    return load_graph(source);
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }
}

void print_timings(const StageTimings& timings) {
  double total = 0.0;
  for (const auto& [stage, seconds] : timings) {
    std::cout << "stage " << stage << " " << seconds << "s\n";
    total += seconds;
  }
  std::cout << "stage total " << total << "s\n";
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string truth_to_json(const GroundTruth& truth) {
  nlohmann::json root;
  root["nodes"] = truth.node_type;
  root["edges"] = truth.edge_type;
  return root.dump(2) + "\n";
}

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    try {
      if constexpr (std::is_same_v<T, double>)
        out.push_back(std::stod(item));
      else
        out.push_back(static_cast<T>(std::stoull(item)));
    } catch (const std::exception&) {
      throw InputError("bad " + what + " entry: " + item);
    }
  }
  if (out.empty()) throw InputError(what + " list is empty");
  return out;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- discover

int cmd_discover(const InputFlags& in, const DiscoveryFlags& dflags,
                 CLI::App* cmd, const std::string& out, bool postprocess) {
  const PropertyGraph graph = load_or_input_error(make_source(in, kAllElements));
  const DiscoveryOptions opts = make_options(dflags, cmd);
  StageTimings timings;
  const SchemaGraph schema = discover_schema(graph, opts, postprocess, &timings);
  write_schema_files(schema, out);
  print_timings(timings);
  return 0;
}

// -------------------------------------------------------------- incremental

int cmd_incremental(const InputFlags& in, const DiscoveryFlags& dflags,
                    CLI::App* cmd, const std::string& out,
                    const std::string& batch_size_text, bool postprocess_each) {
  std::size_t batch_size = kAllElements;
  if (batch_size_text != "ALL") {
    try {
      batch_size = std::stoull(batch_size_text);
    } catch (const std::exception&) {
      throw InputError("bad --batch-size: " + batch_size_text);
    }
    if (batch_size < 1) throw InputError("--batch-size must be >= 1 or ALL");
  }

  std::vector<Batch> batches;
  try {
    batches = stream_batches(make_source(in, batch_size));
  } catch (const std::exception& e) {
    throw InputError(e.what());
  }

  const DiscoveryOptions opts = make_options(dflags, cmd);
  IncrementalDiscovery disc(opts);
  fs::create_directories(out);
  for (const auto& batch : batches) {
    disc.process_batch(batch.nodes, batch.edges);
    const bool final_batch = batch.index + 1 == batches.size();
    if (postprocess_each || final_batch) disc.postprocess_now();
    write_text(fs::path(out) / ("schema.batch" + std::to_string(batch.index) +
                                ".json"),
               schema_to_json(disc.schema()));
  }
  if (batches.empty()) disc.postprocess_now();
  write_schema_files(disc.schema(), out);
  print_timings(disc.timings());
  return 0;
}

// -------------------------------------------------------------- inject-noise

int cmd_inject_noise(const InputFlags& in, const std::string& out,
                     double drop_pct, double label_avail, std::uint64_t seed) {
  if (drop_pct < 0.0 || drop_pct > 1.0 || label_avail < 0.0 ||
      label_avail > 1.0)
    throw InputError("noise percentages must be in [0,1]");
  const PropertyGraph graph = load_or_input_error(make_source(in, kAllElements));
  GroundTruth truth;
  const PropertyGraph noisy =
      inject_noise(graph, NoiseProfile{drop_pct, label_avail, seed}, &truth);
  fs::create_directories(out);
  if (in.format == "csv")
    write_graph_csv_pair(noisy, (fs::path(out) / "nodes.csv").string(),
                         (fs::path(out) / "edges.csv").string());
  else
    write_graph_jsonl(noisy, (fs::path(out) / "graph.jsonl").string());
  write_text(fs::path(out) / "truth.json", truth_to_json(truth));
  return 0;
}

// -------------------------------------------------------------- gen-synthetic

int cmd_gen_synthetic(const std::string& spec_path, const std::string& out,
                      std::uint64_t seed, const std::string& format) {
  std::ifstream spec_in(spec_path, std::ios::binary);
  if (!spec_in) throw InputError("cannot read " + spec_path);
  std::stringstream buf;
  buf << spec_in.rdbuf();
  SyntheticSpec spec;
  try {
    spec = synthetic_spec_from_json(buf.str());
  } catch (const std::exception& e) {
    throw InputError(std::string("bad spec: ") + e.what());
  }
  const PropertyGraph graph = gen_synthetic(spec, seed);
  fs::create_directories(out);
  if (format == "csv")
    write_graph_csv_pair(graph, (fs::path(out) / "nodes.csv").string(),
                         (fs::path(out) / "edges.csv").string());
  else
    write_graph_jsonl(graph, (fs::path(out) / "graph.jsonl").string());
  write_text(fs::path(out) / "truth.json",
             truth_to_json(ground_truth_of(graph)));
  return 0;
}

// ------------------------------------------------------------------ evaluate

int cmd_evaluate(const InputFlags& in, const DiscoveryFlags& dflags,
                 CLI::App* cmd, const std::string& out,
                 const std::string& dataset, const std::string& grid_text,
                 const std::string& avail_text, const std::string& methods_text,
                 const std::string& seeds_text) {
  const PropertyGraph graph = load_or_input_error(make_source(in, kAllElements));
  const DiscoveryOptions base = make_options(dflags, cmd);
  const auto noise_grid = parse_list<double>(grid_text, "--grid");
  const auto avail_grid = parse_list<double>(avail_text, "--avail");
  const auto seeds = parse_list<std::uint64_t>(seeds_text, "--seeds");
  std::vector<LshMethod> methods;
  std::stringstream stream(methods_text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    if (item.empty()) continue;
    try {
      methods.push_back(lsh_method_from_name(item));
    } catch (const std::exception& e) {
      throw InputError(e.what());
    }
  }
  if (methods.empty()) throw InputError("--methods list is empty");

  const auto cells = run_benchmark(graph, dataset, noise_grid, avail_grid,
                                   methods, seeds, base, base.threads);
  write_text(fs::path(out) / "report.csv", benchmark_csv(cells));
  for (const auto& c : cells)
    if (!c.ok)
      std::cerr << "warning: cell (" << lsh_method_name(c.method) << ","
                << c.noise_pct << "," << c.label_avail << "," << c.seed
                << ") failed: " << c.error << "\n";
  return 0;
}

// --------------------------------------------------------------------- sweep

int cmd_sweep(const InputFlags& in, const DiscoveryFlags& dflags, CLI::App* cmd,
              const std::string& out, const std::string& alphas_text,
              const std::string& tables_text) {
  const PropertyGraph graph = load_or_input_error(make_source(in, kAllElements));
  const auto alphas = parse_list<double>(alphas_text, "--alphas");
  const auto tables = parse_list<std::uint64_t>(tables_text, "--tables-grid");
  const GroundTruth truth = ground_truth_of(graph);

  DiscoveryFlags adaptive_flags = dflags;
  adaptive_flags.method = "elsh";
  DiscoveryOptions base = make_options(adaptive_flags, cmd);
  base.method = LshMethod::Elsh;
  base.adaptive = true;

  // probe run: fixes the data-driven base bucket length and the adaptive row
  IncrementalDiscovery probe(base);
  {
    std::vector<Node> nodes;
    for (const auto& id : graph.node_order) nodes.push_back(graph.nodes.at(id));
    std::vector<Edge> edges;
    for (const auto& id : graph.edge_order) edges.push_back(graph.edges.at(id));
    probe.process_batch(nodes, edges);
  }
  double b_base = 1.0;
  int adaptive_tables = 1;
  if (!probe.last_estimates().empty()) {
    b_base = probe.last_estimates().front().b_base;
    adaptive_tables = probe.last_estimates().front().resolved.num_tables;
  }
  if (b_base <= 0.0) b_base = 1.0;

  std::string csv = "alpha,tables,nodeF1,edgeF1\n";
  auto score = [&](const SchemaGraph& schema) {
    return std::make_pair(
        majority_f1(schema.node_assignment, truth.node_type).macro_f1,
        majority_f1(schema.edge_assignment, truth.edge_type).macro_f1);
  };
  for (double alpha : alphas) {
    if (alpha <= 0.0) throw InputError("--alphas entries must be > 0");
    for (std::uint64_t t : tables) {
      if (t < 1) throw InputError("--tables-grid entries must be >= 1");
      DiscoveryOptions opts = base;
      opts.adaptive = false;
      opts.bucket_length = b_base * alpha;
      opts.num_tables = static_cast<int>(t);
      const auto [node_f1, edge_f1] =
          score(discover_schema(graph, opts, false));
      csv += fmt6(alpha) + "," + std::to_string(t) + "," + fmt6(node_f1) +
             "," + fmt6(edge_f1) + "\n";
    }
  }
  const auto [node_f1, edge_f1] = score(probe.schema());
  csv += "adaptive," + std::to_string(adaptive_tables) + "," + fmt6(node_f1) +
         "," + fmt6(edge_f1) + "\n";
  write_text(fs::path(out) / "sweep.csv", csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Property graph schema discovery"};
  app.require_subcommand(1);
  app.set_config("--config");

  InputFlags in;
  DiscoveryFlags dflags;
  std::string out;

  auto* discover = app.add_subcommand("discover", "one-shot schema discovery");
  bool postprocess = false;
  add_input_flags(discover, in);
  add_discovery_flags(discover, dflags);
  add_out_flag(discover, out);
  discover->add_flag("--postprocess", postprocess,
                     "infer constraints, datatypes and cardinalities");

  auto* incremental =
      app.add_subcommand("incremental", "batched schema discovery");
  std::string batch_size = "ALL";
  bool postprocess_each = false;
  add_input_flags(incremental, in);
  add_discovery_flags(incremental, dflags);
  add_out_flag(incremental, out);
  incremental->add_option("--batch-size", batch_size,
                          "elements per batch, or ALL");
  incremental->add_flag("--postprocess", postprocess_each,
                        "postprocess after every batch (the final batch is"
                        " always postprocessed)");

  auto* noise = app.add_subcommand("inject-noise", "degrade a graph for tests");
  double drop_pct = 0.0, label_avail = 1.0;
  std::uint64_t noise_seed = 0;
  add_input_flags(noise, in);
  add_out_flag(noise, out);
  noise->add_option("--drop-pct", drop_pct, "fraction of property instances"
                    " to remove");
  noise->add_option("--label-avail", label_avail,
                    "fraction of elements keeping their labels");
  noise->add_option("--seed", noise_seed, "noise seed");

  auto* synth = app.add_subcommand("gen-synthetic", "generate a labeled graph");
  std::string spec_path, synth_format = "jsonl";
  std::uint64_t synth_seed = 0;
  synth->add_option("--spec", spec_path, "synthetic spec JSON")->required();
  synth->add_option("--seed", synth_seed, "generation seed");
  synth->add_option("--format", synth_format, "jsonl or csv")
      ->check(CLI::IsMember({"jsonl", "csv"}));
  add_out_flag(synth, out);

  auto* evaluate =
      app.add_subcommand("evaluate", "noise/availability benchmark grid");
  std::string dataset = "dataset", grid_text = "0,0.1,0.2,0.3,0.4";
  std::string avail_text = "0,0.5,1", methods_text = "elsh,minhash";
  std::string seeds_text = "1,2,3";
  add_input_flags(evaluate, in);
  add_discovery_flags(evaluate, dflags);
  add_out_flag(evaluate, out);
  evaluate->add_option("--dataset", dataset, "dataset name for the CSV");
  evaluate->add_option("--grid", grid_text, "noise percentages");
  evaluate->add_option("--avail", avail_text, "label availabilities");
  evaluate->add_option("--methods", methods_text, "elsh,minhash subset");
  evaluate->add_option("--seeds", seeds_text, "seeds");

  auto* sweep = app.add_subcommand("sweep", "ELSH (alpha, T) grid");
  std::string alphas_text = "0.5,0.8,1,1.5,2", tables_grid_text = "5,10,15,20";
  add_input_flags(sweep, in);
  add_discovery_flags(sweep, dflags);
  add_out_flag(sweep, out);
  sweep->add_option("--alphas", alphas_text, "bucket length multipliers");
  sweep->add_option("--tables-grid", tables_grid_text, "table counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (discover->parsed())
      return cmd_discover(in, dflags, discover, out, postprocess);
    if (incremental->parsed())
      return cmd_incremental(in, dflags, incremental, out, batch_size,
                             postprocess_each);
    if (noise->parsed())
      return cmd_inject_noise(in, out, drop_pct, label_avail, noise_seed);
    if (synth->parsed())
      return cmd_gen_synthetic(spec_path, out, synth_seed, synth_format);
    if (evaluate->parsed())
      return cmd_evaluate(in, dflags, evaluate, out, dataset, grid_text,
                          avail_text, methods_text, seeds_text);
    if (sweep->parsed())
      return cmd_sweep(in, dflags, sweep, out, alphas_text, tables_grid_text);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
