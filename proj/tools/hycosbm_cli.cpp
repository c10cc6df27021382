// hycosbm: command-line front end.
//
//   hycosbm fit EDGES [ATTRS] --k K --gamma G --out DIR
//   hycosbm cv EDGES [ATTRS] --k-range 2:10 --gamma-grid 0,0.5,0.995 --out DIR
//   hycosbm auc TEST_EDGES PARAMS --mode uniform|soo
//   hycosbm generate --config gen.json --out-dir DIR [--instances N]
//   hycosbm delete-edges EDGES --keep-fraction F [--keep-connected] --out FILE
//
// Exit codes: 0 success, 1 validation error, 2 numerical failure.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <CLI11.hpp>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "hycosbm/deletion.hpp"
#include "hycosbm/em.hpp"
#include "hycosbm/errors.hpp"
#include "hycosbm/evaluation.hpp"
#include "hycosbm/io.hpp"
#include "hycosbm/synthgen.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace hycosbm;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Common {
  std::size_t threads = 1;
  bool deterministic = false;
  bool quiet = false;
  bool verbose = false;
};

struct FitOptions {
  std::string edges;
  std::string attributes;
  std::size_t k = 2;
  double gamma = 0.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 10;
  std::size_t max_iter = 1000;
  std::size_t check_every = 10;
  double tol = 1e-2;
  std::size_t patience = 2;
  std::string out;
};

struct CvOptions {
  FitOptions fit;
  std::string k_range = "2:30";
  std::string gamma_grid = "0,0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9,0.95,0.99,0.995,1";
  std::size_t folds = 5;
};

struct AucOptions {
  std::string edges;
  std::string params;
  std::string mode = "uniform";
  std::vector<std::string> context;
  std::uint64_t seed = 0;
  std::string out;
};

struct GenerateOptions {
  std::string config;
  std::string out_dir;
  std::size_t instances = 1;
};

struct DeleteOptions {
  std::string edges;
  double keep_fraction = 1.0;
  bool keep_connected = false;
  std::uint64_t seed = 0;
  std::string out;
};

std::string now_iso8601() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> argv)
      : start_(std::chrono::steady_clock::now()) {
    doc_["command"] = std::move(command);
    doc_["argv"] = std::move(argv);
    doc_["tool_version"] = kVersion;
    doc_["started_at"] = now_iso8601();
    doc_["inputs"] = json::array();
    doc_["outputs"] = json::array();
  }

  void config(json c) { doc_["config"] = std::move(c); }
  void seed(std::uint64_t s) { doc_["seed"] = s; }
  void input(const fs::path& p) {
    doc_["inputs"].push_back({{"path", p.string()}, {"sha256", file_sha256(p)}});
  }
  void output(const fs::path& p) { doc_["outputs"].push_back(p.string()); }
  json& extra() { return doc_; }

  void write(const fs::path& path) {
    doc_["wall_clock_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path.string());
    out << doc_.dump(2) << '\n';
  }

 private:
  json doc_;
  std::chrono::steady_clock::time_point start_;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  out << text;
}

fs::path ensure_dir(const std::string& dir) {
  if (dir.empty()) throw ValidationError("an output directory is required");
  fs::create_directories(dir);
  return dir;
}

struct Dataset {
  Hypergraph graph;
  std::optional<AttributeMatrix> attributes;
};

Dataset load_dataset(const std::string& edges, const std::string& attributes, Manifest& m) {
  m.input(edges);
  auto raw = read_hyperedge_file(edges);
  if (attributes.empty()) return {build_hypergraph(raw), std::nullopt};
  m.input(attributes);
  const auto table = read_attribute_file(attributes);
  auto graph = build_hypergraph(raw, table.nodes);
  auto x = one_hot_encode(table, graph.node_ids());
  return {std::move(graph), std::move(x)};
}

FitConfig to_fit_config(const FitOptions& o, const Common& c) {
  FitConfig cfg;
  cfg.num_communities = o.k;
  cfg.gamma = o.gamma;
  cfg.seed = o.seed;
  cfg.restarts = o.restarts;
  cfg.max_iters = o.max_iter;
  cfg.check_every = o.check_every;
  cfg.tol = o.tol;
  cfg.patience = o.patience;
  cfg.threads = c.threads;
  return cfg;
}

json fit_config_json(const FitConfig& cfg, const Common& c) {
  return {{"K", cfg.num_communities},     {"gamma", cfg.gamma},
          {"seed", cfg.seed},             {"restarts", cfg.restarts},
          {"max_iters", cfg.max_iters},   {"check_every", cfg.check_every},
          {"tol", cfg.tol},               {"patience", cfg.patience},
          {"threads", c.threads},         {"deterministic", c.deterministic}};
}

std::vector<std::size_t> parse_k_range(const std::string& text) {
  std::vector<std::size_t> ks;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      if (const auto colon = part.find(':'); colon != std::string::npos) {
        const auto lo = std::stoul(part.substr(0, colon));
        const auto hi = std::stoul(part.substr(colon + 1));
        if (lo > hi) throw ValidationError("empty K range '" + part + "'");
        for (auto k = lo; k <= hi; ++k) ks.push_back(k);
      } else {
        ks.push_back(std::stoul(part));
      }
    } catch (const std::logic_error&) {
      throw ValidationError("cannot parse K range '" + text + "'");
    }
  }
  return ks;
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (part.empty()) continue;
    try {
      out.push_back(std::stod(part));
    } catch (const std::logic_error&) {
      throw ValidationError("cannot parse gamma grid '" + text + "'");
    }
  }
  return out;
}

int cmd_fit(const FitOptions& o, const Common& c, const std::vector<std::string>& argv) {
  if (o.gamma > 0.0 && o.attributes.empty())
    throw ValidationError("gamma > 0 requires an attribute file");
  Manifest m("fit", argv);
  const auto cfg = to_fit_config(o, c);
  cfg.validate();
  m.config(fit_config_json(cfg, c));
  m.seed(cfg.seed);
  const auto out = ensure_dir(o.out);
  const auto data = load_dataset(o.edges, o.attributes, m);
  spdlog::info("N = {}, |E| = {}, D = {}, Z = {}", data.graph.num_nodes(), data.graph.num_edges(),
               data.graph.max_size(), data.attributes ? data.attributes->num_columns() : 0);

  const auto fit = em_fit(data.graph, data.attributes ? &*data.attributes : nullptr, cfg);
  for (const auto& r : fit.restarts)
    spdlog::debug("restart {}: loglik {} after {} iterations{}", r.index, r.final_loglik,
                  r.iterations, r.aborted ? " (aborted: " + r.message + ")" : "");
  spdlog::info("best restart {} with log-likelihood {}", fit.best_restart, fit.final_loglik);
  if (fit.diagnostics.clamped_intensities > 0)
    spdlog::warn("{} observed-hyperedge intensities clamped", fit.diagnostics.clamped_intensities);

  write_text(out / "params.json", fit_to_json(fit, cfg, data.graph.node_ids()).dump(2) + "\n");
  std::ostringstream trace;
  write_trace_csv(trace, fit.trace);
  write_text(out / "trace.csv", trace.str());
  m.output(out / "params.json");
  m.output(out / "trace.csv");
  m.write(out / "manifest.json");
  return 0;
}

int cmd_cv(const CvOptions& o, const Common& c, const std::vector<std::string>& argv) {
  CVGrid grid;
  grid.ks = parse_k_range(o.k_range);
  grid.gammas = parse_grid(o.gamma_grid);
  grid.folds = o.folds;
  grid.seed = o.fit.seed;
  grid.validate();
  const bool needs_x =
      std::any_of(grid.gammas.begin(), grid.gammas.end(), [](double g) { return g > 0.0; });
  if (needs_x && o.fit.attributes.empty())
    throw ValidationError("gamma > 0 in the grid requires an attribute file");

  Manifest m("cv", argv);
  auto base = to_fit_config(o.fit, c);
  auto config = fit_config_json(base, c);
  config.erase("K");
  config.erase("gamma");
  config["k_values"] = grid.ks;
  config["gamma_values"] = grid.gammas;
  config["folds"] = grid.folds;
  m.config(config);
  m.seed(grid.seed);
  const auto out = ensure_dir(o.fit.out);
  const auto data = load_dataset(o.fit.edges, o.fit.attributes, m);

  const auto report =
      kfold_cv(data.graph, data.attributes ? &*data.attributes : nullptr, grid, base);
  std::ostringstream csv;
  write_report_csv(csv, report);
  write_text(out / "report.csv", csv.str());
  const auto& best = report.best();
  std::cout << "selected K=" << best.num_communities << " gamma=" << best.gamma
            << " auc=" << best.mean_auc << " +/- " << best.std_auc << '\n';
  if (report.resample_failures > 0)
    spdlog::warn("{} negatives matched observed hyperedges after 100 redraws",
                 report.resample_failures);
  m.extra()["selected"] = {{"K", best.num_communities},
                           {"gamma", best.gamma},
                           {"mean_auc", best.mean_auc},
                           {"std_auc", best.std_auc}};
  m.output(out / "report.csv");
  m.write(out / "manifest.json");
  return 0;
}

int cmd_auc(const AucOptions& o, const Common& c, const std::vector<std::string>& argv) {
  (void)c;
  if (o.mode != "uniform" && o.mode != "soo") throw ValidationError("mode must be uniform or soo");
  Manifest m("auc", argv);
  m.config({{"mode", o.mode}, {"seed", o.seed}, {"context", o.context}});
  m.seed(o.seed);
  m.input(o.edges);
  m.input(o.params);
  const auto doc = read_params_file(o.params);
  if (doc.node_ids.empty()) throw ValidationError("params document has no node_ids table");

  std::vector<RawEdge> raw = read_hyperedge_file(o.edges);
  const auto n_test = raw.size();
  for (const auto& ctx : o.context) {
    m.input(ctx);
    auto more = read_hyperedge_file(ctx);
    raw.insert(raw.end(), more.begin(), more.end());
  }
  // known_nodes pins the params' node order; unknown labels extend N and are
  // caught by the size check below.
  const auto test_graph = build_hypergraph(
      std::vector<RawEdge>(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(n_test)),
      doc.node_ids);
  const auto context = build_hypergraph(raw, doc.node_ids);
  if (context.num_nodes() != doc.params.num_nodes())
    throw ValidationError("hyperedge files mention " +
                          std::to_string(context.num_nodes() - doc.params.num_nodes()) +
                          " node(s) absent from the params document");

  json result{{"mode", o.mode}, {"test_edges", test_graph.num_edges()}};
  double auc = 0.0;
  if (o.mode == "uniform") {
    const auto r = auc_prediction(test_graph.edges(), doc.params, context, o.seed);
    auc = r.auc;
    result["resample_failures"] = r.resample_failures;
    std::cout << "auc=" << auc << " comparisons=" << r.comparisons
              << " resample_failures=" << r.resample_failures << '\n';
  } else {
    const auto neg = soo_negatives(test_graph.edges(), context.num_nodes(), o.seed);
    const auto r = auc_with_negatives(test_graph.edges(), neg, doc.params, context.num_nodes());
    auc = r.auc;
    std::map<std::size_t, std::pair<double, std::size_t>> by_size;
    for (std::size_t t = 0; t < neg.size(); ++t) {
      auto& slot = by_size[neg[t].size()];
      slot.first += jaccard(test_graph.edge(t).nodes, neg[t]);
      ++slot.second;
    }
    std::cout << "auc=" << auc << " comparisons=" << r.comparisons << '\n';
    json sizes = json::array();
    for (const auto& [size, slot] : by_size) {
      const double mean = slot.first / static_cast<double>(slot.second);
      std::cout << "size=" << size << " count=" << slot.second << " jaccard=" << mean << '\n';
      sizes.push_back({{"size", size}, {"count", slot.second}, {"jaccard", mean}});
    }
    result["jaccard_by_size"] = sizes;
  }
  result["auc"] = auc;
  if (!o.out.empty()) {
    const auto out = ensure_dir(o.out);
    write_text(out / "auc.json", result.dump(2) + "\n");
    m.output(out / "auc.json");
    m.write(out / "manifest.json");
  }
  return 0;
}

GenConfig parse_gen_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  nlohmann::json j;
  try {
    in >> j;
    GenConfig cfg;
    if (j.value("preset", std::string()) == "benchmark")
      cfg = GenConfig::benchmark(j.value("K", std::size_t{2}), j.value("rho_match", 1.0),
                                 j.value("seed", std::uint64_t{0}));
    cfg.num_nodes = j.value("N", cfg.num_nodes);
    cfg.num_communities = j.value("K", cfg.num_communities);
    cfg.rho_match = j.value("rho_match", cfg.rho_match);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.pilot_samples = j.value("pilot_samples", cfg.pilot_samples);
    if (j.contains("dim_seq")) {
      cfg.dim_seq.clear();
      for (const auto& [size, count] : j.at("dim_seq").items())
        cfg.dim_seq[std::stoul(size)] = count.get<std::size_t>();
    }
    if (j.contains("planted")) {
      const auto& p = j.at("planted");
      const auto n = cfg.num_nodes, k = cfg.num_communities;
      ModelParams planted{Matrix(n, k), Matrix(k, k), Matrix()};
      const auto u = p.at("u").get<std::vector<double>>();
      const auto w = p.at("w").get<std::vector<double>>();
      if (u.size() != n * k || w.size() != k * k)
        throw ValidationError("planted u must have N*K and w K*K entries");
      std::copy(u.begin(), u.end(), planted.u.data().begin());
      std::copy(w.begin(), w.end(), planted.w.data().begin());
      cfg.planted = planted;
    }
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("malformed generator config: " + std::string(e.what()));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const ValidationError*>(&e)) throw;
    throw ValidationError("malformed generator config: " + std::string(e.what()));
  }
}

int cmd_generate(const GenerateOptions& o, const Common& c, const std::vector<std::string>& argv) {
  (void)c;
  if (o.instances < 1) throw ValidationError("--instances must be positive");
  const auto base = parse_gen_config(o.config);
  base.validate();
  const auto root = ensure_dir(o.out_dir);
  for (std::size_t r = 0; r < o.instances; ++r) {
    auto cfg = base;
    cfg.seed = base.seed + r;
    const auto dir = o.instances == 1 ? root : root / ("instance_" + std::to_string(r));
    fs::create_directories(dir);
    Manifest m("generate", argv);
    m.input(o.config);
    m.seed(cfg.seed);
    json dims = json::object();
    for (auto [size, count] : cfg.dim_seq) dims[std::to_string(size)] = count;
    m.config({{"N", cfg.num_nodes},
              {"K", cfg.num_communities},
              {"rho_match", cfg.rho_match},
              {"seed", cfg.seed},
              {"pilot_samples", cfg.pilot_samples},
              {"planted", cfg.planted.has_value() ? "user" : "random"},
              {"dim_seq", dims}});

    const auto gen = generate_hypergraph(cfg);
    const auto x = generate_attributes(gen.truth.u, cfg.rho_match, cfg.num_communities,
                                       CounterRng(cfg.seed).substream(1000)());
    write_hyperedge_file(dir / "edges.txt", gen.graph);
    write_attribute_file(dir / "attributes.csv", x, gen.graph.node_ids());
    const auto truth = params_to_json({gen.truth, cfg.rho_match, cfg.seed, 0.0, gen.graph.node_ids()});
    write_text(dir / "truth.json", truth.dump(2) + "\n");
    json acceptance = json::array();
    for (const auto& s : gen.acceptance)
      acceptance.push_back({{"size", s.size},
                            {"accepted", s.accepted},
                            {"proposed", s.proposed},
                            {"lambda_max", s.lambda_max}});
    m.extra()["acceptance"] = acceptance;
    for (const char* f : {"edges.txt", "attributes.csv", "truth.json"}) m.output(dir / f);
    m.write(dir / "manifest.json");
    spdlog::info("wrote {} (N = {}, |E| = {})", dir.string(), gen.graph.num_nodes(),
                 gen.graph.num_edges());
  }
  return 0;
}

int cmd_delete(const DeleteOptions& o, const Common& c, const std::vector<std::string>& argv) {
  (void)c;
  if (o.out.empty()) throw ValidationError("--out is required");
  Manifest m("delete-edges", argv);
  m.config({{"keep_fraction", o.keep_fraction},
            {"keep_connected", o.keep_connected},
            {"connectivity", "node-hyperedge incidence graph"},
            {"seed", o.seed}});
  m.seed(o.seed);
  m.input(o.edges);
  const auto graph = build_hypergraph(read_hyperedge_file(o.edges));
  const auto result = delete_edges(graph, o.keep_fraction, o.keep_connected, o.seed);
  if (!result.target_reached)
    spdlog::warn("kept {} hyperedges; target {} is unreachable without disconnecting",
                 result.kept.size(), result.target);
  const fs::path out = o.out;
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  std::ofstream file(out);
  if (!file) throw ValidationError("cannot write " + out.string());
  write_hyperedges(file, graph, result.kept);
  file.close();
  m.extra()["kept"] = result.kept.size();
  m.extra()["target"] = result.target;
  m.extra()["target_reached"] = result.target_reached;
  m.output(out);
  m.write(out.string() + ".manifest.json");
  std::cout << "kept=" << result.kept.size() << " of " << graph.num_edges() << '\n';
  return 0;
}

void add_fit_options(CLI::App* cmd, FitOptions& o, bool attributes_required) {
  cmd->add_option("edges", o.edges, "Hyperedge file")->required()->check(CLI::ExistingFile);
  auto* attr = cmd->add_option("attributes", o.attributes, "Node attribute file (CSV)")
                   ->check(CLI::ExistingFile);
  if (attributes_required) attr->required();
  cmd->add_option("--seed", o.seed, "Root random seed")->capture_default_str();
  cmd->add_option("--restarts", o.restarts, "EM restarts")->capture_default_str();
  cmd->add_option("--max-iter", o.max_iter, "Maximum EM iterations")->capture_default_str();
  cmd->add_option("--check-every", o.check_every, "Iterations between convergence checks")
      ->capture_default_str();
  cmd->add_option("--tol", o.tol, "Absolute log-likelihood change threshold")
      ->capture_default_str();
  cmd->add_option("--patience", o.patience, "Consecutive passing checks to stop")
      ->capture_default_str();
  cmd->add_option("--out", o.out, "Output directory")->required();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Community detection in hypergraphs with node attributes"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--threads", common.threads, "Worker threads for restarts and CV cells")
      ->capture_default_str();
  app.add_flag("--deterministic", common.deterministic,
               "Fixed summation order (always on; recorded in the manifest)");
  app.add_flag("--quiet", common.quiet, "Only print errors");
  app.add_flag("--verbose", common.verbose, "Print per-restart details");

  FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit", "Fit the model to a hypergraph");
  add_fit_options(fit_cmd, fit, false);
  fit_cmd->add_option("--k", fit.k, "Number of communities")->capture_default_str();
  fit_cmd->add_option("--gamma", fit.gamma, "Attribute weight in [0,1]")->capture_default_str();

  CvOptions cv;
  auto* cv_cmd = app.add_subcommand("cv", "Cross-validate K and gamma by hyperedge-prediction AUC");
  add_fit_options(cv_cmd, cv.fit, false);
  cv_cmd->add_option("--k-range", cv.k_range, "K values, e.g. 2:30 or 2,4,8")->capture_default_str();
  cv_cmd->add_option("--gamma-grid", cv.gamma_grid, "Comma-separated gamma values")
      ->capture_default_str();
  cv_cmd->add_option("--folds", cv.folds, "Number of folds")->capture_default_str();

  AucOptions auc;
  auto* auc_cmd = app.add_subcommand("auc", "Hyperedge-prediction AUC of fitted parameters");
  auc_cmd->add_option("edges", auc.edges, "Test hyperedge file")->required()->check(CLI::ExistingFile);
  auc_cmd->add_option("params", auc.params, "Params document from `fit`")
      ->required()
      ->check(CLI::ExistingFile);
  auc_cmd->add_option("--mode", auc.mode, "Negative sampling: uniform or soo (switch-one-out)")
      ->check(CLI::IsMember({"uniform", "soo"}))
      ->capture_default_str();
  auc_cmd->add_option("--context", auc.context,
                      "Further observed hyperedge files excluded from uniform negatives")
      ->check(CLI::ExistingFile);
  auc_cmd->add_option("--seed", auc.seed, "Negative-sampling seed")->capture_default_str();
  auc_cmd->add_option("--out", auc.out, "Optional output directory for auc.json and manifest");

  GenerateOptions gen;
  auto* gen_cmd = app.add_subcommand("generate", "Generate attributed synthetic hypergraphs");
  gen_cmd->add_option("--config", gen.config, "Generator config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--out-dir", gen.out_dir, "Output directory")->required();
  gen_cmd->add_option("--instances", gen.instances, "Instances with seeds seed, seed+1, ...")
      ->capture_default_str();

  DeleteOptions del;
  auto* del_cmd = app.add_subcommand(
      "delete-edges",
      "Remove a random fraction of hyperedges. Connectivity is measured on the node-hyperedge "
      "incidence graph (equivalently the union of cliques over hyperedges).");
  del_cmd->add_option("edges", del.edges, "Hyperedge file")->required()->check(CLI::ExistingFile);
  del_cmd->add_option("--keep-fraction", del.keep_fraction, "Fraction of hyperedges to keep")
      ->required();
  del_cmd->add_flag("--keep-connected", del.keep_connected,
                    "Skip removals that would increase the number of components");
  del_cmd->add_option("--seed", del.seed, "Random seed")->capture_default_str();
  del_cmd->add_option("--out", del.out, "Output hyperedge file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  auto logger = spdlog::stderr_color_mt("hycosbm");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(common.quiet     ? spdlog::level::err
                    : common.verbose ? spdlog::level::debug
                                     : spdlog::level::info);

  try {
    if (*fit_cmd) return cmd_fit(fit, common, args);
    if (*cv_cmd) return cmd_cv(cv, common, args);
    if (*auc_cmd) return cmd_auc(auc, common, args);
    if (*gen_cmd) return cmd_generate(gen, common, args);
    if (*del_cmd) return cmd_delete(del, common, args);
  } catch (const ValidationError& e) {
    spdlog::error("{}", e.what());
    return 1;
  } catch (const NumericalError& e) {
    spdlog::error("{}", e.what());
    return 2;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 1;
}
