#include "hycosbm/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "hycosbm/errors.hpp"

namespace hycosbm {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \r\n\t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \r\n\t");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  return out;
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

}  // namespace

std::vector<RawEdge> parse_hyperedges(std::istream& in) {
  std::vector<RawEdge> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    RawEdge e;
    std::string_view nodes_part = line;
    if (const auto tab = line.find('\t'); tab != std::string::npos) {
      nodes_part = std::string_view(line).substr(0, tab);
      const auto weight_text = trim(std::string_view(line).substr(tab + 1));
      long long w = 0;
      auto [ptr, ec] =
          std::from_chars(weight_text.data(), weight_text.data() + weight_text.size(), w);
      if (ec != std::errc() || ptr != weight_text.data() + weight_text.size())
        throw ValidationError("line " + std::to_string(line_no) + ": weight '" + weight_text +
                              "' is not an integer");
      if (w <= 0)
        throw ValidationError("line " + std::to_string(line_no) + ": non-positive weight");
      e.weight = static_cast<std::uint64_t>(w);
    }
    e.nodes = split(nodes_part, ',');
    for (const auto& n : e.nodes)
      if (n.empty()) throw ValidationError("line " + std::to_string(line_no) + ": empty node id");
    if (e.nodes.size() < 2)
      throw ValidationError("line " + std::to_string(line_no) + ": hyperedge with fewer than 2 nodes");
    edges.push_back(std::move(e));
  }
  return edges;
}

std::vector<RawEdge> read_hyperedge_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_hyperedges(in);
}

void write_hyperedges(std::ostream& out, const Hypergraph& graph,
                      const std::vector<std::size_t>& edge_ids) {
  const auto& ids = graph.node_ids();
  for (auto id : edge_ids) {
    const auto& e = graph.edge(id);
    for (std::size_t t = 0; t < e.nodes.size(); ++t) {
      if (t) out << ',';
      out << ids[e.nodes[t]];
    }
    if (e.weight != 1) out << '\t' << e.weight;
    out << '\n';
  }
}

void write_hyperedges(std::ostream& out, const Hypergraph& graph) {
  std::vector<std::size_t> all(graph.num_edges());
  for (std::size_t t = 0; t < all.size(); ++t) all[t] = t;
  write_hyperedges(out, graph, all);
}

void write_hyperedge_file(const std::filesystem::path& path, const Hypergraph& graph) {
  auto out = open_output(path);
  write_hyperedges(out, graph);
}

AttributeTable parse_attributes(std::istream& in) {
  AttributeTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    auto fields = split(content, ',');
    if (!header) {
      if (fields.size() < 2 || fields[0] != "node")
        throw ValidationError("attribute header must be 'node,<covariate>,...'");
      table.covariates.assign(fields.begin() + 1, fields.end());
      header = true;
      continue;
    }
    if (fields.size() != table.covariates.size() + 1)
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(table.covariates.size() + 1) + " fields");
    if (fields[0].empty())
      throw ValidationError("line " + std::to_string(line_no) + ": empty node id");
    table.nodes.push_back(fields[0]);
    table.values.emplace_back(fields.begin() + 1, fields.end());
  }
  if (!header) throw ValidationError("attribute file has no header");
  return table;
}

AttributeTable read_attribute_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_attributes(in);
}

void write_attributes(std::ostream& out, const AttributeMatrix& x,
                      const std::vector<std::string>& node_ids) {
  out << "node";
  for (const auto& g : x.groups()) out << ',' << g.name;
  out << '\n';
  for (std::size_t i = 0; i < x.num_nodes(); ++i) {
    out << node_ids[i];
    for (const auto& g : x.groups()) {
      std::string value;
      for (std::size_t j = 0; j < g.levels.size(); ++j)
        if (x(i, g.first_column + j)) value = g.levels[j];
      out << ',' << value;
    }
    out << '\n';
  }
}

void write_attribute_file(const std::filesystem::path& path, const AttributeMatrix& x,
                          const std::vector<std::string>& node_ids) {
  auto out = open_output(path);
  write_attributes(out, x, node_ids);
}

namespace {

std::vector<double> flat(const Matrix& m) { return {m.data().begin(), m.data().end()}; }

Matrix unflat(const nlohmann::json& j, std::size_t rows, std::size_t cols, const char* name) {
  const auto values = j.get<std::vector<double>>();
  if (values.size() != rows * cols)
    throw ValidationError(std::string("params document: '") + name + "' has " +
                          std::to_string(values.size()) + " entries, expected " +
                          std::to_string(rows * cols));
  Matrix m(rows, cols);
  std::copy(values.begin(), values.end(), m.data().begin());
  return m;
}

}  // namespace

nlohmann::ordered_json params_to_json(const ParamsDocument& doc) {
  nlohmann::ordered_json j;
  j["format"] = "hycosbm-params/1";
  j["N"] = doc.params.num_nodes();
  j["K"] = doc.params.num_communities();
  j["Z"] = doc.params.num_attributes();
  j["gamma"] = doc.gamma;
  j["seed"] = doc.seed;
  j["loglik"] = doc.loglik;
  j["u"] = flat(doc.params.u);
  j["w"] = flat(doc.params.w);
  j["beta"] = flat(doc.params.beta);
  j["node_ids"] = doc.node_ids;
  return j;
}

ParamsDocument params_from_json(const nlohmann::json& j) {
  try {
    ParamsDocument doc;
    const auto n = j.at("N").get<std::size_t>();
    const auto k = j.at("K").get<std::size_t>();
    const auto z = j.at("Z").get<std::size_t>();
    doc.gamma = j.at("gamma").get<double>();
    doc.seed = j.at("seed").get<std::uint64_t>();
    doc.loglik = j.at("loglik").get<double>();
    doc.params.u = unflat(j.at("u"), n, k, "u");
    doc.params.w = unflat(j.at("w"), k, k, "w");
    doc.params.beta = z > 0 ? unflat(j.at("beta"), k, z, "beta") : Matrix();
    if (j.contains("node_ids")) doc.node_ids = j.at("node_ids").get<std::vector<std::string>>();
    if (!doc.node_ids.empty() && doc.node_ids.size() != n)
      throw ValidationError("params document: node_ids length differs from N");
    check_params(doc.params, 1e-6);
    return doc;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed params document: ") + e.what());
  }
}

ParamsDocument read_params_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("cannot parse " + path.string() + ": " + e.what());
  }
  return params_from_json(j);
}

nlohmann::ordered_json fit_to_json(const FitResult& fit, const FitConfig& config,
                                   const std::vector<std::string>& node_ids) {
  auto j = params_to_json({fit.params, config.gamma, config.seed, fit.final_loglik, node_ids});
  j["iterations"] = fit.iterations_run;
  j["best_restart"] = fit.best_restart;
  nlohmann::ordered_json restarts = nlohmann::ordered_json::array();
  for (const auto& r : fit.restarts)
    restarts.push_back({{"index", r.index},
                        {"loglik", r.final_loglik},
                        {"iterations", r.iterations},
                        {"converged", r.converged},
                        {"aborted", r.aborted}});
  j["restarts"] = restarts;
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& t : fit.trace) trace.push_back({t.iteration, t.loglik.total});
  j["trace"] = trace;
  const auto& d = fit.diagnostics;
  j["diagnostics"] = {{"clamped_intensities", d.clamped_intensities},
                      {"zero_w_denominators", d.zero_w_denominators},
                      {"degenerate_beta_columns", d.degenerate_beta_columns},
                      {"negative_discriminants", d.negative_discriminants},
                      {"root_precondition_misses", d.root_precondition_misses},
                      {"saturated_u", d.saturated_u}};
  return j;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << "iteration,L_A,L_X,L\n";
  for (const auto& t : trace)
    out << t.iteration << ',' << format_double(t.loglik.structure) << ','
        << format_double(t.loglik.attributes) << ',' << format_double(t.loglik.total) << '\n';
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "K,gamma,fold,auc\n";
  for (const auto& cell : report.cells)
    for (std::size_t f = 0; f < cell.fold_auc.size(); ++f)
      out << cell.num_communities << ',' << format_double(cell.gamma) << ',' << f << ','
          << format_double(cell.fold_auc[f]) << '\n';
  const auto& best = report.best();
  out << best.num_communities << ',' << format_double(best.gamma) << ",mean,"
      << format_double(best.mean_auc) << '\n';
}

std::string file_sha256(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  EVP_DigestFinal_ex(ctx, md.data(), &len);
  EVP_MD_CTX_free(ctx);
  std::ostringstream hex;
  for (unsigned int t = 0; t < len; ++t)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[t]);
  return hex.str();
}

}  // namespace hycosbm
