#include <doctest.h>

#include <filesystem>
#include <map>
#include <sstream>

#include "hycosbm/errors.hpp"
#include "hycosbm/hypergraph.hpp"
#include "hycosbm/io.hpp"
#include "oracles.hpp"

using namespace hycosbm;

namespace {
std::filesystem::path data_dir() { return HYCOSBM_TEST_DATA_DIR; }
}

TEST_CASE("build_hypergraph merges duplicate node sets") {
  const auto h = build_hypergraph({{{"a", "b"}, 1}, {{"b", "a"}, 2}});
  CHECK(h.num_nodes() == 2);
  REQUIRE(h.num_edges() == 1);
  CHECK(h.edge(0).weight == 3);
  CHECK(h.edge(0).nodes == std::vector<NodeId>{0, 1});
}

TEST_CASE("build_hypergraph counts nodes and max size") {
  const auto h = build_hypergraph({{{"a", "b", "c"}, 1}});
  CHECK(h.num_nodes() == 3);
  CHECK(h.max_size() == 3);
  CHECK(h.num_edges() == 1);
  CHECK(h.node_ids() == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("build_hypergraph rejects bad input") {
  CHECK_THROWS_AS(build_hypergraph({}), ValidationError);
  CHECK_THROWS_AS(build_hypergraph({{{"a"}, 1}}), ValidationError);
  CHECK_THROWS_AS(build_hypergraph({{{"a", "b"}, 0}}), ValidationError);
  CHECK_THROWS_AS(build_hypergraph({{{"a", "b", "a"}, 1}}), ValidationError);
}

TEST_CASE("known nodes come first and may be isolated") {
  const auto h = build_hypergraph({{{"x", "y"}, 1}}, {"z", "y"});
  CHECK(h.num_nodes() == 3);
  CHECK(h.node_ids() == std::vector<std::string>{"z", "y", "x"});
  CHECK(h.edge(0).nodes == std::vector<NodeId>{0 + 1, 2});
}

TEST_CASE("subgraph keeps the node universe and D") {
  const auto h = build_hypergraph({{{"a", "b", "c", "d"}, 1}, {{"a", "b"}, 2}});
  const std::vector<std::size_t> keep{1};
  const auto sub = h.subgraph(keep);
  CHECK(sub.num_nodes() == 4);
  CHECK(sub.max_size() == 4);
  CHECK(sub.num_edges() == 1);
  CHECK(sub.total_weight() == 2);
}

TEST_CASE("incidence index examples") {
  {
    Hypergraph h(2, {{{0, 1}, 1}});
    IncidenceIndex idx(h);
    CHECK(std::vector<std::size_t>(idx.edges_of(0).begin(), idx.edges_of(0).end()) ==
          std::vector<std::size_t>{0});
    CHECK(idx.edges_of(1).size() == 1);
  }
  {
    Hypergraph h(3, {{{0, 1}, 1}, {{0, 2}, 1}});
    CHECK(incidence_index(h).edges_of(0).size() == 2);
  }
}

TEST_CASE("incidence index is the exact inverse map") {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = oracle::random_hypergraph(15, 12, 6, rng);
    std::size_t direct = 0;
    for (const auto& e : h.edges()) direct += e.nodes.size();
    IncidenceIndex idx(h);
    CHECK(idx.total_length() == direct);
    CHECK(idx.total_length() == h.total_incidences());
    for (NodeId i = 0; i < h.num_nodes(); ++i) {
      std::size_t prev = 0;
      bool first = true;
      for (auto id : idx.edges_of(i)) {
        const auto& nodes = h.edge(id).nodes;
        CHECK(std::find(nodes.begin(), nodes.end(), i) != nodes.end());
        if (!first) CHECK(id > prev);
        prev = id;
        first = false;
      }
      std::size_t containing = 0;
      for (const auto& e : h.edges())
        containing += std::count(e.nodes.begin(), e.nodes.end(), i);
      CHECK(idx.edges_of(i).size() == containing);
    }
  }
}

TEST_CASE("incidence index total length 47") {
  // sizes chosen to sum to 47
  std::vector<Hyperedge> edges;
  CounterRng rng(5);
  const std::vector<std::size_t> sizes{5, 7, 3, 9, 2, 6, 4, 8, 3};
  for (auto s : sizes) {
    std::vector<NodeId> pool(20);
    for (NodeId i = 0; i < 20; ++i) pool[i] = i;
    rng.shuffle(std::span<NodeId>(pool));
    pool.resize(s);
    edges.push_back({pool, 1});
  }
  Hypergraph h(20, edges);
  std::size_t direct = 0;
  for (const auto& e : h.edges()) direct += e.nodes.size();
  REQUIRE(direct == 47);
  CHECK(IncidenceIndex(h).total_length() == 47);
}

TEST_CASE("one_hot_encode") {
  SUBCASE("single binary covariate") {
    AttributeTable t{{"kind"}, {"n1", "n2"}, {{"A"}, {"B"}}};
    const auto x = one_hot_encode(t, {"n1", "n2"});
    CHECK(x.num_columns() == 2);
    CHECK(x(0, 0));
    CHECK_FALSE(x(0, 1));
    CHECK(x(1, 1));
  }
  SUBCASE("Z is the sum of level counts") {
    AttributeTable t{{"p", "q"},
                     {"a", "b", "c"},
                     {{"x", "1"}, {"y", "2"}, {"x", "3"}}};
    const auto x = one_hot_encode(t, {"a", "b", "c"});
    CHECK(x.num_columns() == 5);
    REQUIRE(x.groups().size() == 2);
    CHECK(x.groups()[1].first_column == 2);
    for (std::size_t i = 0; i < 3; ++i)
      for (const auto& g : x.groups()) {
        int ones = 0;
        for (std::size_t j = 0; j < g.levels.size(); ++j) ones += x(i, g.first_column + j);
        CHECK(ones == 1);
      }
  }
  SUBCASE("rows can be in any order") {
    AttributeTable t{{"kind"}, {"n2", "n1"}, {{"B"}, {"A"}}};
    const auto x = one_hot_encode(t, {"n1", "n2"});
    CHECK(x(0, 0));
    CHECK(x(1, 1));
  }
  SUBCASE("errors") {
    AttributeTable unknown{{"kind"}, {"n1", "zz"}, {{"A"}, {"B"}}};
    CHECK_THROWS_AS(one_hot_encode(unknown, {"n1", "n2"}), ValidationError);
    AttributeTable missing{{"kind"}, {"n1"}, {{"A"}}};
    CHECK_THROWS_AS(one_hot_encode(missing, {"n1", "n2"}), ValidationError);
    AttributeTable empty_value{{"kind"}, {"n1", "n2"}, {{"A"}, {""}}};
    CHECK_THROWS_AS(one_hot_encode(empty_value, {"n1", "n2"}), ValidationError);
  }
}

TEST_CASE("hyperedge file parsing") {
  std::istringstream in("# comment\na,b,c\n\nb,a\t4\n c , d \t 2\n");
  const auto raw = parse_hyperedges(in);
  REQUIRE(raw.size() == 3);
  CHECK(raw[0].nodes == std::vector<std::string>{"a", "b", "c"});
  CHECK(raw[0].weight == 1);
  CHECK(raw[1].weight == 4);
  CHECK(raw[2].nodes == std::vector<std::string>{"c", "d"});

  std::istringstream bad_weight("a,b\tx\n");
  CHECK_THROWS_AS(parse_hyperedges(bad_weight), ValidationError);
  std::istringstream negative("a,b\t-1\n");
  CHECK_THROWS_AS(parse_hyperedges(negative), ValidationError);
  std::istringstream single("a\n");
  CHECK_THROWS_AS(parse_hyperedges(single), ValidationError);
}

TEST_CASE("hypergraph write/read round trip preserves the weighted edge multiset") {
  CounterRng rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = oracle::random_hypergraph(12, 25, 5, rng);
    std::stringstream buf;
    write_hyperedges(buf, h);
    const auto back = build_hypergraph(parse_hyperedges(buf));
    auto as_multiset = [](const Hypergraph& g) {
      std::map<std::vector<std::string>, std::uint64_t> m;
      for (const auto& e : g.edges()) {
        std::vector<std::string> labels;
        for (auto i : e.nodes) labels.push_back(g.node_ids()[i]);
        std::sort(labels.begin(), labels.end());
        m[labels] += e.weight;
      }
      return m;
    };
    CHECK(as_multiset(back) == as_multiset(h));
  }
}

TEST_CASE("attribute file round trip") {
  std::istringstream in("node,role,floor\nu1,boss,2\nu2,staff,1\n");
  const auto table = parse_attributes(in);
  const auto x = one_hot_encode(table, {"u1", "u2"});
  std::stringstream out;
  write_attributes(out, x, {"u1", "u2"});
  const auto again = one_hot_encode(parse_attributes(out), {"u1", "u2"});
  CHECK(again.num_columns() == x.num_columns());
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t z = 0; z < x.num_columns(); ++z) CHECK(again(i, z) == x(i, z));

  std::istringstream no_header("u1,boss\n");
  CHECK_THROWS_AS(parse_attributes(no_header), ValidationError);
  std::istringstream ragged("node,role\nu1,boss,extra\n");
  CHECK_THROWS_AS(parse_attributes(ragged), ValidationError);
}

TEST_CASE("bundled fixture loads") {
  const auto h = build_hypergraph(read_hyperedge_file(data_dir() / "toy_edges.txt"));
  CHECK(h.num_nodes() == 8);
  CHECK(h.num_edges() == 9);
  const auto table = read_attribute_file(data_dir() / "toy_attributes.csv");
  const auto x = one_hot_encode(table, h.node_ids());
  CHECK(x.num_columns() == 2);
}
