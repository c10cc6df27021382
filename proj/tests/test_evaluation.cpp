#include <doctest.h>

#include <cmath>
#include <set>

#include "hycosbm/deletion.hpp"
#include "hycosbm/evaluation.hpp"
#include "oracles.hpp"

using namespace hycosbm;
using doctest::Approx;

TEST_CASE("auc_from_scores hand cases") {
  const std::vector<double> pos{3, 1, 2}, neg{1, 1, 5};
  CHECK(auc_from_scores(pos, neg) == 0.5);
  const std::vector<double> all_win{2, 2}, all_lose{1, 1};
  CHECK(auc_from_scores(all_win, all_lose) == 1.0);
  CHECK(auc_from_scores(all_lose, all_win) == 0.0);
  const std::vector<double> mixed{1, 2, 3, 4}, against{0, 2, 5, 4};
  CHECK(auc_from_scores(mixed, against) == Approx((1 + 0.5 + 0 + 0.5) / 4.0));
  CHECK_THROWS_AS(auc_from_scores({}, {}), ValidationError);
}

TEST_CASE("constant-intensity model gives AUC exactly one half") {
  CounterRng rng(1);
  const auto h = oracle::random_hypergraph(30, 60, 5, rng);
  // u uniform in every row: lambda_e depends only on |e|
  const ModelParams p{Matrix(30, 2, 0.4), Matrix(2, 2, 0.7), Matrix()};
  const auto result = auc_prediction(h.edges(), p, h, 9);
  CHECK(result.auc == 0.5);
  CHECK(result.comparisons == h.num_edges());
}

TEST_CASE("AUC is invariant to rescaling the intensities") {
  CounterRng rng(2);
  const auto h = oracle::random_hypergraph(25, 50, 5, rng);
  ModelParams p{oracle::random_matrix(25, 3, rng), oracle::random_symmetric(3, rng), Matrix()};
  const double base = auc_prediction(h.edges(), p, h, 4).auc;
  for (double scale : {1e-6, 0.3, 17.0, 1e5}) {
    auto scaled = p;
    for (auto& v : scaled.w.data()) v *= scale;
    CHECK(auc_prediction(h.edges(), scaled, h, 4).auc == base);
  }
}

TEST_CASE("negatives avoid observed hyperedges") {
  // all pairs of 4 nodes except one are observed; the missing pair is the
  // only valid negative of size 2
  std::vector<Hyperedge> edges{{{0, 1}, 1}, {{0, 2}, 1}, {{0, 3}, 1}, {{1, 2}, 1}, {{1, 3}, 1}};
  Hypergraph h(4, edges);
  const ModelParams p{Matrix(4, 1, 0.5), Matrix(1, 1, 1.0), Matrix()};
  const auto result = auc_prediction(h.edges(), p, h, 3);
  CHECK(result.resample_failures == 0);

  std::vector<Hyperedge> full{{{0, 1}, 1}, {{0, 2}, 1}, {{1, 2}, 1}};
  Hypergraph complete(3, full);
  const ModelParams q{Matrix(3, 1, 0.5), Matrix(1, 1, 1.0), Matrix()};
  CHECK(auc_prediction(complete.edges(), q, complete, 3).resample_failures == 3);
}

TEST_CASE("auc_prediction errors") {
  Hypergraph h(3, {{{0, 1}, 1}});
  const ModelParams p{Matrix(3, 1, 0.5), Matrix(1, 1, 1.0), Matrix()};
  CHECK_THROWS_AS(auc_prediction({}, p, h, 1), ValidationError);
  const ModelParams wrong{Matrix(4, 1, 0.5), Matrix(1, 1, 1.0), Matrix()};
  CHECK_THROWS_AS(auc_prediction(h.edges(), wrong, h, 1), ValidationError);
}

TEST_CASE("presence probability is monotone in the intensity and finite for large edges") {
  const ModelParams p{Matrix(2000, 1, 1.0), Matrix(1, 1, 1.0), Matrix()};
  std::vector<NodeId> big(600);
  for (NodeId i = 0; i < 600; ++i) big[i] = i;
  const double s = log_presence_probability(big, p, 2000);
  CHECK(std::isfinite(s));
  const ModelParams small{Matrix(3, 1, 1.0), Matrix(1, 1, 1.0), Matrix()};
  const std::vector<NodeId> pair{0, 1};
  // mu = 1: log(1 - e^-1)
  CHECK(log_presence_probability(pair, small, 3) == Approx(std::log(1 - std::exp(-1.0))));
}

TEST_CASE("sample_node_set draws distinct sorted nodes uniformly") {
  CounterRng rng(5);
  std::vector<int> hits(10, 0);
  for (int t = 0; t < 20000; ++t) {
    const auto s = sample_node_set(3, 10, rng);
    REQUIRE(s.size() == 3);
    REQUIRE(std::is_sorted(s.begin(), s.end()));
    REQUIRE(std::adjacent_find(s.begin(), s.end()) == s.end());
    for (auto v : s) ++hits[v];
  }
  for (int h : hits) CHECK(h == doctest::Approx(6000).epsilon(0.05));
}

TEST_CASE("soo_negatives") {
  SUBCASE("enumeration on three nodes") {
    std::set<std::vector<NodeId>> seen;
    std::vector<Hyperedge> e{{{0, 1}, 1}};
    for (std::uint64_t s = 0; s < 50; ++s) seen.insert(soo_negatives(e, 3, s)[0]);
    CHECK(seen == std::set<std::vector<NodeId>>{{0, 2}, {1, 2}});
  }
  SUBCASE("one-for-one swap with Jaccard (|e|-1)/(|e|+1)") {
    CounterRng rng(6);
    const auto h = oracle::random_hypergraph(40, 100, 12, rng);
    const auto neg = soo_negatives(h.edges(), 40, 8);
    for (std::size_t t = 0; t < neg.size(); ++t) {
      const auto& e = h.edge(t).nodes;
      CHECK(neg[t].size() == e.size());
      std::size_t common = 0;
      for (auto v : neg[t]) common += std::count(e.begin(), e.end(), v);
      CHECK(common == e.size() - 1);
      const double d = static_cast<double>(e.size());
      CHECK(jaccard(e, neg[t]) == Approx((d - 1) / (d + 1)));
    }
    std::vector<NodeId> nine{0, 1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<Hyperedge> one{{nine, 1}};
    CHECK(jaccard(nine, soo_negatives(one, 20, 1)[0]) == Approx(0.8));
  }
  SUBCASE("edge covering every node") {
    std::vector<Hyperedge> e{{{0, 1, 2}, 1}};
    CHECK_THROWS_AS(soo_negatives(e, 3, 1), ValidationError);
  }
}

TEST_CASE("cosine_similarity") {
  Matrix a(4, 2), b(4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    a(i, i % 2) = 1.0;
    b(i, 1 - i % 2) = 1.0;
  }
  CHECK(cosine_similarity(a, a) == Approx(1.0));
  CHECK(cosine_similarity(a, b, false) == 0.0);
  CHECK(cosine_similarity(a, b) == Approx(1.0));

  Matrix r1(1, 2, 1.0), r2(1, 2);
  r2(0, 0) = 1.0;
  CHECK(cosine_similarity(r1, r2) == Approx(1.0 / std::sqrt(2.0)));

  Matrix zero(1, 2, 0.0);
  CHECK(cosine_similarity(zero, r1) == 0.0);

  CounterRng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto x = oracle::random_matrix(20, 3, rng);
    const auto y = oracle::random_matrix(20, 4, rng);
    CHECK(cosine_similarity(x, y) == Approx(cosine_similarity(y, x)).epsilon(1e-12));
    // permuting columns does not change the matched score
    Matrix xp(20, 3);
    for (std::size_t i = 0; i < 20; ++i) {
      xp(i, 0) = x(i, 2);
      xp(i, 1) = x(i, 0);
      xp(i, 2) = x(i, 1);
    }
    CHECK(cosine_similarity(xp, y) == Approx(cosine_similarity(x, y)).epsilon(1e-12));
    CHECK(cosine_similarity(xp, x) == Approx(1.0));
    // rescaling rows keeps them parallel
    auto scaled = x;
    for (std::size_t i = 0; i < 20; ++i)
      for (std::size_t k = 0; k < 3; ++k) scaled(i, k) *= 1.0 + i;
    CHECK(cosine_similarity(scaled, x) == Approx(1.0));
  }
  // greedy path for many columns
  const auto wide = oracle::random_matrix(30, 10, rng);
  CHECK(cosine_similarity(wide, wide) == Approx(1.0));
}

TEST_CASE("kfold_assignment partitions the edges") {
  CounterRng rng(8);
  const auto folds = kfold_assignment(100, 5, rng);
  std::vector<int> sizes(5, 0);
  for (auto f : folds) ++sizes[f];
  CHECK(sizes == std::vector<int>{20, 20, 20, 20, 20});
  const auto uneven = kfold_assignment(23, 5, rng);
  std::vector<int> s2(5, 0);
  for (auto f : uneven) ++s2[f];
  for (int s : s2) CHECK((s == 4 || s == 5));
  CHECK_THROWS_AS(kfold_assignment(3, 5, rng), ValidationError);
  CHECK_THROWS_AS(kfold_assignment(10, 1, rng), ValidationError);
}

TEST_CASE("kfold_cv") {
  CounterRng rng(9);
  const auto h = oracle::random_hypergraph(30, 80, 5, rng);
  const auto x = oracle::random_attributes(30, 1, 3, rng);
  FitConfig base;
  base.restarts = 2;
  base.max_iters = 40;

  SUBCASE("single cell yields one AUC per fold") {
    CVGrid grid{{3}, {0.5}, 5, 11};
    const auto report = kfold_cv(h, &x, grid, base);
    REQUIRE(report.cells.size() == 1);
    CHECK(report.cells[0].fold_auc.size() == 5);
    for (double a : report.cells[0].fold_auc) {
      CHECK(a >= 0.0);
      CHECK(a <= 1.0);
    }
  }
  SUBCASE("structure-only grid needs no attributes and selection ties go to smaller K") {
    CVGrid grid{{2, 3}, {0.0}, 4, 12};
    const auto report = kfold_cv(h, nullptr, grid, base);
    CHECK(report.cells.size() == 2);
    const auto& best = report.best();
    for (const auto& c : report.cells) CHECK(c.mean_auc <= best.mean_auc);
  }
  SUBCASE("deterministic and independent of threads") {
    CVGrid grid{{2, 3}, {0.0, 0.9}, 3, 13};
    const auto a = kfold_cv(h, &x, grid, base);
    auto threaded = base;
    threaded.threads = 4;
    const auto b = kfold_cv(h, &x, grid, threaded);
    for (std::size_t c = 0; c < a.cells.size(); ++c) CHECK(a.cells[c].fold_auc == b.cells[c].fold_auc);
    CHECK(a.selected == b.selected);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(kfold_cv(h, &x, CVGrid{{}, {0.5}, 5, 1}, base), ValidationError);
    CHECK_THROWS_AS(kfold_cv(h, nullptr, CVGrid{{2}, {0.5}, 5, 1}, base), ValidationError);
  }
  SUBCASE("defaults") {
    const auto g = CVGrid::defaults();
    CHECK(g.ks.front() == 2);
    CHECK(g.ks.back() == 30);
    CHECK(g.folds == 5);
    CHECK(std::find(g.gammas.begin(), g.gammas.end(), 0.995) != g.gammas.end());
  }
}

TEST_CASE("delete_edges") {
  CounterRng rng(10);
  const auto h = oracle::random_hypergraph(20, 60, 4, rng);
  const std::vector<std::size_t> all = [&] {
    std::vector<std::size_t> v(h.num_edges());
    for (std::size_t t = 0; t < v.size(); ++t) v[t] = t;
    return v;
  }();

  const auto identity = delete_edges(h, 1.0, true, 1);
  CHECK(identity.kept == all);

  const auto plain = delete_edges(h, 0.5, false, 2);
  CHECK(plain.kept.size() == static_cast<std::size_t>(std::llround(0.5 * h.num_edges())));
  CHECK(plain.target_reached);

  const auto before = count_components(h, all);
  const auto connected = delete_edges(h, 0.2, true, 3);
  CHECK(count_components(h, connected.kept) == before);
  CHECK(connected.kept.size() >= connected.target);

  // a path of three edges cannot lose any edge without disconnecting
  Hypergraph path(4, {{{0, 1}, 1}, {{1, 2}, 1}, {{2, 3}, 1}});
  const auto stuck = delete_edges(path, 0.34, true, 4);
  CHECK(stuck.kept.size() == 3);
  CHECK_FALSE(stuck.target_reached);
  CHECK_THROWS_AS(delete_edges(path, 0.0, true, 4), ValidationError);
}
