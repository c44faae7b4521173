#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "graphfilt/bilateral.hpp"
#include "graphfilt/filters.hpp"
#include "graphfilt/tv.hpp"
#include "oracles.hpp"

using namespace graphfilt;

TEST_CASE("Grid2D validation") {
  CHECK_NOTHROW(Grid2D(1, 1, 1));
  CHECK_THROWS_AS(Grid2D(0, 4), ValidationError);
  CHECK_THROWS_AS(Grid2D(4, -1), ValidationError);
  CHECK_THROWS_AS(Grid2D(4, 4, 4), ValidationError);  // even window
  CHECK_THROWS_AS(Grid2D(4, 4, 0), ValidationError);
  CHECK(Grid2D(3, 5).node_count() == 15);
}

TEST_CASE("GeneralGraph validation") {
  CHECK_THROWS_AS(GeneralGraph(0, {}), ValidationError);
  CHECK_THROWS_AS(GeneralGraph(3, {{1, 1, 1.0}}), ValidationError);        // self loop
  CHECK_THROWS_AS(GeneralGraph(3, {{0, 3, 1.0}}), ValidationError);        // out of range
  CHECK_THROWS_AS(GeneralGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}), ValidationError);  // dup
  CHECK_THROWS_AS(GeneralGraph(3, {{0, 1, -1.0}}), ValidationError);       // bad dist
  CHECK_THROWS_AS(GeneralGraph(2, {}, {1.0, 2.0, 3.0}, 2), ValidationError);  // positions

  const GeneralGraph g(4, {{2, 0, 1.5}, {0, 1, 1.0}, {1, 2, 2.0}});
  CHECK(g.node_count() == 4);
  CHECK(g.edges().size() == 3);
  CHECK(g.edges()[0].i == 0);  // normalized to i < j and sorted
  CHECK(g.max_degree() == 2);
  CHECK(g.neighbor_nodes(0).size() == 2);
  CHECK(g.neighbor_nodes(3).empty());
}

TEST_CASE("Signal validation and construction") {
  auto topo = make_grid(2, 2);
  CHECK_THROWS_AS(Signal(topo, {1.0, 2.0}), ValidationError);  // length mismatch
  CHECK_THROWS_AS(Signal(topo, {1.0, 2.0, std::nan(""), 4.0}), ValidationError);
  CHECK_THROWS_AS(Signal(topo, {1.0, 2.0, std::numeric_limits<double>::infinity(), 4.0}),
                  ValidationError);
  CHECK_THROWS_AS(Signal(nullptr, {}), ValidationError);

  const Signal s = Signal::constant(topo, 0.25);
  CHECK(s.size() == 4);
  CHECK(s[3] == 0.25);
  CHECK(s.grid() != nullptr);
  CHECK(s.graph() == nullptr);

  const Signal z = Signal::zeros(make_grid(2, 2));
  CHECK(s.same_topology(z));  // equal by value, not by pointer
  CHECK_FALSE(s.same_topology(Signal::zeros(make_grid(2, 3))));
}

TEST_CASE("dot: examples and errors") {
  auto topo = make_grid(1, 2, 1);
  const Signal u(topo, {1.0, 2.0});
  const Signal v(topo, {3.0, 4.0});
  CHECK(dot(u, v) == 11.0);
  CHECK(dot(Signal::zeros(topo), Signal::zeros(topo)) == 0.0);
  CHECK_THROWS_AS(dot(u, Signal::zeros(make_grid(1, 3))), ValidationError);

  std::mt19937_64 rng(11);
  auto big = make_grid(10, 100);
  const Signal a = oracles::random_signal(big, rng);
  const Signal b = oracles::random_signal(big, rng);
  const double naive = oracles::naive_dot(a.values(), b.values());
  CHECK(dot(a, b) == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("apply_l: constants are in the nullspace of every filter") {
  std::mt19937_64 rng(12);
  auto grid = make_grid(6, 7);
  const Signal g = oracles::random_signal(grid, rng);
  const Signal c = Signal::constant(grid, 0.7);

  const FilterParams params[] = {FilterParams(BilateralParams{}),
                                 FilterParams(GuidedParams{3, 0.01}),
                                 FilterParams(TvParams{})};
  const FilterKind kinds[] = {FilterKind::bilateral, FilterKind::guided, FilterKind::tv};
  for (int i = 0; i < 3; ++i) {
    auto f = make_filter(kinds[i], params[i], grid);
    const Signal lc = apply_l(*f, g, c);
    for (std::size_t j = 0; j < lc.size(); ++j)
      CHECK(lc[j] == doctest::Approx(0.0).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("apply_l: hand-computed 1D TV example") {
  // flat guidance, eps=1e-3, v=[0,1]: L v = [-1/4, 1/4]
  auto chain = make_grid(1, 2, 1);
  const Signal g = Signal::zeros(chain);
  const Signal v(chain, {0.0, 1.0});
  TvFilter tv(chain, {1e-3});
  const Signal lv = apply_l(tv, g, v);
  CHECK(lv[0] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(lv[1] == doctest::Approx(0.25).epsilon(1e-12));

  // same through the general-graph path
  auto path2 = make_graph(2, {{0, 1, 1.0}});
  TvFilter tvg(path2, {1e-3});
  const Signal lvg = apply_l(tvg, Signal::zeros(path2), Signal(path2, {0.0, 1.0}));
  CHECK(lvg[0] == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(lvg[1] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("apply_l matches the dense basis-vector assembly") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 4; ++trial) {
    auto topo = trial % 2 == 0
                    ? make_grid(2 + static_cast<int>(rng() % 7), 2 + static_cast<int>(rng() % 7))
                    : oracles::random_graph_topo(16, rng);
    const Signal g = oracles::random_signal(topo, rng);
    const Signal v = oracles::random_signal(topo, rng, -1.0, 1.0);

    std::vector<std::unique_ptr<FilterOperator>> filters;
    filters.push_back(std::make_unique<BilateralFilter>(topo, BilateralParams{3, 1.0, 0.2}));
    filters.push_back(std::make_unique<TvFilter>(topo, TvParams{1e-3}));
    if (std::holds_alternative<Grid2D>(*topo))
      filters.push_back(std::make_unique<GuidedFilter>(topo, GuidedParams{3, 0.01}));

    for (const auto& f : filters) {
      const auto w = oracles::assemble_w(*f, g);
      const auto wv = oracles::matvec(w, v.values());
      Signal deg = f->degree(g);
      const Signal lv = apply_l(*f, g, v);
      for (std::size_t i = 0; i < lv.size(); ++i) {
        const double expect = deg[i] * v[i] - wv[i];
        CHECK(lv[i] == doctest::Approx(expect).scale(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("filter operator contract: degree positive, apply_w linear and symmetric") {
  std::mt19937_64 rng(14);
  auto topo = make_grid(5, 6);
  const Signal g = oracles::random_signal(topo, rng);
  BilateralFilter f(topo, {3, 1.0, 0.2});

  const Signal deg = f.degree(g);
  for (std::size_t i = 0; i < deg.size(); ++i) CHECK(deg[i] > 0.0);

  const Signal u = oracles::random_signal(topo, rng, -1.0, 1.0);
  const Signal v = oracles::random_signal(topo, rng, -1.0, 1.0);

  // superposition
  Signal combo = Signal::uninitialized(topo);
  for (std::size_t i = 0; i < combo.size(); ++i) combo[i] = 2.0 * u[i] + 3.0 * v[i];
  const Signal wu = f.apply_w(g, u);
  const Signal wv = f.apply_w(g, v);
  const Signal wc = f.apply_w(g, combo);
  for (std::size_t i = 0; i < wc.size(); ++i)
    CHECK(wc[i] == doctest::Approx(2.0 * wu[i] + 3.0 * wv[i]).epsilon(1e-10));

  // u'(Wv) == v'(Wu)
  const double uwv = dot(u, wv);
  const double vwu = dot(v, wu);
  CHECK(uwv == doctest::Approx(vwu).epsilon(1e-10));
}

TEST_CASE("filter input validation: topology mismatch") {
  auto topo = make_grid(4, 4);
  auto other = make_grid(4, 5);
  BilateralFilter f(topo);
  const Signal g = Signal::zeros(topo);
  const Signal bad = Signal::zeros(other);
  Signal out = Signal::uninitialized(topo);
  CHECK_THROWS_AS(f.apply_w(g, bad, out), ValidationError);
  CHECK_THROWS_AS(f.apply_w(bad, g, out), ValidationError);
}
