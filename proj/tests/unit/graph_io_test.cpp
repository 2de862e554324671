#include <sstream>

#include "doctest.h"
#include "feedloop/error.hpp"
#include "feedloop/graph_io.hpp"
#include "feedloop/metrics_io.hpp"
#include "unit/helpers.hpp"
#include "unit/temp_dir.hpp"

using namespace feedloop;

TEST_CASE("graph round-trips through files") {
  feedloop::test::TempDir dir("io");
  const auto g = feedloop::test::random_graph(70, 0.06, 0.3, 5);
  write_edges(dir / "e.tsv", g);
  write_labels(dir / "l.tsv", g);
  const auto back = read_graph(dir / "e.tsv", dir / "l.tsv");
  CHECK(back.identity_mapping());
  CHECK(back.graph == g);
  CHECK(back.graph.mixing() == g.mixing());
}

TEST_CASE("external ids are compacted in ascending order") {
  std::istringstream edges("# comment\n100\t7\n7\t42\n\n100\t42\n100\t7\n");
  std::istringstream labels("42\t1\n7\t0\n100\t0\n");
  const auto r = read_graph(edges, labels);
  CHECK(r.external_ids == std::vector<std::uint64_t>{7, 42, 100});
  CHECK_FALSE(r.identity_mapping());
  CHECK(r.graph.num_edges() == 3);  // the repeated 100->7 line collapses
  CHECK(r.graph.has_edge(2, 0));
  CHECK(r.graph.has_edge(0, 1));
  CHECK(r.graph.label(1) == Group::kMinority);
}

TEST_CASE("malformed graph input is rejected") {
  auto load = [](const std::string& e, const std::string& l) {
    std::istringstream es(e), ls(l);
    return read_graph(es, ls);
  };
  CHECK_THROWS_AS(load("1\t1\n", "1\t0\n"), IoError);      // self-loop
  CHECK_THROWS_AS(load("1\t2\n", "1\t0\n"), IoError);      // 2 unlabeled
  CHECK_THROWS_AS(load("1 x\n", "1\t0\n"), IoError);       // not a number
  CHECK_THROWS_AS(load("1\t2\n", "1\t0\n2\t3\n"), IoError);  // bad label
  CHECK_THROWS_AS(load("1\t2\n", "1\t0\n1\t1\n2\t0\n"), IoError);  // conflicting labels
}

TEST_CASE("format_double is shortest round-trip") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0 / 3.0) == "0.3333333333333333");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
  CHECK(format_double(2.0) == "2");
}

TEST_CASE("metrics CSV has a schema line and fixed columns") {
  IterationRecord r;
  r.t = 1;
  r.recs_issued = 9;
  r.exposure = ExposureReport{1.0 / 3.0, 2.0 / 3.0, 9, 3, 6};
  r.edges_added = 3;
  r.cumulative_edge_growth = 0.25;
  r.h_m = 0.4;
  r.h_M = 0.0;
  r.e_mm = 0.5;
  const std::vector<double> q{0.01, 1.0};
  std::ostringstream os;
  write_metrics_csv(os, std::vector<IterationRecord>{r}, q);
  std::istringstream is(os.str());
  std::string schema, header;
  std::getline(is, schema);
  std::getline(is, header);
  CHECK(schema == "# schema: feedloop-metrics/1 columns=15");
  CHECK(header ==
        "t,recs_issued,e_min,e_maj,edges_added,growth_pct,gini_min,gini_maj,h_m,h_M,e_mm,"
        "pexp_min_1,pexp_maj_1,pexp_min_100,pexp_maj_100");

  std::istringstream again(os.str());
  const auto t = read_csv(again);
  REQUIRE(t.rows.size() == 1);
  CHECK(*t.rows[0][t.column("e_min")] == 1.0 / 3.0);
  CHECK(*t.rows[0][t.column("growth_pct")] == doctest::Approx(25.0));
  CHECK_FALSE(t.rows[0][t.column("pexp_min_1")].has_value());
  CHECK_THROWS_AS(t.column("nope"), IoError);
}

TEST_CASE("rec log lines are JSON objects") {
  RecommendationBatch b{{4, {1, 2, 3}, 2}, {5, {}, std::nullopt}};
  std::ostringstream os;
  write_rec_log(os, 3, b);
  CHECK(os.str() ==
        "{\"t\":3,\"user\":4,\"targets\":[1,2,3],\"accepted\":2}\n"
        "{\"t\":3,\"user\":5,\"targets\":[],\"accepted\":null}\n");
}
