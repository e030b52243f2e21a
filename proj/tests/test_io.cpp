#include "kpo/csv.hpp"
#include "kpo/result_io.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <sstream>

using namespace kpo;

namespace {

TEST(Csv, ReadPointsAndWeights) {
  std::stringstream ss("# comment\nx1,x2,weight\n1,2,3\n 4 , 5 ,0.5\n");
  const auto t = read_csv(ss);
  EXPECT_EQ(t.header, (std::vector<std::string>{"x1", "x2", "weight"}));
  const auto ps = point_set_from_table(t);
  EXPECT_EQ(ps.dim(), 2u);
  EXPECT_EQ(ps.measure.weights(), (std::vector<double>{3, 0.5}));
  EXPECT_EQ(ps.points(1, 1), 5.0);
}

TEST(Csv, CountingWithoutWeightColumn) {
  std::stringstream ss("x1\n2\n+3\n-1e2\n");
  const auto ps = point_set_from_table(read_csv(ss));
  EXPECT_TRUE(ps.measure.is_uniform());
  EXPECT_EQ(ps.points(2, 0), -100.0);
}

TEST(Csv, Errors) {
  std::stringstream header_only("x1,x2\n");
  EXPECT_THROW(read_csv(header_only), DataError);
  std::stringstream empty("");
  EXPECT_THROW(read_csv(empty), DataError);
  std::stringstream ragged("x1,x2\n1,2\n3\n");
  EXPECT_THROW(read_csv(ragged), DataError);
  std::stringstream junk("x1\nabc\n");
  EXPECT_THROW(read_csv(junk), DataError);
  std::stringstream neg("x1,weight\n1,-1\n");
  EXPECT_THROW(point_set_from_table(read_csv(neg)), DataError);
  EXPECT_THROW(read_csv_file("/nonexistent/file.csv"), DataError);
}

TEST(Csv, RoundTripIsExact) {
  const Points p = points_from_rows({{0.1, 1.0 / 3.0}, {1e-300, -2.5}});
  std::stringstream ss;
  write_csv(ss, {"a", "b"}, p);
  EXPECT_EQ(read_csv(ss).values, p);
}

TEST(Csv, RankingFormat) {
  const auto r = PoRanking::from_values({0, 2, 0.5});
  std::stringstream ss;
  const std::vector<std::size_t> fronts{0, 1, 0};
  write_ranking(ss, r, &fronts);
  EXPECT_EQ(ss.str(), "index,po,class,front\n0,0,0,0\n1,2,2,1\n2,0.5,1,0\n");
  std::stringstream plain;
  write_ranking(plain, r);
  EXPECT_EQ(plain.str().substr(0, 15), "index,po,class\n");
}

TEST(ResultJson, SchemaAndTimingToggle) {
  ExperimentResult r;
  r.config.selector = Selector::PoProb;
  r.config.seed = 7;
  r.per_generation = {{0, 1.5}, {10, 2.5}};
  r.final_hypervolume = 2.5;
  r.wall_times.total_seconds = 0.25;
  const auto j = nlohmann::json::parse(result_to_json(r, "front.csv"));
  EXPECT_EQ(j["config"]["selector"], "po_prob");
  EXPECT_EQ(j["seed"], 7);
  EXPECT_EQ(j["per_generation"][1]["gen"], 10);
  EXPECT_EQ(j["per_generation"][1]["hypervolume"], 2.5);
  EXPECT_EQ(j["final_front"], "front.csv");
  EXPECT_EQ(j["wall_times"]["total_seconds"], 0.25);
  EXPECT_FALSE(nlohmann::json::parse(result_to_json(r, "front.csv", false)).contains("wall_times"));
}

}  // namespace
