#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "polwig/csv.hpp"
#include "polwig/state_io.hpp"
#include "polwig/svg.hpp"

using namespace polwig;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

std::filesystem::path test_dir() {
  const auto dir = std::filesystem::temp_directory_path() / "polwig_io_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

} // namespace

TEST_CASE("state_file_round_trip_is_field_identical") {
  const CoherentSuperposition psi = make_psi1({1.0 / 3.0, -0.7}, {0.25, 2.0 / 7.0});
  const CoherentSuperposition back = parse_state_text(render_state_file(psi));
  REQUIRE(back.terms.size() == psi.terms.size());
  CHECK(back.normalized == psi.normalized);
  for (size_t i = 0; i < psi.terms.size(); ++i) {
    CHECK(back.terms[i].coeff == psi.terms[i].coeff);
    CHECK(back.terms[i].amp_h == psi.terms[i].amp_h);
    CHECK(back.terms[i].amp_v == psi.terms[i].amp_v);
  }
}

TEST_CASE("state_file_disk_round_trip") {
  const auto path = test_dir() / "state_roundtrip.txt";
  const CoherentSuperposition psi = make_psi3({1.7, -0.2});
  write_state_file(path.string(), psi);
  const CoherentSuperposition back = read_state_file(path.string());
  REQUIRE(back.terms.size() == 2);
  CHECK(back.terms[0].amp_h == psi.terms[0].amp_h);
  CHECK(back.terms[1].amp_v == psi.terms[1].amp_v);
  CHECK(slurp(path) == render_state_file(psi));
}

TEST_CASE("state_parser_reports_line_and_field") {
  REQUIRE_THROWS_WITH(parse_state_text("not-a-header\n"),
                      ContainsSubstring("polwig-state v1"));
  REQUIRE_THROWS_WITH(parse_state_text("polwig-state v1\n"),
                      ContainsSubstring("missing 'normalized'"));
  REQUIRE_THROWS_WITH(parse_state_text("polwig-state v1\nnormalized true\n"),
                      ContainsSubstring("no branch lines"));
  REQUIRE_THROWS_WITH(
      parse_state_text("polwig-state v1\nnormalized false\n"
                       "branch 1 0 0.5 0 0\n"),
      ContainsSubstring("6 numeric fields"));
  REQUIRE_THROWS_WITH(
      parse_state_text("polwig-state v1\nnormalized false\n"
                       "branch 1 0 oops 0 0 0\n"),
      ContainsSubstring("'h re'"));
  REQUIRE_THROWS_WITH(
      parse_state_text("polwig-state v1\nnormalized false\n"
                       "branch 1 0 oops 0 0 0\n"),
      ContainsSubstring("line 3"));
  REQUIRE_THROWS_WITH(
      parse_state_text("polwig-state v1\nnormalized true\n"
                       "branch 2 0 0 0 0 0\n"),
      ContainsSubstring("claims normalized"));
  REQUIRE_THROWS_AS(read_state_file((test_dir() / "absent.txt").string()),
                    ParseError);
}

TEST_CASE("state_parser_skips_comments_and_blank_lines") {
  const CoherentSuperposition psi = parse_state_text(
      "# produced by hand\n\npolwig-state v1\n# claim\nnormalized false\n"
      "   \nbranch 0.5 0 1 0 -1 0\n# trailing\n");
  REQUIRE(psi.terms.size() == 1);
  CHECK(psi.normalized == false);
  CHECK(psi.terms[0].coeff == Complex{0.5, 0.0});
  CHECK(psi.terms[0].amp_h == Complex{1.0, 0.0});
  CHECK(psi.terms[0].amp_v == Complex{-1.0, 0.0});
}

TEST_CASE("state_summary_lists_branches_and_norm") {
  const std::string s = state_summary(make_psi1(2.0, -2.0));
  CHECK_THAT(s, ContainsSubstring("branches 2"));
  CHECK_THAT(s, ContainsSubstring("normalized true"));
  CHECK_THAT(s, ContainsSubstring("norm_sq 0.9999999"));
  CHECK_THAT(s, ContainsSubstring("branch 0 coeff"));
  CHECK_THAT(s, ContainsSubstring("max_amp 2"));
}

TEST_CASE("format_number_round_trips_doubles") {
  for (double v : {1.0 / 3.0, 0.1, -2.5e-17, 6.02214076e23, 0.0, -0.0}) {
    const std::string s = format_number(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("render_csv_golden_output") {
  const std::string got =
      render_csv({"alpha = 1,0", "nodes = 4"}, {"x", "y"},
                 {{0.5, 1.0}, {1.5, -2.25}});
  CHECK(got ==
        "# alpha = 1,0\n# nodes = 4\nx,y\n0.5,1\n1.5,-2.25\n");
}

TEST_CASE("render_csv_rejects_ragged_rows") {
  REQUIRE_THROWS_WITH(render_csv({}, {"x", "y"}, {{1.0}}),
                      ContainsSubstring("row width"));
}

TEST_CASE("write_file_atomic_leaves_no_temporary") {
  const auto dir = test_dir() / "nested" / "deeper";
  std::filesystem::remove_all(test_dir() / "nested");
  const auto path = dir / "data.csv";
  write_file_atomic(path.string(), "payload\n");
  CHECK(slurp(path) == "payload\n");
  CHECK(!std::filesystem::exists(path.string() + ".tmp"));
}

TEST_CASE("write_csv_writes_rendered_bytes") {
  const auto path = test_dir() / "table.csv";
  write_csv(path.string(), {"comment"}, {"a"}, {{42.0}});
  CHECK(slurp(path) == render_csv({"comment"}, {"a"}, {{42.0}}));
}

TEST_CASE("svg_render_smoke") {
  SvgSeries series;
  series.label = "variance";
  series.color = "#1f6fb2";
  series.x = {0.0, 1.0, 2.0};
  series.y = {1.0, 0.5, 2.0};
  const std::string chart =
      render_line_chart("title", "x", "y", {series});
  CHECK_THAT(chart, ContainsSubstring("<svg"));
  CHECK_THAT(chart, ContainsSubstring("variance"));
  const std::string map = render_heatmap(
      "grid", "x", "y", {0.0, 1.0}, {0.0, 1.0}, {0.1, 0.2, 0.3, 0.4});
  CHECK_THAT(map, ContainsSubstring("<svg"));
}
