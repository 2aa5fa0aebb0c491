#include <gtest/gtest.h>

#include "support.hpp"
#include "tmdyn/render.hpp"

using namespace tmdyn;
using tmdyn::testing::dotted;
using tmdyn::testing::erase;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

NdaMachine erase_nda() { return compile_nda(erase(), GoedelCoding::standard(erase())); }

std::vector<MacroRow> erase_rows(const NdaMachine& nda) {
  const auto run = run_macro(nda, config_to_rect(nda.coding(), dotted(erase(), "1", "q0 _ _")), 10);
  return read_macro_csv(write_macro_csv(run));
}

}  // namespace

TEST(RenderSvg, CellsAndTrajectory) {
  const auto nda = erase_nda();
  const auto rows = erase_rows(nda);
  ASSERT_EQ(rows.size(), 3u);
  const auto svg = render_svg(nda, rows);
  EXPECT_EQ(svg.rfind("<svg ", 0), 0u);
  EXPECT_EQ(count(svg, "class=\"cell\""), 5u);
  EXPECT_EQ(count(svg, "class=\"step\""), 3u);
  EXPECT_NE(svg.find(">(1,q0,_)<"), std::string::npos);
  EXPECT_NE(svg.find(">t=2<"), std::string::npos);
  EXPECT_EQ(svg, render_svg(nda, rows));
}

TEST(RenderSvg, EmptyTrajectory) {
  const auto svg = render_svg(erase_nda(), {});
  EXPECT_EQ(count(svg, "class=\"cell\""), 5u);
  EXPECT_EQ(count(svg, "class=\"step\""), 0u);
}

TEST(RenderSvg, RejectsRowsInTheWrongCell) {
  const auto nda = erase_nda();
  auto rows = erase_rows(nda);
  rows[1].cell = (rows[1].cell + 1) % 5;
  EXPECT_THROW(render_svg(nda, rows), TrajectoryMismatchError);
  rows = erase_rows(nda);
  rows[0].cell = 99;
  EXPECT_THROW(render_svg(nda, rows), TrajectoryMismatchError);
  rows = erase_rows(nda);
  rows[0].rect = Rect::unit();
  EXPECT_THROW(render_svg(nda, rows), TrajectoryMismatchError);
}

TEST(RenderSvg, HonoursSize) {
  const auto svg = render_svg(erase_nda(), {}, {200, 10});
  EXPECT_NE(svg.find("width=\"220\""), std::string::npos) << svg.substr(0, 300);
}
