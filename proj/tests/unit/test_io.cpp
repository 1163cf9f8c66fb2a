#include <filesystem>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "tseek/error.hpp"
#include "tseek/io.hpp"
#include "tseek/svg.hpp"

using namespace tseek;
namespace fs = std::filesystem;

namespace {
fs::path scratch(const char* name) {
  const auto p = fs::temp_directory_path() / "tseek_unit" / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}
}  // namespace

TEST_CASE("shortest round-trip doubles") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 9.246621004453466, 1e300}) CHECK(parse_double(format_double(v)) == v);
  CHECK_THROWS_AS(parse_double("abc"), Error);
}

TEST_CASE("1.5D terrain CSV round trip") {
  const auto t = Terrain1D::from_vertices({{-1, 0.1}, {0, 0}, {0.7, 1.0 / 3.0}, {2, -0.25}});
  std::stringstream ss;
  write_terrain1d_csv(ss, t);
  CHECK(ss.str().rfind("x,height\n", 0) == 0);
  const auto back = read_terrain1d_csv(ss);
  REQUIRE(back.vertices().size() == t.vertices().size());
  for (std::size_t k = 0; k < t.vertices().size(); ++k) CHECK(back.vertices()[k] == t.vertices()[k]);
}

TEST_CASE("instance manifests round trip") {
  const auto dir = scratch("inst");
  const auto a = gen_random_1d(4);
  save_instance(dir.string(), a);
  const auto mpath = (dir / (a.id + ".json")).string();
  CHECK(manifest_dimension(mpath) == "1d");
  const auto b = load_instance1d(mpath);
  CHECK(b.id == a.id);
  CHECK(b.opt_lower == a.opt_lower);
  CHECK(b.opt_upper == a.opt_upper);
  CHECK(b.target.position == a.target.position);
  CHECK(b.terrain.vertices().size() == a.terrain.vertices().size());

  const auto c = gen_pit_grid_25d(16.0);
  save_instance(dir.string(), c);
  const auto cpath = (dir / (c.id + ".json")).string();
  CHECK(manifest_dimension(cpath) == "2.5d");
  const auto d = load_instance25d(cpath);
  CHECK(d.terrain.heights() == c.terrain.heights());
  CHECK(d.terrain.lipschitz() == c.terrain.lipschitz());
  CHECK(d.target == c.target);
  CHECK(d.opt_lower == c.opt_lower);
}

TEST_CASE("unbounded opt survives a round trip") {
  const auto dir = scratch("inf");
  auto r = gen_random_25d(9, 17, 4.0);
  r.opt_upper = std::numeric_limits<double>::infinity();
  save_instance(dir.string(), r);
  const auto back = load_instance25d((dir / (r.id + ".json")).string());
  CHECK(std::isinf(back.opt_upper));
}

TEST_CASE("missing files raise Io") {
  try {
    load_instance1d("/nonexistent/x.json");
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Io);
  }
}

TEST_CASE("svg export") {
  SvgScene sc;
  sc.terrain1d = Terrain1D::from_vertices({{-1, 0}, {0, 0}, {1, 1}});
  sc.markers = {{0, 0}};
  const auto svg = export_svg(sc);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("<polygon") != std::string::npos);
  const auto t = Terrain25D::flat(1.0);
  sc.terrain25d = &t;
  try {
    export_svg(sc);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MixedDimensionality);
  }
}
