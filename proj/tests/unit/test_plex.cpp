#include "oracles.hpp"

#include "plexdist/error.hpp"
#include "plexdist/meshgen.hpp"
#include "plexdist/plex.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include <algorithm>

using namespace plexdist;
using oracle::Set;
namespace d = plexdist::doublet;

namespace {

Set as_set(std::span<const PointId> v) { return Set(v.begin(), v.end()); }
Set as_set(const std::vector<PointId>& v) { return Set(v.begin(), v.end()); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kParse;
}

std::vector<Plex> small_meshes() {
  return {gen_doublet(), gen_box_2d(1), gen_box_2d(3), gen_box_3d(1), gen_box_3d(2),
          plex_uniform_refine_2d(gen_doublet())};
}

} // namespace

TEST(Doublet, GoldenQueries) {
  const auto m = gen_doublet();
  EXPECT_EQ(m.size(), 11);
  EXPECT_EQ(as_set(m.cone(d::kA)), (Set{d::ka, d::kb, d::ke}));
  EXPECT_EQ(as_set(m.support(d::kBeta)), (Set{d::ka, d::kc, d::ke}));
  EXPECT_EQ(as_set(m.closure(d::kA)), (Set{0, 6, 7, 10, 2, 3, 4}));
  EXPECT_EQ(as_set(m.star(d::kBeta)), (Set{3, 6, 8, 10, 0, 1}));
  EXPECT_TRUE(m.support(d::kA).empty());
  EXPECT_EQ(m.closure(d::kAlpha), std::vector<PointId>{d::kAlpha});
}

TEST(Doublet, ClosureIsBreadthFirst) {
  const auto m = gen_doublet();
  const auto cl = m.closure(d::kA);
  EXPECT_EQ(cl[0], d::kA);
  EXPECT_EQ((std::vector<PointId>(cl.begin() + 1, cl.begin() + 4)),
            (std::vector<PointId>(m.cone(d::kA).begin(), m.cone(d::kA).end())));
}

TEST(Doublet, Adjacency) {
  const auto m = gen_doublet();
  EXPECT_EQ(m.adjacency(d::kA, Adjacency::kFV), (std::vector<PointId>{0, 1}));
  EXPECT_EQ(m.adjacency(d::kBeta, Adjacency::kFE).size(), 11u);
  EXPECT_EQ(m.adjacency(d::kAlpha, Adjacency::kFE),
            (std::vector<PointId>{0, 2, 3, 4, 6, 7, 10}));
}

TEST(Doublet, Strata) {
  const auto m = gen_doublet();
  EXPECT_EQ(m.dimension(), 2);
  EXPECT_EQ(m.depth_stratum(2), (std::pair<PointId, PointId>{0, 2}));
  EXPECT_EQ(m.depth_stratum(0), (std::pair<PointId, PointId>{2, 6}));
  EXPECT_EQ(m.depth_stratum(1), (std::pair<PointId, PointId>{6, 11}));
  EXPECT_TRUE(m.canonically_ordered());
  EXPECT_EQ(m.depth_label().stratum(1).size(), 5u);
}

TEST(Build, SingleVertexAndEmpty) {
  const auto v = Plex::build({0}, {}, {});
  EXPECT_EQ(v.size(), 1);
  EXPECT_EQ(v.dimension(), 0);
  EXPECT_EQ(v.adjacency(0, Adjacency::kFV), std::vector<PointId>{0});
  const auto e = Plex::build({}, {}, {});
  EXPECT_EQ(e.size(), 0);
  EXPECT_EQ(e.dimension(), -1);
}

TEST(Build, Errors) {
  EXPECT_EQ(kind_of([] { Plex::build({1}, {0}, {}); }), ErrorKind::kInvalidTopology);
  EXPECT_EQ(kind_of([] { Plex::build({1, 1}, {1, 0}, {}); }), ErrorKind::kInvalidTopology);
  EXPECT_EQ(kind_of([] { Plex::build({1, 0}, {5}, {}); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { Plex::build({2, 0}, {1}, {}); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([] { Plex::build({1, 0}, {1}, {0, 0}); }), ErrorKind::kInvalidArgument);
  // vertex, edge, vertex: depth-0 points are not contiguous.
  EXPECT_EQ(kind_of([] { Plex::build({0, 2, 0}, {0, 2}, {}); }), ErrorKind::kInvalidNumbering);
  const std::vector<int> wrong{0, 0, 0};
  EXPECT_EQ(kind_of([&] { Plex::build({2, 0, 0}, {1, 2}, {}, wrong); }),
            ErrorKind::kInvalidTopology);
  const auto m = gen_doublet();
  EXPECT_EQ(kind_of([&] { m.cone(11); }), ErrorKind::kInvalidArgument);
  EXPECT_EQ(kind_of([&] { m.support(-1); }), ErrorKind::kInvalidArgument);
}

TEST(Queries, MatchBruteForceOracle) {
  for (const auto& m : small_meshes()) {
    const auto g = oracle::Dag::from_plex(m);
    const auto depth = oracle::depths(g);
    for (PointId p = 0; p < m.size(); ++p) {
      EXPECT_EQ(as_set(m.support(p)), oracle::support(g, p));
      EXPECT_TRUE(std::is_sorted(m.support(p).begin(), m.support(p).end()));
      EXPECT_EQ(as_set(m.closure(p)), oracle::closure(g, p));
      EXPECT_EQ(m.closure(p).size(), oracle::closure(g, p).size()) << "duplicates in closure";
      EXPECT_EQ(as_set(m.star(p)), oracle::star(g, p));
      EXPECT_EQ(as_set(m.adjacency(p, Adjacency::kFE)),
                oracle::adjacency(g, p, Adjacency::kFE));
      EXPECT_EQ(as_set(m.adjacency(p, Adjacency::kFV)),
                oracle::adjacency(g, p, Adjacency::kFV));
      EXPECT_EQ(m.depth(p), depth[p]);
    }
  }
}

TEST(Queries, DualityMonotonicityAndFeSymmetry) {
  for (const auto& m : small_meshes()) {
    for (PointId p = 0; p < m.size(); ++p) {
      for (auto q : m.cone(p)) {
        const auto s = m.support(q);
        EXPECT_TRUE(std::binary_search(s.begin(), s.end(), p));
      }
      const auto clp = as_set(m.closure(p));
      for (auto q : clp)
        for (auto r : m.closure(q))
          EXPECT_TRUE(clp.count(r));
      for (auto q : m.adjacency(p, Adjacency::kFE)) {
        const auto back = m.adjacency(q, Adjacency::kFE);
        EXPECT_TRUE(std::binary_search(back.begin(), back.end(), p));
      }
    }
  }
}

TEST(Queries, SetUnions) {
  const auto m = gen_doublet();
  const std::vector<PointId> cells{d::kA, d::kB};
  EXPECT_EQ(m.closure_of(cells).size(), 11u);
  const std::vector<PointId> verts{d::kAlpha, d::kDelta};
  EXPECT_EQ(m.star_of(verts), (std::vector<PointId>{0, 1, 2, 5, 6, 7, 8, 9}));
}

TEST(Interpolate, SmallShapes) {
  const std::vector<std::vector<PointId>> tri{{0, 1, 2}};
  auto t = plex_interpolate(tri, 3, 2);
  EXPECT_EQ(t.num_cells(), 1);
  EXPECT_EQ(t.num_edges(), 3);
  EXPECT_EQ(t.num_vertices(), 3);

  const std::vector<std::vector<PointId>> two{{0, 1, 2}, {1, 3, 2}};
  auto dbl = plex_interpolate(two, 4, 2);
  EXPECT_EQ(dbl.num_cells(), 2);
  EXPECT_EQ(dbl.num_edges(), 5);
  EXPECT_EQ(dbl.num_vertices(), 4);

  const std::vector<std::vector<PointId>> tet{{0, 1, 2, 3}};
  auto k = plex_interpolate(tet, 4, 3);
  EXPECT_EQ(k.num_cells(), 1);
  EXPECT_EQ(k.num_faces(), 4);
  EXPECT_EQ(k.num_edges(), 6);
  EXPECT_EQ(k.num_vertices(), 4);
  EXPECT_TRUE(k.canonically_ordered());
}

TEST(Interpolate, Errors) {
  const std::vector<std::vector<PointId>> quad{{0, 1, 2, 3}};
  EXPECT_EQ(kind_of([&] { plex_interpolate(quad, 4, 2); }), ErrorKind::kUnsupportedShape);
  EXPECT_EQ(kind_of([&] { plex_interpolate(quad, 4, 4); }), ErrorKind::kUnsupportedShape);
  const std::vector<std::vector<PointId>> repeated{{0, 0, 1}};
  EXPECT_EQ(kind_of([&] { plex_interpolate(repeated, 2, 2); }), ErrorKind::kUnsupportedShape);
}

TEST(Interpolate, CellVertexTuplesSurvive) {
  const auto cells = oracle::freudenthal_tets(2);
  std::vector<std::vector<PointId>> in(cells.begin(), cells.end());
  const auto m = plex_interpolate(in, 27, 3);
  const auto nc = m.num_cells();
  for (PointId c = 0; c < nc; ++c) {
    auto got = tetrahedron_vertices(m, c);
    auto want = in[c];
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (auto& v : want)
      v += nc;
    EXPECT_EQ(got, want);
  }
}

TEST(Orientation, EncodingRangesAndEdgeDirections) {
  for (const auto& m : small_meshes()) {
    for (PointId p = 0; p < m.size(); ++p) {
      const auto k = m.cone_size(p);
      for (auto o : m.orientation(p)) {
        EXPECT_GE(o, -k);
        EXPECT_LT(o, k);
      }
    }
  }
  // Triangle (0,1,2): its edges read in cone order with orientations must
  // walk 0 -> 1 -> 2 -> 0.
  const std::vector<std::vector<PointId>> tri{{0, 1, 2}};
  const auto t = plex_interpolate(tri, 3, 2);
  EXPECT_EQ(triangle_vertices(t, 0), (std::vector<PointId>{1, 2, 3}));
  std::vector<PointId> walk;
  for (int i = 0; i < 3; ++i) {
    const auto e = t.cone(0)[i];
    const auto o = t.orientation(0)[i];
    walk.push_back(o == 0 ? t.cone(e)[0] : t.cone(e)[1]);
  }
  EXPECT_EQ(walk, (std::vector<PointId>{1, 2, 3}));
}

TEST(Doublet, TriangleVerticesFollowOrientation) {
  const auto m = gen_doublet();
  EXPECT_EQ(as_set(triangle_vertices(m, d::kA)), (Set{d::kAlpha, d::kBeta, d::kGamma}));
  EXPECT_EQ(as_set(triangle_vertices(m, d::kB)), (Set{d::kBeta, d::kDelta, d::kGamma}));
}

TEST(Refine, Counts) {
  auto r = plex_uniform_refine_2d(gen_doublet());
  EXPECT_EQ(r.num_cells(), 8);
  EXPECT_EQ(r.num_edges(), 16);
  EXPECT_EQ(r.num_vertices(), 9);
  const std::vector<std::vector<PointId>> tri{{0, 1, 2}};
  auto one = plex_interpolate(tri, 3, 2);
  one.set_coordinates(2, {0, 0, 1, 0, 0, 1});
  auto r1 = plex_uniform_refine_2d(one);
  EXPECT_EQ(r1.num_cells(), 4);
  EXPECT_EQ(r1.num_edges(), 9);
  EXPECT_EQ(r1.num_vertices(), 6);
  EXPECT_EQ(plex_uniform_refine_2d(r1).num_cells(), 16);
}

TEST(Refine, MidpointsAreMeansAndAreaIsKept) {
  const auto m = gen_box_2d(2);
  const auto r = plex_uniform_refine_2d(m);
  EXPECT_EQ(r.coordinate_dim(), 2);
  auto area = [](const Plex& p) {
    double sum = 0;
    for (PointId c = 0; c < p.num_cells(); ++c) {
      const auto v = triangle_vertices(p, c);
      const auto a = p.coordinate(v[0]), b = p.coordinate(v[1]), q = p.coordinate(v[2]);
      sum += 0.5 * std::abs((b[0] - a[0]) * (q[1] - a[1]) - (b[1] - a[1]) * (q[0] - a[0]));
    }
    return sum;
  };
  EXPECT_NEAR(area(m), 1.0, 1e-12);
  EXPECT_NEAR(area(r), 1.0, 1e-12);
  // Every refined vertex lies on the n=4 lattice.
  for (PointId v = r.depth_stratum(0).first; v < r.depth_stratum(0).second; ++v)
    for (double x : r.coordinate(v))
      EXPECT_NEAR(x * 4, std::round(x * 4), 1e-12);
}

TEST(Refine, RejectsNonTriangles) {
  EXPECT_EQ(kind_of([] { plex_uniform_refine_2d(gen_box_3d(1)); }),
            ErrorKind::kUnsupportedShape);
}

TEST(Labels, SetAndQuery) {
  auto m = gen_doublet();
  EXPECT_TRUE(m.has_label(kBoundaryLabel));
  EXPECT_TRUE(m.label("missing").empty());
  m.mutable_label("mark").insert(3, d::kA);
  EXPECT_EQ(m.label_names(), (std::vector<std::string>{"boundary", "mark"}));
  Label bad;
  bad.insert(0, 99);
  EXPECT_THROW(m.set_label("bad", bad), Error);
  m.remove_label("mark");
  EXPECT_FALSE(m.has_label("mark"));
}

TEST(Coordinates, SizeIsChecked) {
  auto m = gen_doublet();
  EXPECT_THROW(m.set_coordinates(2, {0.0, 1.0}), Error);
  EXPECT_EQ(m.coordinate(d::kDelta)[0], 2.0);
  EXPECT_THROW(m.coordinate(d::kA), Error);
}
