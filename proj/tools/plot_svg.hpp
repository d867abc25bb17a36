#pragma once

// Rank-2 SVG pictures: the alcove pattern, the admissible alcoves shaded,
// the extreme translation alcoves outlined, the orbit hull dashed. Exact
// arithmetic everywhere except the final coordinate printing.

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "alcoves/admsets.hpp"

namespace plotsvg {

using namespace alcoves;

struct Embed {
  // upper-triangular square root of the invariant Gram matrix, so the map
  // v -> M v is an isometry onto the drawing plane
  double m00 = 1, m01 = 0, m11 = 1;

  std::pair<double, double> operator()(const VecQ& v) const {
    double v0 = v[0].to_double(), v1 = v[1].to_double();
    return {m00 * v0 + m01 * v1, m11 * v1};
  }
};

inline Embed make_embed(const RootDatum& rd) {
  double g[2][2] = {{0, 0}, {0, 0}};
  for (const Root& r : rd.positive_roots())
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        g[i][j] += double(r.alpha[i]) * double(r.alpha[j]);
  Embed e;
  e.m00 = std::sqrt(g[0][0]);
  e.m01 = g[0][1] / e.m00;
  e.m11 = std::sqrt(g[1][1] - e.m01 * e.m01);
  return e;
}

inline std::string render(const Affine& af, const VecI& mu) {
  const RootDatum& rd = af.rd();
  if (rd.rank() != 2)
    throw std::invalid_argument("plot supports rank 2 presets only");

  Embed em = make_embed(rd);
  std::vector<AffElt> adm = admsets::enumerate_adm(af, mu);
  std::vector<VecI> orbit = rd.weyl_orbit(mu);
  const std::vector<VertexInfo>& verts = af.base_vertices();

  auto corners = [&](const AffElt& x) {
    std::vector<std::pair<double, double>> c;
    for (const VertexInfo& v : verts) c.push_back(em(x.apply(v.point)));
    return c;
  };

  double xmin = 1e18, xmax = -1e18, ymin = 1e18, ymax = -1e18;
  auto grow = [&](const std::pair<double, double>& p) {
    xmin = std::min(xmin, p.first);
    xmax = std::max(xmax, p.first);
    ymin = std::min(ymin, p.second);
    ymax = std::max(ymax, p.second);
  };
  std::vector<std::vector<std::pair<double, double>>> shaded;
  for (const AffElt& x : adm) {
    shaded.push_back(corners(x));
    for (const auto& p : shaded.back()) grow(p);
  }
  std::vector<std::vector<std::pair<double, double>>> outlined;
  std::vector<std::pair<double, double>> dots;
  for (const VecI& lam : orbit) {
    outlined.push_back(corners(af.translation(lam)));
    for (const auto& p : outlined.back()) grow(p);
    dots.push_back(em(to_q(lam)));
    grow(dots.back());
  }

  double pad = 0.6;
  xmin -= pad, ymin -= pad, xmax += pad, ymax += pad;
  double sc = 640.0 / std::max(xmax - xmin, ymax - ymin);
  auto px = [&](const std::pair<double, double>& p) {
    // svg y grows downward
    return std::make_pair((p.first - xmin) * sc, (ymax - p.second) * sc);
  };
  double width = (xmax - xmin) * sc, height = (ymax - ymin) * sc;

  std::ostringstream svg;
  svg.setf(std::ios::fixed);
  svg.precision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // the reflection hyperplanes crossing the picture
  for (const Root& r : rd.positive_roots()) {
    // largest |<alpha, v>| over drawn content bounds the k range
    double kmax = 1;
    for (const VecI& lam : orbit) {
      double v = 0;
      for (int i = 0; i < 2; ++i) v += double(r.alpha[i]) * double(lam[i]);
      kmax = std::max(kmax, std::fabs(v));
    }
    long long krange = static_cast<long long>(kmax) + 2;
    // direction spanning the kernel of the pairing with alpha, and one
    // point on each hyperplane via the coroot
    VecQ dir = {Rat(-r.alpha[1]), Rat(r.alpha[0])};
    auto dp = em(dir);
    double dlen = std::hypot(dp.first, dp.second);
    double t = (width + height) / sc / dlen + 4;
    for (long long k = -krange; k <= krange; ++k) {
      VecQ p0 = scale(Rat(-k, 2), to_q(r.coroot));
      auto c = em(p0);
      auto a = px({c.first - t * dp.first, c.second - t * dp.second});
      auto b = px({c.first + t * dp.first, c.second + t * dp.second});
      svg << "<line x1=\"" << a.first << "\" y1=\"" << a.second << "\" x2=\"" << b.first
          << "\" y2=\"" << b.second << "\" stroke=\"#d8d8d8\" stroke-width=\"1\"/>\n";
    }
  }

  auto polygon = [&](const std::vector<std::pair<double, double>>& pts,
                     const std::string& style) {
    svg << "<polygon points=\"";
    for (size_t i = 0; i < pts.size(); ++i) {
      auto p = px(pts[i]);
      svg << (i ? " " : "") << p.first << "," << p.second;
    }
    svg << "\" " << style << "/>\n";
  };

  for (const auto& tri : shaded)
    polygon(tri, "fill=\"#9ecae1\" fill-opacity=\"0.75\" stroke=\"#31708f\" stroke-width=\"0.7\"");

  // convex hull of the orbit, dashed; orbit points are already in convex
  // position so sorting by angle around the centroid gives the boundary
  if (orbit.size() > 1) {
    std::vector<std::pair<double, double>> hull = dots;
    double cx = 0, cy = 0;
    for (const auto& p : hull) cx += p.first, cy += p.second;
    cx /= hull.size(), cy /= hull.size();
    std::sort(hull.begin(), hull.end(), [&](const auto& a, const auto& b) {
      return std::atan2(a.second - cy, a.first - cx) <
             std::atan2(b.second - cy, b.first - cx);
    });
    polygon(hull,
            "fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.6\" stroke-dasharray=\"6,4\"");
  }

  for (const auto& tri : outlined)
    polygon(tri, "fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"");

  for (const auto& d : dots) {
    auto p = px(d);
    svg << "<circle cx=\"" << p.first << "\" cy=\"" << p.second
        << "\" r=\"3\" fill=\"#2ca02c\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace plotsvg
