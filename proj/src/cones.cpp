#include "alcoves/cones.hpp"

#include <atomic>
#include <deque>
#include <stdexcept>

namespace alcoves {
namespace cones {

namespace {

std::atomic<long long> g_obtuse_calls{0};
std::atomic<long long> g_obtuse_stable{0};

bool w_positive(const Affine& af, const WeylElt& w, int root_idx) {
  return af.rd().classify_root(w.coact_root(af.rd().root(root_idx).alpha)).second > 0;
}

Int floor_div(Int a, Int b) {
  Int q = a / b;
  if (a % b != 0 && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace

Side w_side(const Affine& af, const WeylElt& w, const AffineRoot& ar, const VecQ& p) {
  int s = af.eval(ar, p).sign();
  if (s == 0) return Side::on;
  bool plus = (s > 0) == w_positive(af, w, ar.root);
  return plus ? Side::plus : Side::minus;
}

ReflDir reflection_direction(const Affine& af, const WeylElt& w, const AffineRoot& ar,
                             const VecQ& from) {
  Side s = w_side(af, w, ar, from);
  if (s == Side::on)
    throw std::invalid_argument("reflection_direction: point on the hyperplane");
  return s == Side::minus ? ReflDir::direction : ReflDir::opposite;
}

bool acute_cone_contains(const Affine& af, const WeylElt& w, const AffElt& x) {
  Int S = af.point_scale();
  const VecI& b = af.scaled_barycenter();
  VecI xb = af.apply_scaled(x, b);
  for (int idx = 0; idx < af.rd().npositive(); ++idx) {
    const VecI& alpha = af.rd().root(idx).alpha;
    Int v0 = dot(alpha, b), v1 = dot(alpha, xb);
    if (v0 == v1) continue;
    bool wpos = w_positive(af, w, idx);
    Int lo = std::min(v0, v1), hi = std::max(v0, v1);
    // hyperplanes <alpha,.> + k with -kS strictly between the two values
    for (Int k = floor_div(-hi, S) + 1; k * S < -lo; ++k) {
      Int e0 = v0 + k * S;
      if (e0 == 0) throw std::logic_error("acute_cone_contains: base on wall");
      // base alcove must be on the w-negative side of every separating wall
      if ((e0 > 0) == wpos) return false;
    }
  }
  return true;
}

AffElt regular_base_element(const Affine& af, const WeylElt& w, Int N) {
  return {scale(-2 * N, w.apply(af.rd().two_rho_vee())), w};
}

ObtuseTester::ObtuseTester(const Affine& af, VecI mu) : af_(af), mu_(std::move(mu)) {
  if (!af_.rd().is_dominant(mu_))
    throw std::invalid_argument("ObtuseTester: mu must be dominant");
  n0_ = 2 * (1 + af_.length(af_.translation(mu_)));
}

const bruhat::DescentChain& ObtuseTester::chain(int weyl_idx, int level) {
  auto key = std::make_pair(weyl_idx, level);
  auto it = chains_.find(key);
  if (it != chains_.end()) return it->second;
  const WeylElt& w = af_.rd().weyl()[weyl_idx];
  AffElt z = regular_base_element(af_, w, n0_ << level);
  AffElt y = z.inverse() * af_.translation(w.apply(mu_));
  zs_.emplace(key, std::move(z));
  return chains_.emplace(key, bruhat::descent_chain(af_, y)).first->second;
}

bool ObtuseTester::test_at(const AffElt& x, int weyl_idx, int level) {
  const bruhat::DescentChain& ch = chain(weyl_idx, level);
  const AffElt& z = zs_.at(std::make_pair(weyl_idx, level));
  return bruhat::leq_chain(af_, ch, z.inverse() * x);
}

bool ObtuseTester::contains(const AffElt& x, int weyl_idx) {
  bool v0 = test_at(x, weyl_idx, 0);
  bool v1 = test_at(x, weyl_idx, 1);
  ++g_obtuse_calls;
  if (v0 == v1) {
    ++g_obtuse_stable;
    return v0;
  }
  bool prev = v1;
  for (int level = 2; level <= 3; ++level) {
    bool v = test_at(x, weyl_idx, level);
    if (v == prev) return v;
    prev = v;
  }
  throw std::logic_error("obtuse cone membership unstable after 3 doublings");
}

bool ObtuseTester::contains_all(const AffElt& x) {
  for (int wi = 0; wi < af_.rd().weyl_order(); ++wi)
    if (!contains(x, wi)) return false;
  return true;
}

bool obtuse_cone_contains_alcove(const Affine& af, const AffElt& x, const WeylElt& w,
                                 const VecI& mu) {
  int wi = af.rd().weyl_index(w);
  if (wi < 0) throw std::invalid_argument("obtuse_cone_contains_alcove: w not in W");
  ObtuseTester t(af, mu);
  return t.contains(x, wi);
}

ObtuseStats obtuse_stats() { return {g_obtuse_calls.load(), g_obtuse_stable.load()}; }

void reset_obtuse_stats() {
  g_obtuse_calls = 0;
  g_obtuse_stable = 0;
}

std::set<VecQ> obtuse_point_reach(const Affine& af, const WeylElt& w, const VecQ& p,
                                  const VecQ& cap) {
  const RootDatum& rd = af.rd();
  int n = rd.nsimple();
  for (int i = 0; i < n; ++i)
    if (cap[i].sign() < 0) return {};

  // interval of <alpha, .> over the search box, per positive root
  std::vector<Rat> lo(rd.npositive()), hi(rd.npositive());
  for (int idx = 0; idx < rd.npositive(); ++idx) {
    const VecI& alpha = rd.root(idx).alpha;
    Rat l = dot(alpha, p), h = l;
    for (int i = 0; i < n; ++i) {
      Rat g = dot(alpha, w.apply(to_q(rd.simple_coroot(i))));
      if (g.sign() > 0)
        l -= cap[i] * g;
      else
        h -= cap[i] * g;
    }
    lo[idx] = l;
    hi[idx] = h;
  }

  auto coords_in_box = [&](const VecQ& r) -> std::optional<VecQ> {
    auto c = rd.coroot_coords(w.apply_inv(sub(p, r)));
    if (!c) return std::nullopt;
    for (int i = 0; i < n; ++i)
      if ((*c)[i].sign() < 0 || (*c)[i] > cap[i]) return std::nullopt;
    return c;
  };

  std::set<VecQ> visited{p};
  std::deque<std::pair<VecQ, VecQ>> queue{{p, VecQ(n, Rat(0))}};
  while (!queue.empty()) {
    auto [r, cr] = queue.front();
    queue.pop_front();
    for (int idx = 0; idx < rd.npositive(); ++idx) {
      const Root& root = rd.root(idx);
      Rat val = dot(root.alpha, r);
      int sigma = w_positive(af, w, idx) ? 1 : -1;  // start side for w-opposite
      // k range keeping the image value inside [lo, hi]
      Int kmin = ((-val - hi[idx]) / Rat(2)).ceil();
      Int kmax = ((-val - lo[idx]) / Rat(2)).floor();
      for (Int k = kmin; k <= kmax; ++k) {
        Rat e = val + Rat(k);
        if (e.sign() != sigma) continue;
        VecQ img = sub(r, scale(e, to_q(root.coroot)));
        if (visited.count(img)) continue;
        auto ci = coords_in_box(img);
        if (!ci) continue;
        for (int i = 0; i < n; ++i)
          if ((*ci)[i] < cr[i])
            throw std::logic_error("obtuse_point_reach: non-monotone displacement");
        visited.insert(img);
        queue.emplace_back(std::move(img), std::move(*ci));
      }
    }
  }
  return visited;
}

namespace {

// unique representative of the affine Weyl orbit inside the closed base alcove
VecQ fold_to_base(const Affine& af, VecQ p) {
  int bounce = 0;
  for (;;) {
    bool moved = false;
    for (int i = 0; i < af.nwalls() && !moved; ++i) {
      const Wall& wall = af.wall(i);
      int sp = af.eval(wall.ar, p).sign();
      if (sp != 0 && sp != af.eval(wall.ar, af.barycenter()).sign()) {
        p = af.reflect(wall.ar, p);
        moved = true;
      }
    }
    if (!moved) return p;
    if (++bounce > 100000) throw std::logic_error("fold_to_base: runaway");
  }
}

}  // namespace

bool obtuse_cone_contains_point(const Affine& af, const WeylElt& w, const VecQ& q,
                                const VecQ& p) {
  if (fold_to_base(af, p) != fold_to_base(af, q))
    throw std::invalid_argument(
        "obtuse_cone_contains_point: points in different affine Weyl orbits");
  auto c = af.rd().coroot_coords(w.apply_inv(sub(p, q)));
  if (!c) return false;
  for (const Rat& x : *c)
    if (x.sign() < 0) return false;
  return obtuse_point_reach(af, w, p, *c).count(q) > 0;
}

std::pair<AffineRoot, AffineRoot> coroot_double_step(const Affine& af, const AffElt& c,
                                                     const VecI& coroot_vec,
                                                     const WeylElt& w) {
  const RootDatum& rd = af.rd();
  int idx = -1, d = 0;
  for (int i = 0; i < rd.npositive(); ++i) {
    if (rd.root(i).coroot == coroot_vec) {
      idx = i;
      d = 1;
      break;
    }
    if (neg(rd.root(i).coroot) == coroot_vec) {
      idx = i;
      d = -1;
      break;
    }
  }
  if (idx < 0) throw std::invalid_argument("coroot_double_step: not a coroot");
  int sigma = w_positive(af, w, idx) ? 1 : -1;
  if (d != -sigma)
    throw std::invalid_argument(
        "coroot_double_step: displacement is not w-opposite for this direction");
  VecQ bc = c.apply(af.barycenter());
  Int m = dot(rd.root(idx).alpha, bc).floor();
  Int k2 = sigma < 0 ? -m - 1 : -m;
  AffineRoot first{idx, k2}, second{idx, k2 - d};

  if (reflection_direction(af, w, first, bc) != ReflDir::opposite)
    throw std::logic_error("coroot_double_step: first reflection not w-opposite");
  VecQ mid = af.reflect(first, bc);
  if (reflection_direction(af, w, second, mid) != ReflDir::opposite)
    throw std::logic_error("coroot_double_step: second reflection not w-opposite");
  AffElt comp = af.reflection_elt(second) * af.reflection_elt(first);
  if (!(comp == af.translation(coroot_vec)))
    throw std::logic_error("coroot_double_step: composite is not the translation");
  return {first, second};
}

std::vector<WeylElt> facet_chamber_group(const Affine& af, const WallSet& J) {
  std::vector<WeylElt> out;
  for (const WeylElt& w : af.rd().weyl()) {
    bool ok = true;
    for (int id : J.ids()) {
      const Wall& wall = af.wall(id);
      bool want_plus = wall.ar.k != 0;  // side of the base alcove
      if (w_positive(af, w, wall.ar.root) != want_plus) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(w);
  }
  return out;
}

VecQ facet_point(const Affine& af, const WallSet& J) {
  auto verts = af.facet_vertices(J);
  if (verts.empty()) throw std::invalid_argument("facet_point: empty facet");
  VecQ sum(af.rd().rank(), Rat(0));
  for (const VertexInfo& v : verts) sum = add(sum, v.point);
  return scale(Rat(1, static_cast<Int>(verts.size())), sum);
}

bool facet_cone_contains(const Affine& af, const WallSet& J, const VecQ& v) {
  VecQ aj = facet_point(af, J);
  for (const WeylElt& w : facet_chamber_group(af, J))
    if (af.rd().is_dominant(w.apply_inv(sub(v, aj)))) return true;
  return false;
}

}  // namespace cones
}  // namespace alcoves
