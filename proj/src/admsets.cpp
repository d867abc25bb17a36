#include "alcoves/admsets.hpp"

#include <algorithm>
#include <stdexcept>

namespace alcoves {
namespace admsets {

namespace {

void require_dominant(const Affine& af, const VecI& mu, const char* who) {
  if (static_cast<int>(mu.size()) != af.rd().rank())
    throw std::invalid_argument(std::string(who) + ": mu has wrong dimension");
  if (!af.rd().is_dominant(mu))
    throw std::invalid_argument(std::string(who) + ": mu must be dominant");
}

// memoized reachable sets of one obtuse point cone, grown on demand
struct PointReach {
  const Affine* af = nullptr;
  const WeylElt* w = nullptr;
  VecQ p;
  VecQ cap;
  std::set<VecQ> pts;

  bool contains(const VecQ& q) {
    auto c = af->rd().coroot_coords(w->apply_inv(sub(p, q)));
    if (!c) return false;
    bool grow = false;
    for (size_t i = 0; i < c->size(); ++i) {
      if ((*c)[i].sign() < 0) return false;
      if ((*c)[i] > cap[i]) grow = true;
    }
    if (grow) {
      for (size_t i = 0; i < c->size(); ++i)
        if ((*c)[i] > cap[i]) cap[i] = (*c)[i];
      pts = cones::obtuse_point_reach(*af, *w, p, cap);
    }
    return pts.count(q) > 0;
  }
};

}  // namespace

PermBox perm_candidate_box(const Affine& af, const VecI& mu) {
  require_dominant(af, mu, "perm_candidate_box");
  const RootDatum& rd = af.rd();
  int n = rd.nsimple();
  auto orbit = rd.weyl_orbit(mu);
  const auto& verts = af.base_vertices();

  PermBox box;
  VecI lo(n), hi(n);
  for (int i = 0; i < n; ++i) {
    Rat mn(0), mx(0);
    for (const VecI& nu : orbit) {
      Rat v = dot(rd.coweight_row(i), to_q(sub(nu, mu)));
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    Rat d(0);
    for (const WeylElt& u : rd.weyl())
      for (const VertexInfo& a : verts) {
        Rat v = dot(rd.coweight_row(i), sub(a.point, u.apply(a.point)));
        if (v.sign() < 0) v = -v;
        d = std::max(d, v);
      }
    box.expansion.push_back(d);
    lo[i] = (mn - d).ceil();
    hi[i] = (mx + d).floor();
  }

  VecI c = lo;
  for (;;) {
    VecI lam = mu;
    for (int i = 0; i < n; ++i) lam = add(lam, scale(c[i], rd.simple_coroot(i)));
    box.lambdas.push_back(std::move(lam));
    int i = 0;
    while (i < n && c[i] == hi[i]) {
      c[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++c[i];
  }
  return box;
}

bool perm_contains(const Affine& af, const VecI& mu, const AffElt& x) {
  require_dominant(af, mu, "perm_contains");
  for (const VertexInfo& a : af.base_vertices())
    if (!af.rd().conv_hull_contains(mu, sub(x.apply(a.point), a.point))) return false;
  return true;
}

std::vector<AffElt> enumerate_adm(const Affine& af, const VecI& mu) {
  require_dominant(af, mu, "enumerate_adm");
  std::vector<AffElt> tops;
  for (const VecI& nu : af.rd().weyl_orbit(mu)) tops.push_back(af.translation(nu));
  return bruhat::lower_closure(af, tops);
}

std::vector<AffElt> enumerate_perm(const Affine& af, const VecI& mu, PermBox* box_out) {
  PermBox box = perm_candidate_box(af, mu);
  std::vector<AffElt> out;
  for (const VecI& lam : box.lambdas)
    for (const WeylElt& u : af.rd().weyl()) {
      AffElt x{lam, u};
      if (perm_contains(af, mu, x)) out.push_back(std::move(x));
    }
  canonical_sort(af, out);
  if (box_out) *box_out = std::move(box);
  return out;
}

std::vector<AffElt> enumerate_adm_st(const Affine& af, const VecI& mu) {
  PermBox box = perm_candidate_box(af, mu);
  cones::ObtuseTester tester(af, mu);
  std::vector<AffElt> out;
  for (const VecI& lam : box.lambdas)
    for (const WeylElt& u : af.rd().weyl()) {
      AffElt x{lam, u};
      if (!tester.contains_all(x)) continue;
      if (!perm_contains(af, mu, x))
        throw std::logic_error(
            "enumerate_adm_st: member escapes the vertex hull predicate");
      out.push_back(std::move(x));
    }
  canonical_sort(af, out);
  return out;
}

bool adm_st_contains(const Affine& af, const VecI& mu, const AffElt& x) {
  require_dominant(af, mu, "adm_st_contains");
  cones::ObtuseTester tester(af, mu);
  return tester.contains_all(x);
}

std::vector<AffElt> enumerate_adm_J(const Affine& af, const VecI& mu, const WallSet& J) {
  return saturate(af, enumerate_adm(af, mu), J, true, true);
}

bool perm_st_J_contains(const Affine& af, const VecI& mu, const WallSet& J,
                        const AffElt& x) {
  require_dominant(af, mu, "perm_st_J_contains");
  for (const VertexInfo& a : af.facet_vertices(J)) {
    VecQ q = x.apply(a.point);
    for (const WeylElt& w : af.rd().weyl()) {
      VecQ p = add(to_q(w.apply(mu)), a.point);
      if (!cones::obtuse_cone_contains_point(af, w, q, p)) return false;
    }
  }
  return true;
}

std::vector<AffElt> enumerate_perm_st_J(const Affine& af, const VecI& mu,
                                        const WallSet& J) {
  require_dominant(af, mu, "enumerate_perm_st_J");
  const RootDatum& rd = af.rd();
  auto verts = af.facet_vertices(J);
  PermBox box = perm_candidate_box(af, mu);

  std::vector<PointReach> reach(verts.size() * rd.weyl_order());
  for (size_t vi = 0; vi < verts.size(); ++vi)
    for (int wi = 0; wi < rd.weyl_order(); ++wi) {
      PointReach& r = reach[vi * rd.weyl_order() + wi];
      r.af = &af;
      r.w = &rd.weyl()[wi];
      r.p = add(to_q(r.w->apply(mu)), verts[vi].point);
      r.cap.assign(rd.nsimple(), Rat(0));
      r.pts = {r.p};
    }

  std::vector<AffElt> out;
  for (const VecI& lam : box.lambdas)
    for (const WeylElt& u : rd.weyl()) {
      AffElt x{lam, u};
      bool ok = true;
      for (size_t vi = 0; vi < verts.size() && ok; ++vi) {
        VecQ q = x.apply(verts[vi].point);
        for (int wi = 0; wi < rd.weyl_order(); ++wi)
          if (!reach[vi * rd.weyl_order() + wi].contains(q)) {
            ok = false;
            break;
          }
      }
      if (!ok) continue;
      for (const VertexInfo& a : verts)
        if (!rd.conv_hull_contains(mu, sub(x.apply(a.point), a.point)))
          throw std::logic_error(
              "enumerate_perm_st_J: member escapes the vertex hull predicate");
      out.push_back(std::move(x));
    }
  canonical_sort(af, out);
  return out;
}

std::vector<AffElt> product_set(const Affine& af, const std::vector<AffElt>& a,
                                const std::vector<AffElt>& b) {
  std::set<AffElt> prod;
  for (const AffElt& x : a)
    for (const AffElt& y : b) prod.insert(x * y);
  std::vector<AffElt> out(prod.begin(), prod.end());
  canonical_sort(af, out);
  return out;
}

std::vector<AffElt> saturate(const Affine& af, const std::vector<AffElt>& s,
                             const WallSet& J, bool left, bool right) {
  auto wj = af.parahoric(J);
  std::set<AffElt> cur(s.begin(), s.end());
  if (left) {
    std::set<AffElt> next;
    for (const AffElt& g : wj)
      for (const AffElt& x : cur) next.insert(g * x);
    cur = std::move(next);
  }
  if (right) {
    std::set<AffElt> next;
    for (const AffElt& x : cur)
      for (const AffElt& g : wj) next.insert(x * g);
    cur = std::move(next);
  }
  std::vector<AffElt> out(cur.begin(), cur.end());
  canonical_sort(af, out);
  return out;
}

}  // namespace admsets
}  // namespace alcoves
