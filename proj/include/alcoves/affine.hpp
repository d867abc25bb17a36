#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "alcoves/rootdatum.hpp"

namespace alcoves {

// Element of the extended affine Weyl group X_* ⋊ W, acting on X_* ⊗ Q by
// v ↦ trans + fin(v).
struct AffElt {
  VecI trans;
  WeylElt fin;

  static AffElt translation(VecI t) {
    int n = static_cast<int>(t.size());
    return {std::move(t), WeylElt::identity(n)};
  }
  static AffElt from_weyl(const WeylElt& w) {
    return {VecI(static_cast<size_t>(w.mat().n), 0), w};
  }

  AffElt operator*(const AffElt& o) const {
    return {add(trans, fin.apply(o.trans)), fin * o.fin};
  }
  AffElt inverse() const {
    WeylElt fi = fin.inverse();
    return {neg(fi.apply(trans)), fi};
  }

  VecQ apply(const VecQ& v) const { return add(to_q(trans), fin.apply(v)); }
  VecI apply(const VecI& v) const { return add(trans, fin.apply(v)); }

  bool is_translation() const { return fin.is_identity(); }

  // flat integer key: translation part then matrix entries
  VecI key() const {
    VecI k = trans;
    k.insert(k.end(), fin.mat().a.begin(), fin.mat().a.end());
    return k;
  }

  friend bool operator==(const AffElt& a, const AffElt& b) {
    return a.trans == b.trans && a.fin == b.fin;
  }
  friend bool operator!=(const AffElt& a, const AffElt& b) { return !(a == b); }
  friend bool operator<(const AffElt& a, const AffElt& b) {
    if (a.trans != b.trans) return a.trans < b.trans;
    return a.fin < b.fin;
  }
};

// Affine root (alpha, k) for positive alpha, i.e. the function <alpha,.> + k.
// `root` indexes into RootDatum::positive_roots().
struct AffineRoot {
  int root = -1;
  Int k = 0;

  friend bool operator==(const AffineRoot& a, const AffineRoot& b) {
    return a.root == b.root && a.k == b.k;
  }
  friend bool operator<(const AffineRoot& a, const AffineRoot& b) {
    if (a.root != b.root) return a.root < b.root;
    return a.k < b.k;
  }
};

struct Wall {
  AffineRoot ar;
  std::string label;  // "1".."n" for simple walls, "0", "0'", ... for affine
  AffElt refl;
  int component;
};

struct VertexInfo {
  VecQ point;
  int type;  // wall id whose hyperplane misses this vertex
};

// Subset of base-alcove walls as a bitmask over wall ids.
struct WallSet {
  uint32_t bits = 0;

  static WallSet none() { return {}; }
  static WallSet of(std::initializer_list<int> ids) {
    WallSet s;
    for (int i : ids) s.bits |= (1u << i);
    return s;
  }

  bool contains(int id) const { return (bits >> id) & 1u; }
  WallSet with(int id) const { return {bits | (1u << id)}; }
  WallSet without(int id) const { return {bits & ~(1u << id)}; }
  int count() const { return __builtin_popcount(bits); }
  bool empty() const { return bits == 0; }
  bool subset_of(const WallSet& o) const { return (bits & ~o.bits) == 0; }

  std::vector<int> ids() const {
    std::vector<int> r;
    for (int i = 0; i < 32; ++i)
      if (contains(i)) r.push_back(i);
    return r;
  }

  friend WallSet operator&(const WallSet& a, const WallSet& b) {
    return {a.bits & b.bits};
  }
  friend WallSet operator|(const WallSet& a, const WallSet& b) {
    return {a.bits | b.bits};
  }
  friend bool operator==(const WallSet& a, const WallSet& b) { return a.bits == b.bits; }
  friend bool operator!=(const WallSet& a, const WallSet& b) { return a.bits != b.bits; }
  friend bool operator<(const WallSet& a, const WallSet& b) { return a.bits < b.bits; }
};

struct OmegaDecomp {
  AffElt u;               // affine Weyl part
  AffElt tau;             // length-zero part, stabilizes the base alcove
  std::vector<int> word;  // reduced word for u in wall ids
};

// Alcove model for a fixed root datum. The base alcove is the antidominant
// one: { x : -1 < <alpha,x> < 0 for all positive alpha }. Its walls are the
// simple hyperplanes (alpha_i, 0) plus (theta_c, 1) per component.
class Affine {
 public:
  explicit Affine(RootDatum rd);
  Affine(const Affine&) = delete;
  Affine& operator=(const Affine&) = delete;

  const RootDatum& rd() const { return rd_; }

  int nwalls() const { return static_cast<int>(walls_.size()); }
  const Wall& wall(int id) const { return walls_[id]; }
  const std::vector<Wall>& walls() const { return walls_; }
  int wall_by_label(const std::string& label) const;
  WallSet parse_walls(const std::string& csv) const;
  std::string wallset_str(const WallSet& s) const;
  WallSet all_walls() const { return {(1u << nwalls()) - 1u}; }

  const VecQ& barycenter() const { return barycenter_; }

  // integer model of barycenter geometry: points are stored multiplied by
  // point_scale(), so alcove walks stay in integer arithmetic
  Int point_scale() const { return scale_; }
  const VecI& scaled_barycenter() const { return scaled_barycenter_; }
  Int eval_scaled(const AffineRoot& ar, const VecI& p) const;
  VecI reflect_scaled(const AffineRoot& ar, const VecI& p) const;
  VecI apply_scaled(const AffElt& x, const VecI& p) const;

  Rat eval(const AffineRoot& ar, const VecQ& v) const;
  AffineRoot canonical(const VecI& alpha, Int k) const;
  AffineRoot transport(const AffElt& x, const AffineRoot& ar) const;
  AffElt reflection_elt(const AffineRoot& ar) const;
  VecQ reflect(const AffineRoot& ar, const VecQ& v) const;

  bool in_base_closure(const VecQ& p) const;
  // p and q interior points: do they lie in the same open alcove?
  bool same_alcove(const VecQ& p, const VecQ& q) const;

  AffElt identity() const { return AffElt::translation(VecI(rd_.rank(), 0)); }
  AffElt translation(const VecI& mu) const { return AffElt::translation(mu); }
  AffElt simple_affine(int wall_id) const { return walls_[wall_id].refl; }

  Int length(const AffElt& x) const;
  bool in_waff(const AffElt& x) const { return rd_.in_coroot_lattice(x.trans); }
  bool same_waff_coset(const AffElt& x, const AffElt& y) const;

  // hyperplanes crossed by a minimal gallery from the base alcove to x(base)
  std::vector<AffineRoot> gallery_walk(const AffElt& x) const;
  OmegaDecomp omega_decompose(const AffElt& x) const;
  AffElt tau_of(const VecI& mu) const;

  // one vertex of the base alcove per wall; throws for wall systems whose
  // complementary equations are inconsistent (reducible data)
  const std::vector<VertexInfo>& base_vertices() const;
  std::vector<VertexInfo> facet_vertices(const WallSet& J) const;

  bool parahoric_finite(const WallSet& J) const;
  std::vector<AffElt> parahoric(const WallSet& J) const;

 private:
  RootDatum rd_;
  std::vector<Wall> walls_;
  VecQ barycenter_;
  Int scale_ = 1;
  VecI scaled_barycenter_;
  std::vector<VertexInfo> vertices_;
  std::string vertex_error_;
};

// sort by (length, translation part, matrix), the export order used everywhere
void canonical_sort(const Affine& af, std::vector<AffElt>& v);

}  // namespace alcoves
