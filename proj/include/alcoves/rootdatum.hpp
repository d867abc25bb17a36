#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "alcoves/linalg.hpp"

namespace alcoves {

// A root, stored with its coroot and its coordinates in the simple basis.
// Roots are functionals on X_* (row vectors); coroots live in X_* (columns).
struct Root {
  VecI alpha;
  VecI coroot;
  VecI simple_coords;

  Int height() const {
    Int h = 0;
    for (Int c : simple_coords) h += c;
    return h;
  }
};

// Finite Weyl group element acting on X_*. Keeps the inverse matrix alongside
// so that functionals can be transformed without solving anything:
//   w(alpha) = alpha . m^{-1},  w^{-1}(alpha) = alpha . m.
class WeylElt {
 public:
  WeylElt() = default;
  WeylElt(MatI m, MatI mi) : m_(std::move(m)), mi_(std::move(mi)) {}

  static WeylElt identity(int n) { return {MatI::identity(n), MatI::identity(n)}; }

  const MatI& mat() const { return m_; }
  const MatI& inv_mat() const { return mi_; }

  VecI apply(const VecI& v) const { return m_.apply(v); }
  VecQ apply(const VecQ& v) const { return m_.apply(v); }
  VecI apply_inv(const VecI& v) const { return mi_.apply(v); }
  VecQ apply_inv(const VecQ& v) const { return mi_.apply(v); }

  VecI act_root(const VecI& alpha) const { return mi_.apply_row(alpha); }
  VecI coact_root(const VecI& alpha) const { return m_.apply_row(alpha); }

  WeylElt operator*(const WeylElt& o) const { return {m_ * o.m_, o.mi_ * mi_}; }
  WeylElt inverse() const { return {mi_, m_}; }

  bool is_identity() const {
    for (int i = 0; i < m_.n; ++i)
      for (int j = 0; j < m_.n; ++j)
        if (m_.at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  friend bool operator==(const WeylElt& a, const WeylElt& b) { return a.m_ == b.m_; }
  friend bool operator!=(const WeylElt& a, const WeylElt& b) { return !(a == b); }
  friend bool operator<(const WeylElt& a, const WeylElt& b) { return a.m_ < b.m_; }

 private:
  MatI m_, mi_;
};

// Root datum with a chosen cocharacter lattice realization. Presets follow
// the grammar TYPE RANK "-" LATTICE, e.g. "A2-sc", "C2-sc", "A1-gl":
//   sc = coroot lattice basis, ad = coweight lattice basis,
//   gl = GL-style lattice for type A (rank+1 coordinates).
// Everything is computed eagerly and the object is immutable afterwards.
class RootDatum {
 public:
  struct Component {
    std::vector<int> simples;  // simple root indices
    int highest;               // positive root index of the highest root
  };

  static RootDatum preset(const std::string& key);
  static RootDatum from_simple_system(std::vector<VecI> simple_roots,
                                      std::vector<VecI> simple_coroots,
                                      std::string name);

  const std::string& name() const { return name_; }
  int rank() const { return rank_; }
  int nsimple() const { return nsimple_; }
  bool is_gl() const { return gl_; }

  Int cartan(int i, int j) const { return dot(simple_roots_[i], simple_coroots_[j]); }
  const VecI& simple_root(int i) const { return simple_roots_[i]; }
  const VecI& simple_coroot(int i) const { return simple_coroots_[i]; }

  const std::vector<Root>& positive_roots() const { return pos_; }
  const Root& root(int idx) const { return pos_[idx]; }
  int npositive() const { return static_cast<int>(pos_.size()); }

  // index into positive_roots(), or -1
  int positive_index(const VecI& alpha) const;
  // (index, +1/-1) for alpha = sign * positive_roots()[index]; throws if not a root
  std::pair<int, int> classify_root(const VecI& alpha) const;

  const std::vector<Component>& components() const { return comps_; }
  int component_of(int simple) const { return comp_of_simple_[simple]; }

  const std::vector<WeylElt>& weyl() const { return weyl_; }
  int weyl_order() const { return static_cast<int>(weyl_.size()); }
  int weyl_index(const WeylElt& w) const;
  const WeylElt& simple_reflection(int i) const { return simple_refl_[i]; }
  WeylElt reflection(int pos_idx) const;

  Rat pair(const VecI& alpha, const VecQ& v) const { return dot(alpha, v); }
  Int pair(const VecI& alpha, const VecI& v) const { return dot(alpha, v); }

  VecQ reflect(int pos_idx, const VecQ& v) const;
  VecI reflect(int pos_idx, const VecI& v) const;

  std::vector<VecI> weyl_orbit(const VecI& mu) const;

  bool is_dominant(const VecI& v) const;
  bool is_dominant(const VecQ& v) const;
  std::pair<VecQ, WeylElt> dominant_rep(const VecQ& v) const;
  std::pair<VecI, WeylElt> dominant_rep(const VecI& v) const;

  // dominance order on cocharacters: mu - lam a nonnegative integer
  // combination of simple coroots (false when not in the coroot lattice)
  bool dominance_leq(const VecI& lam, const VecI& mu) const;

  // rational coordinates of v in the simple coroot basis, nullopt off-span
  std::optional<VecQ> coroot_coords(const VecQ& v) const;
  bool in_coroot_lattice(const VecQ& v) const;
  bool in_coroot_lattice(const VecI& v) const { return in_coroot_lattice(to_q(v)); }

  // membership of v in the convex hull of the Weyl orbit of dominant mu,
  // by reduction to the dominant chamber
  bool conv_hull_contains(const VecI& mu, const VecQ& v) const;
  // same set, computed instead as the intersection of the shifted obtuse
  // cones w(mu) + w(B0) over all w; kept as an independent cross-check
  bool conv_hull_contains_alt(const VecI& mu, const VecQ& v) const;

  // fundamental coweight functionals: row i pairs to delta_ij with coroot j;
  // only meaningful on the span of the coroots
  const VecQ& coweight_row(int i) const { return fw_rows_[i]; }

  const VecI& two_rho_vee() const { return two_rho_vee_; }
  // point with <alpha_i, p> = 1 for all i, minimal norm
  const VecQ& dominant_point() const { return dominant_pt_; }
  Int max_root_height() const { return max_height_; }

 private:
  RootDatum() = default;
  void build();

  std::string name_;
  int rank_ = 0;
  int nsimple_ = 0;
  bool gl_ = false;
  std::vector<VecI> simple_roots_;
  std::vector<VecI> simple_coroots_;
  std::vector<Root> pos_;
  std::map<VecI, int> pos_index_;
  std::vector<Component> comps_;
  std::vector<int> comp_of_simple_;
  std::vector<WeylElt> simple_refl_;
  std::vector<WeylElt> weyl_;
  std::map<VecI, int> weyl_index_;
  std::vector<VecQ> fw_rows_;
  VecI two_rho_vee_;
  VecQ dominant_pt_;
  Int max_height_ = 0;
};

}  // namespace alcoves
