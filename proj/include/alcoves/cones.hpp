#pragma once

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "alcoves/bruhat.hpp"

namespace alcoves {
namespace cones {

// For a positive affine root (alpha, k) and finite w, the w-positive side
// H^{w+} is { <alpha,.> + k > 0 } when w^{-1}(alpha) is positive and the
// opposite side otherwise.
enum class Side { plus, minus, on };
Side w_side(const Affine& af, const WeylElt& w, const AffineRoot& ar, const VecQ& p);

// A reflection crossing is in w-direction when it starts on H^{w-} (and so
// lands on H^{w+}); it is w-opposite when it starts on H^{w+}.
enum class ReflDir { direction, opposite };
ReflDir reflection_direction(const Affine& af, const WeylElt& w, const AffineRoot& ar,
                             const VecQ& from);

// is x(base) inside the acute cone C(base, w)?  Equivalently: every
// hyperplane separating x(base) from the base alcove has the base on the
// w-negative side.
bool acute_cone_contains(const Affine& af, const WeylElt& w, const AffElt& x);

// t_{-2N w(2rho^)} w: a base point deep inside the w-chamber; answers of the
// dominance test below stabilize once N is large enough
AffElt regular_base_element(const Affine& af, const WeylElt& w, Int N);

// obtuse-cone membership of alcoves, B(t_{w mu}(base), w), decided through
// the stabilized Bruhat test against the regular base element. One instance
// serves a fixed mu and caches the descent chains per (w, N). Not
// thread-safe; build one per thread.
class ObtuseTester {
 public:
  ObtuseTester(const Affine& af, VecI mu);

  // does B(t_{w mu}(base), w) contain x(base)?
  bool contains(const AffElt& x, int weyl_idx);
  bool contains_all(const AffElt& x);

  Int base_n() const { return n0_; }

 private:
  const bruhat::DescentChain& chain(int weyl_idx, int level);
  bool test_at(const AffElt& x, int weyl_idx, int level);

  const Affine& af_;
  VecI mu_;
  Int n0_;
  std::map<std::pair<int, int>, bruhat::DescentChain> chains_;
  std::map<std::pair<int, int>, AffElt> zs_;
};

bool obtuse_cone_contains_alcove(const Affine& af, const AffElt& x, const WeylElt& w,
                                 const VecI& mu);

// stability bookkeeping: calls answered identically at N0 and 2 N0
struct ObtuseStats {
  long long calls = 0;
  long long first_try_stable = 0;
};
ObtuseStats obtuse_stats();
void reset_obtuse_stats();

// all points reachable from p by w-opposite reflections whose running
// coordinates (of w^{-1}(p - r) in the simple coroot basis) stay in [0, cap]
std::set<VecQ> obtuse_point_reach(const Affine& af, const WeylElt& w, const VecQ& p,
                                  const VecQ& cap);

// can q be reached from p by a sequence of w-opposite point reflections?
// (searches the exact region pinched between the two shifted cones)
bool obtuse_cone_contains_point(const Affine& af, const WeylElt& w, const VecQ& q,
                                const VecQ& p);

// the two affine reflections whose composite translates by the given
// (plus or minus a) coroot, each w-opposite at its application point when the
// displacement points into w(B0)
std::pair<AffineRoot, AffineRoot> coroot_double_step(const Affine& af, const AffElt& c,
                                                     const VecI& coroot_vec,
                                                     const WeylElt& w);

// finite Weyl elements whose translated chambers tile the acute cone at the
// facet fixed by the walls in J
std::vector<WeylElt> facet_chamber_group(const Affine& af, const WallSet& J);

// a point on that facet (average of its vertices)
VecQ facet_point(const Affine& af, const WallSet& J);

// is v in the closed facet acute cone, i.e. in some a_J + w C with w from
// the facet chamber group?
bool facet_cone_contains(const Affine& af, const WallSet& J, const VecQ& v);

}  // namespace cones
}  // namespace alcoves
