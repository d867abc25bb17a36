#pragma once

#include "alcoves/cones.hpp"

namespace alcoves {
namespace admsets {

// Candidate translation parts for the hull-constrained sets: mu + (integer
// coroot combinations) whose coweight coordinates stay within the orbit hull
// range widened by the worst vertex displacement. The widening makes the box
// provably cover every set whose members move some base vertex inside the
// orbit hull.
struct PermBox {
  std::vector<VecI> lambdas;
  VecQ expansion;
};

PermBox perm_candidate_box(const Affine& af, const VecI& mu);

// does x displace every base-alcove vertex inside Conv(W mu)?
bool perm_contains(const Affine& af, const VecI& mu, const AffElt& x);

// lower Bruhat closure of the extreme translations t_{w mu}
std::vector<AffElt> enumerate_adm(const Affine& af, const VecI& mu);

std::vector<AffElt> enumerate_perm(const Affine& af, const VecI& mu,
                                   PermBox* box_out = nullptr);

// intersection of the obtuse alcove cones over all chamber directions
std::vector<AffElt> enumerate_adm_st(const Affine& af, const VecI& mu);
bool adm_st_contains(const Affine& af, const VecI& mu, const AffElt& x);

// W_J Adm(mu) W_J
std::vector<AffElt> enumerate_adm_J(const Affine& af, const VecI& mu, const WallSet& J);

// vertexwise obtuse point-cone conditions at the vertices of type not in J
bool perm_st_J_contains(const Affine& af, const VecI& mu, const WallSet& J,
                        const AffElt& x);
std::vector<AffElt> enumerate_perm_st_J(const Affine& af, const VecI& mu,
                                        const WallSet& J);

std::vector<AffElt> product_set(const Affine& af, const std::vector<AffElt>& a,
                                const std::vector<AffElt>& b);
std::vector<AffElt> saturate(const Affine& af, const std::vector<AffElt>& s,
                             const WallSet& J, bool left, bool right);

}  // namespace admsets
}  // namespace alcoves
