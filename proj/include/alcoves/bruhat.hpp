#pragma once

#include <string>
#include <vector>

#include "alcoves/affine.hpp"

namespace alcoves {
namespace bruhat {

// Left descent chain of y: base-alcove walls i1,...,il with
// y = s_{i1} ... s_{il} tau and each step a descent. Comparing any x against
// y replays the chain once, so the cost of leq is O(length(y)).
struct DescentChain {
  AffElt y;
  std::vector<int> wall_ids;
};

DescentChain descent_chain(const Affine& af, const AffElt& y);
bool leq_chain(const Affine& af, const DescentChain& ch, const AffElt& x);

// Bruhat order on the extended group: comparable only within one W_aff coset,
// elements of different cosets are never related.
bool leq(const Affine& af, const AffElt& x, const AffElt& y);

// x = min * fin with fin in the parahoric subgroup W_J and min the unique
// shortest element of x W_J; lengths add.
struct CosetDecomp {
  AffElt min;
  AffElt fin;
};
CosetDecomp decompose_right(const Affine& af, const AffElt& x, const WallSet& J);
// x = fin * min, min the shortest element of W_J x
CosetDecomp decompose_left(const Affine& af, const AffElt& x, const WallSet& J);

bool is_min_right_rep(const Affine& af, const AffElt& x, const WallSet& J);

// (s x)^J for a wall reflection s with s x < x, via the case rule:
// it equals x^J when x^{-1} s x lies in W_J and s x^J otherwise; checked
// against the direct decomposition and the min property before returning.
AffElt proj_min(const Affine& af, const AffElt& x, int wall_id, const WallSet& J);

// full lower Bruhat closure of the given elements (all in one coset)
std::vector<AffElt> lower_closure(const Affine& af, const std::vector<AffElt>& tops);

std::vector<int> reduced_word(const Affine& af, const AffElt& x);

// reduced word of a finite Weyl element in simple reflections (0-based)
std::vector<int> finite_word(const RootDatum& rd, const WeylElt& w);

// DOT graph of the covering relations of the given set
std::string hasse_dot(const Affine& af, const std::vector<AffElt>& elems,
                      const std::string& graph_name);

}  // namespace bruhat
}  // namespace alcoves
