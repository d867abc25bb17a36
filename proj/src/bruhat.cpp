#include "alcoves/bruhat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alcoves {
namespace bruhat {

namespace {

// walls with k = 0 have the base alcove on their negative side, the affine
// walls (k = 1) on their positive side
int base_sign(const Wall& w) { return w.ar.k == 0 ? -1 : 1; }

int sign_of(Int v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

DescentChain descent_chain(const Affine& af, const AffElt& y) {
  DescentChain ch;
  ch.y = y;
  VecI q = af.apply_scaled(y, af.scaled_barycenter());
  for (;;) {
    int found = -1;
    for (int i = 0; i < af.nwalls(); ++i) {
      Int e = af.eval_scaled(af.wall(i).ar, q);
      if (e == 0) throw std::logic_error("descent_chain: point on wall");
      if (sign_of(e) != base_sign(af.wall(i))) {
        found = i;
        break;
      }
    }
    if (found < 0) break;
    ch.wall_ids.push_back(found);
    q = af.reflect_scaled(af.wall(found).ar, q);
    if (ch.wall_ids.size() > 1000000) throw std::logic_error("descent_chain: runaway");
  }
  if (static_cast<Int>(ch.wall_ids.size()) != af.length(y))
    throw std::logic_error("descent_chain: length mismatch");
  return ch;
}

bool leq_chain(const Affine& af, const DescentChain& ch, const AffElt& x) {
  if (!af.same_waff_coset(x, ch.y)) return false;
  Int lx = af.length(x);
  Int ly = static_cast<Int>(ch.wall_ids.size());
  if (lx > ly) return false;
  VecI p = af.apply_scaled(x, af.scaled_barycenter());
  for (int i : ch.wall_ids) {
    if (lx > ly) return false;
    Int e = af.eval_scaled(af.wall(i).ar, p);
    if (e == 0) throw std::logic_error("leq_chain: point on wall");
    if (sign_of(e) != base_sign(af.wall(i))) {
      p = af.reflect_scaled(af.wall(i).ar, p);
      --lx;
    }
    --ly;
  }
  return lx == 0;
}

bool leq(const Affine& af, const AffElt& x, const AffElt& y) {
  return leq_chain(af, descent_chain(af, y), x);
}

CosetDecomp decompose_right(const Affine& af, const AffElt& x, const WallSet& J) {
  if (!af.parahoric_finite(J))
    throw std::invalid_argument("decompose_right: infinite parahoric");
  AffElt cur = x;
  AffElt acc = af.identity();
  Int len = af.length(cur);
  for (;;) {
    int found = -1;
    for (int id : J.ids()) {
      AffElt nx = cur * af.wall(id).refl;
      if (af.length(nx) < len) {
        cur = std::move(nx);
        --len;
        acc = af.wall(id).refl * acc;
        found = id;
        break;
      }
    }
    if (found < 0) break;
  }
  return {cur, acc};
}

CosetDecomp decompose_left(const Affine& af, const AffElt& x, const WallSet& J) {
  if (!af.parahoric_finite(J))
    throw std::invalid_argument("decompose_left: infinite parahoric");
  AffElt cur = x;
  AffElt acc = af.identity();
  Int len = af.length(cur);
  for (;;) {
    int found = -1;
    for (int id : J.ids()) {
      AffElt nx = af.wall(id).refl * cur;
      if (af.length(nx) < len) {
        cur = std::move(nx);
        --len;
        acc = acc * af.wall(id).refl;
        found = id;
        break;
      }
    }
    if (found < 0) break;
  }
  return {cur, acc};
}

bool is_min_right_rep(const Affine& af, const AffElt& x, const WallSet& J) {
  Int len = af.length(x);
  for (int id : J.ids())
    if (af.length(x * af.wall(id).refl) < len) return false;
  return true;
}

AffElt proj_min(const Affine& af, const AffElt& x, int wall_id, const WallSet& J) {
  const AffElt& s = af.wall(wall_id).refl;
  AffElt sx = s * x;
  if (af.length(sx) >= af.length(x))
    throw std::invalid_argument("proj_min: wall is not a left descent");
  CosetDecomp dx = decompose_right(af, x, J);
  AffElt conj = x.inverse() * s * x;
  bool in_wj = false;
  for (const AffElt& g : af.parahoric(J))
    if (g == conj) {
      in_wj = true;
      break;
    }
  AffElt result = in_wj ? dx.min : s * dx.min;
  CosetDecomp dsx = decompose_right(af, sx, J);
  if (!(result == dsx.min))
    throw std::logic_error("proj_min: case rule disagrees with decomposition");
  // with sx < x the projection is also the smaller of x^J and s x^J
  AffElt other = in_wj ? s * dx.min : dx.min;
  if (!leq(af, result, other))
    throw std::logic_error("proj_min: result not minimal");
  return result;
}

std::vector<int> reduced_word(const Affine& af, const AffElt& x) {
  return af.omega_decompose(x).word;
}

std::vector<AffElt> lower_closure(const Affine& af, const std::vector<AffElt>& tops) {
  for (size_t i = 1; i < tops.size(); ++i)
    if (!af.same_waff_coset(tops[0], tops[i]))
      throw std::invalid_argument("lower_closure: tops in different cosets");
  std::map<AffElt, Int> done;
  std::vector<AffElt> queue;
  for (const AffElt& t : tops)
    if (done.emplace(t, af.length(t)).second) queue.push_back(t);
  while (!queue.empty()) {
    AffElt x = queue.back();
    queue.pop_back();
    Int len = done.at(x);
    if (len == 0) continue;
    OmegaDecomp d = af.omega_decompose(x);
    size_t l = d.word.size();
    std::vector<AffElt> pre(l + 1), suf(l + 2);
    pre[0] = af.identity();
    for (size_t j = 0; j < l; ++j) pre[j + 1] = pre[j] * af.wall(d.word[j]).refl;
    suf[l] = d.tau;
    for (size_t j = l; j > 0; --j) suf[j - 1] = af.wall(d.word[j - 1]).refl * suf[j];
    for (size_t j = 0; j < l; ++j) {
      AffElt del = pre[j] * suf[j + 1];
      if (af.length(del) != len - 1) continue;
      if (done.emplace(del, len - 1).second) queue.push_back(del);
    }
  }
  std::vector<AffElt> out;
  out.reserve(done.size());
  for (const auto& kv : done) out.push_back(kv.first);
  canonical_sort(af, out);
  return out;
}

std::vector<int> finite_word(const RootDatum& rd, const WeylElt& w) {
  std::vector<int> word;
  WeylElt cur = w;
  while (!cur.is_identity()) {
    int found = -1;
    for (int i = 0; i < rd.nsimple(); ++i) {
      // s_i w < w in the finite group iff w^{-1}(alpha_i) is negative
      if (rd.classify_root(cur.coact_root(rd.simple_root(i))).second < 0) {
        found = i;
        break;
      }
    }
    if (found < 0) throw std::logic_error("finite_word: no descent");
    cur = rd.simple_reflection(found) * cur;
    word.push_back(found);
  }
  return word;
}

std::string hasse_dot(const Affine& af, const std::vector<AffElt>& elems,
                      const std::string& graph_name) {
  std::vector<AffElt> v = elems;
  canonical_sort(af, v);
  std::vector<Int> len(v.size());
  std::vector<DescentChain> chains(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    len[i] = af.length(v[i]);
    chains[i] = descent_chain(af, v[i]);
  }
  std::ostringstream out;
  out << "digraph \"" << graph_name << "\" {\n"
      << "  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (size_t i = 0; i < v.size(); ++i) {
    out << "  n" << i << " [label=\"(";
    for (size_t j = 0; j < v[i].trans.size(); ++j)
      out << (j ? "," : "") << v[i].trans[j];
    out << " | ";
    auto word = finite_word(af.rd(), v[i].fin);
    if (word.empty())
      out << "e";
    else
      for (size_t j = 0; j < word.size(); ++j)
        out << (j ? " " : "") << "s" << word[j] + 1;
    out << ")\"];\n";
  }
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = 0; j < v.size(); ++j) {
      if (len[j] != len[i] + 1) continue;
      if (leq_chain(af, chains[j], v[i]))
        out << "  n" << i << " -> n" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace bruhat
}  // namespace alcoves
