#include "alcoves/affine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace alcoves {

Affine::Affine(RootDatum rd) : rd_(std::move(rd)) {
  for (int i = 0; i < rd_.nsimple(); ++i) {
    Wall w;
    w.ar = {rd_.positive_index(rd_.simple_root(i)), 0};
    w.label = std::to_string(i + 1);
    w.refl = reflection_elt(w.ar);
    w.component = rd_.component_of(i);
    walls_.push_back(std::move(w));
  }
  for (size_t c = 0; c < rd_.components().size(); ++c) {
    Wall w;
    w.ar = {rd_.components()[c].highest, 1};
    w.label = "0" + std::string(c, '\'');
    w.refl = reflection_elt(w.ar);
    w.component = static_cast<int>(c);
    walls_.push_back(std::move(w));
  }
  if (nwalls() > 31) throw std::invalid_argument("too many walls");

  Int h = rd_.max_root_height() + 1;
  barycenter_ = scale(Rat(-1, h), rd_.dominant_point());
  for (const Root& r : rd_.positive_roots()) {
    Rat v = dot(r.alpha, barycenter_);
    if (!(v > Rat(-1) && v < Rat(0)))
      throw std::logic_error("barycenter not interior to the base alcove");
  }

  scale_ = 1;
  for (const Rat& c : barycenter_) scale_ = std::lcm(scale_, c.den());
  for (const Rat& c : barycenter_) {
    Rat s = c * Rat(scale_);
    if (!s.is_integer()) throw std::logic_error("barycenter scaling failed");
    scaled_barycenter_.push_back(s.num());
  }

  // one vertex per wall: intersect all the other wall hyperplanes
  for (int i = 0; i < nwalls(); ++i) {
    std::vector<VecI> rows;
    VecQ rhs;
    for (int j = 0; j < nwalls(); ++j) {
      if (j == i) continue;
      rows.push_back(rd_.root(walls_[j].ar.root).alpha);
      rhs.push_back(Rat(-walls_[j].ar.k));
    }
    auto pt = min_norm_solution(rows, rhs, rd_.rank());
    if (!pt) {
      vertex_error_ = "singular wall system: no vertex opposite wall " +
                      walls_[i].label + " (reducible root datum)";
      vertices_.clear();
      break;
    }
    if (!in_base_closure(*pt) || eval(walls_[i].ar, *pt).is_zero())
      throw std::logic_error("vertex solve produced a bad point");
    vertices_.push_back({*pt, i});
  }
}

int Affine::wall_by_label(const std::string& label) const {
  for (int i = 0; i < nwalls(); ++i)
    if (walls_[i].label == label) return i;
  throw std::invalid_argument("unknown wall label '" + label + "'");
}

WallSet Affine::parse_walls(const std::string& csv) const {
  std::string body = csv;
  size_t a = body.find_first_not_of(" \t");
  size_t b = body.find_last_not_of(" \t");
  if (a != std::string::npos && body[a] == '{' && body[b] == '}')
    body = body.substr(a + 1, b - a - 1);
  WallSet s;
  std::string tok;
  std::istringstream in(body);
  while (std::getline(in, tok, ',')) {
    size_t a = tok.find_first_not_of(" \t");
    size_t b = tok.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    s = s.with(wall_by_label(tok.substr(a, b - a + 1)));
  }
  return s;
}

std::string Affine::wallset_str(const WallSet& s) const {
  std::string r = "{";
  bool first = true;
  for (int id : s.ids()) {
    if (!first) r += ",";
    r += walls_[id].label;
    first = false;
  }
  return r + "}";
}

Rat Affine::eval(const AffineRoot& ar, const VecQ& v) const {
  return dot(rd_.root(ar.root).alpha, v) + Rat(ar.k);
}

Int Affine::eval_scaled(const AffineRoot& ar, const VecI& p) const {
  return detail::add_checked(dot(rd_.root(ar.root).alpha, p),
                             detail::mul_checked(ar.k, scale_));
}

VecI Affine::reflect_scaled(const AffineRoot& ar, const VecI& p) const {
  return sub(p, scale(eval_scaled(ar, p), rd_.root(ar.root).coroot));
}

VecI Affine::apply_scaled(const AffElt& x, const VecI& p) const {
  return add(scale(scale_, x.trans), x.fin.apply(p));
}

AffineRoot Affine::canonical(const VecI& alpha, Int k) const {
  auto [idx, sign] = rd_.classify_root(alpha);
  return sign > 0 ? AffineRoot{idx, k} : AffineRoot{idx, -k};
}

AffineRoot Affine::transport(const AffElt& x, const AffineRoot& ar) const {
  VecI beta = x.fin.act_root(rd_.root(ar.root).alpha);
  Int k = ar.k - dot(beta, x.trans);
  return canonical(beta, k);
}

AffElt Affine::reflection_elt(const AffineRoot& ar) const {
  return {scale(-ar.k, rd_.root(ar.root).coroot), rd_.reflection(ar.root)};
}

VecQ Affine::reflect(const AffineRoot& ar, const VecQ& v) const {
  return sub(v, scale(eval(ar, v), to_q(rd_.root(ar.root).coroot)));
}

bool Affine::in_base_closure(const VecQ& p) const {
  for (const Root& r : rd_.positive_roots()) {
    Rat v = dot(r.alpha, p);
    if (v > Rat(0) || v < Rat(-1)) return false;
  }
  return true;
}

bool Affine::same_alcove(const VecQ& p, const VecQ& q) const {
  for (const Root& r : rd_.positive_roots()) {
    Rat a = dot(r.alpha, p), b = dot(r.alpha, q);
    if (a.is_integer() || b.is_integer())
      throw std::invalid_argument("same_alcove: point on a hyperplane");
    if (a.floor() != b.floor()) return false;
  }
  return true;
}

Int Affine::length(const AffElt& x) const {
  Int total = 0;
  for (const Root& r : rd_.positive_roots()) {
    Int c = dot(r.alpha, x.trans);
    int sign = rd_.classify_root(x.fin.coact_root(r.alpha)).second;
    Int a = sign > 0 ? c - 1 : c;
    if (a >= 0)
      total += a + 1;
    else if (a <= -2)
      total += -a - 1;
  }
  return total;
}

bool Affine::same_waff_coset(const AffElt& x, const AffElt& y) const {
  return in_waff(x * y.inverse());
}

std::vector<AffineRoot> Affine::gallery_walk(const AffElt& x) const {
  std::vector<AffineRoot> crossed;
  VecQ target = x.apply(barycenter_);
  AffElt cur = identity();
  for (;;) {
    VecQ back = cur.inverse().apply(target);
    if (same_alcove(barycenter_, back)) break;
    int found = -1;
    for (int i = 0; i < nwalls(); ++i) {
      int sb = eval(walls_[i].ar, barycenter_).sign();
      int st = eval(walls_[i].ar, back).sign();
      if (st != 0 && st != sb) {
        found = i;
        break;
      }
    }
    if (found < 0) throw std::logic_error("gallery_walk: no separating wall");
    crossed.push_back(transport(cur, walls_[found].ar));
    cur = cur * walls_[found].refl;
    if (crossed.size() > 100000) throw std::logic_error("gallery_walk: runaway");
  }
  return crossed;
}

OmegaDecomp Affine::omega_decompose(const AffElt& x) const {
  OmegaDecomp d;
  VecQ target = x.apply(barycenter_);
  AffElt cur = identity();
  for (;;) {
    VecQ back = cur.inverse().apply(target);
    if (same_alcove(barycenter_, back)) break;
    int found = -1;
    for (int i = 0; i < nwalls(); ++i) {
      int sb = eval(walls_[i].ar, barycenter_).sign();
      int st = eval(walls_[i].ar, back).sign();
      if (st != 0 && st != sb) {
        found = i;
        break;
      }
    }
    if (found < 0) throw std::logic_error("omega_decompose: no separating wall");
    d.word.push_back(found);
    cur = cur * walls_[found].refl;
    if (d.word.size() > 100000) throw std::logic_error("omega_decompose: runaway");
  }
  d.u = cur;
  d.tau = cur.inverse() * x;
  if (!in_waff(d.u) || length(d.tau) != 0 || !(d.u * d.tau == x))
    throw std::logic_error("omega_decompose: inconsistent result");
  return d;
}

AffElt Affine::tau_of(const VecI& mu) const {
  return omega_decompose(translation(mu)).tau;
}

const std::vector<VertexInfo>& Affine::base_vertices() const {
  if (!vertex_error_.empty()) throw std::invalid_argument(vertex_error_);
  return vertices_;
}

std::vector<VertexInfo> Affine::facet_vertices(const WallSet& J) const {
  if (!parahoric_finite(J))
    throw std::invalid_argument("facet_vertices: subgroup for " + wallset_str(J) +
                                " is infinite");
  std::vector<VertexInfo> r;
  for (const VertexInfo& v : base_vertices())
    if (!J.contains(v.type)) r.push_back(v);
  return r;
}

bool Affine::parahoric_finite(const WallSet& J) const {
  for (size_t c = 0; c < rd_.components().size(); ++c) {
    WallSet comp;
    for (int i = 0; i < nwalls(); ++i)
      if (walls_[i].component == static_cast<int>(c)) comp = comp.with(i);
    if ((J & comp) == comp) return false;
  }
  return true;
}

void canonical_sort(const Affine& af, std::vector<AffElt>& v) {
  std::vector<std::pair<Int, AffElt>> keyed;
  keyed.reserve(v.size());
  for (AffElt& x : v) keyed.emplace_back(af.length(x), std::move(x));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  v.clear();
  for (auto& p : keyed) v.push_back(std::move(p.second));
}

std::vector<AffElt> Affine::parahoric(const WallSet& J) const {
  if (!parahoric_finite(J))
    throw std::invalid_argument("parahoric: subgroup for " + wallset_str(J) +
                                " is infinite");
  std::set<AffElt> seen{identity()};
  std::vector<AffElt> out{identity()};
  for (size_t head = 0; head < out.size(); ++head) {
    AffElt x = out[head];
    for (int id : J.ids()) {
      AffElt nx = x * walls_[id].refl;
      if (seen.insert(nx).second) out.push_back(std::move(nx));
      if (out.size() > 500000) throw std::logic_error("parahoric: runaway");
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace alcoves
