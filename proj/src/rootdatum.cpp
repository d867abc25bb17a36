#include "alcoves/rootdatum.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace alcoves {

namespace {

constexpr int kMaxRoots = 2000;
constexpr int kMaxWeyl = 40000;

std::vector<VecI> cartan_rows(char type, int n) {
  std::vector<VecI> c(n, VecI(n, 0));
  for (int i = 0; i < n; ++i) c[i][i] = 2;
  auto link = [&](int i, int j, Int aij, Int aji) {
    c[i][j] = aij;
    c[j][i] = aji;
  };
  switch (type) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -2, -1);
      break;
    case 'C':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -1, -2);
      break;
    case 'D':
      if (n >= 3) {
        for (int i = 0; i + 3 < n; ++i) link(i, i + 1, -1, -1);
        link(n - 3, n - 2, -1, -1);
        link(n - 3, n - 1, -1, -1);
      }
      break;
    case 'G':
      link(0, 1, -1, -3);
      break;
    case 'F':
      link(0, 1, -1, -1);
      link(1, 2, -2, -1);
      link(2, 3, -1, -1);
      break;
    default:
      throw std::invalid_argument("unknown type");
  }
  return c;
}

}  // namespace

RootDatum RootDatum::preset(const std::string& key) {
  auto fail = [&]() -> void {
    throw std::invalid_argument("bad preset '" + key +
                                "': expected TYPE RANK '-' LATTICE, e.g. A2-sc, "
                                "C3-ad, A1-gl, G2, F4");
  };
  if (key.empty()) fail();
  char type = key[0];
  size_t p = 1;
  while (p < key.size() && isdigit(static_cast<unsigned char>(key[p]))) ++p;
  if (p == 1) fail();
  int n = 0;
  try {
    n = std::stoi(key.substr(1, p - 1));
  } catch (...) {
    fail();
  }
  std::string lat;
  if (p == key.size()) {
    if (type != 'G' && type != 'F') fail();
    lat = "sc";  // G2, F4: weight and root lattices coincide
  } else if (key[p] == '-') {
    lat = key.substr(p + 1);
  } else {
    fail();
  }
  if (lat != "sc" && lat != "ad" && lat != "gl") fail();

  bool ok = false;
  switch (type) {
    case 'A': ok = n >= 1 && n <= 5; break;
    case 'B':
    case 'C':
    case 'D': ok = n >= 2 && n <= 5; break;
    case 'G': ok = n == 2; break;
    case 'F': ok = n == 4; break;
    default: ok = false;
  }
  if (!ok) fail();
  if (lat == "gl" && type != 'A') fail();

  std::vector<VecI> roots, coroots;
  if (lat == "gl") {
    int d = n + 1;
    for (int i = 0; i < n; ++i) {
      VecI v(d, 0);
      v[i] = 1;
      v[i + 1] = -1;
      roots.push_back(v);
      coroots.push_back(v);
    }
  } else {
    auto c = cartan_rows(type, n);
    for (int i = 0; i < n; ++i) {
      if (lat == "sc") {
        roots.push_back(c[i]);
        VecI e(n, 0);
        e[i] = 1;
        coroots.push_back(e);
      } else {
        VecI e(n, 0);
        e[i] = 1;
        roots.push_back(e);
        VecI col(n);
        for (int j = 0; j < n; ++j) col[j] = c[j][i];
        coroots.push_back(col);
      }
    }
  }
  std::string name(1, type);
  name += std::to_string(n);
  name += "-" + lat;
  RootDatum rd = from_simple_system(std::move(roots), std::move(coroots), name);
  rd.gl_ = (lat == "gl");
  return rd;
}

RootDatum RootDatum::from_simple_system(std::vector<VecI> simple_roots,
                                        std::vector<VecI> simple_coroots,
                                        std::string name) {
  if (simple_roots.empty() || simple_roots.size() != simple_coroots.size())
    throw std::invalid_argument("from_simple_system: size mismatch");
  RootDatum rd;
  rd.name_ = std::move(name);
  rd.nsimple_ = static_cast<int>(simple_roots.size());
  rd.rank_ = static_cast<int>(simple_roots[0].size());
  rd.simple_roots_ = std::move(simple_roots);
  rd.simple_coroots_ = std::move(simple_coroots);
  rd.build();
  return rd;
}

void RootDatum::build() {
  for (int i = 0; i < nsimple_; ++i) {
    if (static_cast<int>(simple_roots_[i].size()) != rank_ ||
        static_cast<int>(simple_coroots_[i].size()) != rank_)
      throw std::invalid_argument("root datum: ragged simple system");
    if (cartan(i, i) != 2)
      throw std::invalid_argument("root datum: <alpha_i, alpha_i^> != 2");
    for (int j = 0; j < nsimple_; ++j) {
      if (i == j) continue;
      Int a = cartan(i, j), b = cartan(j, i);
      if (a > 0 || b > 0 || ((a == 0) != (b == 0)))
        throw std::invalid_argument("root datum: invalid Cartan pairing");
    }
  }

  // close the simple system under simple reflections, tracking coroots and
  // simple-basis coordinates in lockstep
  std::vector<Root> all;
  std::map<VecI, int> seen;
  for (int i = 0; i < nsimple_; ++i) {
    VecI e(nsimple_, 0);
    e[i] = 1;
    all.push_back({simple_roots_[i], simple_coroots_[i], e});
    seen[simple_roots_[i]] = i;
  }
  for (size_t head = 0; head < all.size(); ++head) {
    Root r = all[head];
    for (int i = 0; i < nsimple_; ++i) {
      Int c = dot(r.alpha, simple_coroots_[i]);
      Int cv = dot(simple_roots_[i], r.coroot);
      Root nr;
      nr.alpha = sub(r.alpha, scale(c, simple_roots_[i]));
      nr.coroot = sub(r.coroot, scale(cv, simple_coroots_[i]));
      nr.simple_coords = r.simple_coords;
      nr.simple_coords[i] -= c;
      if (seen.emplace(nr.alpha, static_cast<int>(all.size())).second)
        all.push_back(std::move(nr));
      if (static_cast<int>(all.size()) > kMaxRoots)
        throw std::invalid_argument("root datum: root system not finite");
    }
  }

  for (const Root& r : all) {
    bool pos = true, negv = true;
    for (Int c : r.simple_coords) {
      if (c < 0) pos = false;
      if (c > 0) negv = false;
    }
    if (pos == negv) throw std::logic_error("root datum: mixed-sign root");
    if (pos) pos_.push_back(r);
  }
  std::sort(pos_.begin(), pos_.end(), [](const Root& a, const Root& b) {
    if (a.height() != b.height()) return a.height() < b.height();
    return a.alpha < b.alpha;
  });
  if (pos_.size() * 2 != all.size())
    throw std::logic_error("root datum: positive/negative imbalance");
  for (size_t i = 0; i < pos_.size(); ++i) pos_index_[pos_[i].alpha] = static_cast<int>(i);

  // components of the Dynkin diagram
  comp_of_simple_.assign(nsimple_, -1);
  for (int i = 0; i < nsimple_; ++i) {
    if (comp_of_simple_[i] != -1) continue;
    Component comp;
    std::deque<int> q{i};
    comp_of_simple_[i] = static_cast<int>(comps_.size());
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      comp.simples.push_back(x);
      for (int j = 0; j < nsimple_; ++j)
        if (comp_of_simple_[j] == -1 && cartan(x, j) != 0) {
          comp_of_simple_[j] = static_cast<int>(comps_.size());
          q.push_back(j);
        }
    }
    std::sort(comp.simples.begin(), comp.simples.end());
    comp.highest = -1;
    comps_.push_back(comp);
  }
  for (size_t k = 0; k < pos_.size(); ++k) {
    const Root& r = pos_[k];
    int c = -1;
    for (int i = 0; i < nsimple_; ++i)
      if (r.simple_coords[i] != 0) c = comp_of_simple_[i];
    Component& comp = comps_[c];
    if (comp.highest == -1 || pos_[comp.highest].height() < r.height())
      comp.highest = static_cast<int>(k);
    if (r.height() > max_height_) max_height_ = r.height();
  }
  for (const Component& comp : comps_) {
    // the highest root must dominate: unique maximum of the height function
    const Root& h = pos_[comp.highest];
    for (const Root& r : pos_) {
      bool same = false;
      for (int i : comp.simples)
        if (r.simple_coords[i] != 0) same = true;
      if (same && r.height() == h.height() && !(r.alpha == h.alpha))
        throw std::logic_error("root datum: highest root not unique");
    }
  }

  // simple reflections and the full Weyl group
  for (int i = 0; i < nsimple_; ++i) {
    MatI m = MatI::identity(rank_);
    for (int r = 0; r < rank_; ++r)
      for (int c = 0; c < rank_; ++c)
        m.at(r, c) -= detail::mul_checked(simple_coroots_[i][r], simple_roots_[i][c]);
    simple_refl_.push_back(WeylElt(m, m));
  }
  weyl_.push_back(WeylElt::identity(rank_));
  weyl_index_[weyl_[0].mat().a] = 0;
  for (size_t head = 0; head < weyl_.size(); ++head) {
    WeylElt w = weyl_[head];
    for (int i = 0; i < nsimple_; ++i) {
      WeylElt nw = w * simple_refl_[i];
      if (weyl_index_.emplace(nw.mat().a, static_cast<int>(weyl_.size())).second)
        weyl_.push_back(std::move(nw));
      if (static_cast<int>(weyl_.size()) > kMaxWeyl)
        throw std::invalid_argument("root datum: Weyl group too large");
    }
  }

  // fundamental coweight rows and the dominant point, as minimal-norm
  // solutions (the choice of extension off the coroot span is immaterial)
  for (int i = 0; i < nsimple_; ++i) {
    VecQ rhs(nsimple_, Rat(0));
    rhs[i] = Rat(1);
    std::vector<VecI> rows;
    for (int j = 0; j < nsimple_; ++j) rows.push_back(simple_coroots_[j]);
    auto row = min_norm_solution(rows, rhs, rank_);
    if (!row) throw std::logic_error("root datum: coweight solve failed");
    fw_rows_.push_back(*row);
  }
  {
    auto p = min_norm_solution(simple_roots_, VecQ(nsimple_, Rat(1)), rank_);
    if (!p) throw std::logic_error("root datum: dominant point solve failed");
    dominant_pt_ = *p;
  }

  two_rho_vee_.assign(rank_, 0);
  for (const Root& r : pos_) two_rho_vee_ = add(two_rho_vee_, r.coroot);
}

int RootDatum::positive_index(const VecI& alpha) const {
  auto it = pos_index_.find(alpha);
  return it == pos_index_.end() ? -1 : it->second;
}

std::pair<int, int> RootDatum::classify_root(const VecI& alpha) const {
  int i = positive_index(alpha);
  if (i >= 0) return {i, 1};
  i = positive_index(neg(alpha));
  if (i >= 0) return {i, -1};
  throw std::invalid_argument("classify_root: not a root");
}

int RootDatum::weyl_index(const WeylElt& w) const {
  auto it = weyl_index_.find(w.mat().a);
  return it == weyl_index_.end() ? -1 : it->second;
}

WeylElt RootDatum::reflection(int pos_idx) const {
  const Root& r = pos_[pos_idx];
  MatI m = MatI::identity(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j)
      m.at(i, j) -= detail::mul_checked(r.coroot[i], r.alpha[j]);
  return WeylElt(m, m);
}

VecQ RootDatum::reflect(int pos_idx, const VecQ& v) const {
  const Root& r = pos_[pos_idx];
  return sub(v, scale(dot(r.alpha, v), to_q(r.coroot)));
}

VecI RootDatum::reflect(int pos_idx, const VecI& v) const {
  const Root& r = pos_[pos_idx];
  return sub(v, scale(dot(r.alpha, v), r.coroot));
}

std::vector<VecI> RootDatum::weyl_orbit(const VecI& mu) const {
  std::set<VecI> seen{mu};
  std::deque<VecI> q{mu};
  while (!q.empty()) {
    VecI v = q.front();
    q.pop_front();
    for (int i = 0; i < nsimple_; ++i) {
      VecI nv = simple_refl_[i].apply(v);
      if (seen.insert(nv).second) q.push_back(nv);
    }
  }
  return {seen.begin(), seen.end()};
}

bool RootDatum::is_dominant(const VecI& v) const {
  for (int i = 0; i < nsimple_; ++i)
    if (dot(simple_roots_[i], v) < 0) return false;
  return true;
}

bool RootDatum::is_dominant(const VecQ& v) const {
  for (int i = 0; i < nsimple_; ++i)
    if (dot(simple_roots_[i], v).sign() < 0) return false;
  return true;
}

std::pair<VecQ, WeylElt> RootDatum::dominant_rep(const VecQ& v) const {
  VecQ cur = v;
  WeylElt w = WeylElt::identity(rank_);
  for (;;) {
    int i = 0;
    for (; i < nsimple_; ++i)
      if (dot(simple_roots_[i], cur).sign() < 0) break;
    if (i == nsimple_) return {cur, w};
    cur = simple_refl_[i].apply(cur);
    w = simple_refl_[i] * w;
  }
}

std::pair<VecI, WeylElt> RootDatum::dominant_rep(const VecI& v) const {
  VecI cur = v;
  WeylElt w = WeylElt::identity(rank_);
  for (;;) {
    int i = 0;
    for (; i < nsimple_; ++i)
      if (dot(simple_roots_[i], cur) < 0) break;
    if (i == nsimple_) return {cur, w};
    cur = simple_refl_[i].apply(cur);
    w = simple_refl_[i] * w;
  }
}

bool RootDatum::dominance_leq(const VecI& lam, const VecI& mu) const {
  if (!is_dominant(lam) || !is_dominant(mu))
    throw std::invalid_argument("dominance_leq: arguments must be dominant");
  auto c = solve_in_span(simple_coroots_, to_q(sub(mu, lam)));
  if (!c) return false;
  for (const Rat& x : *c)
    if (!x.is_integer() || x.sign() < 0) return false;
  return true;
}

std::optional<VecQ> RootDatum::coroot_coords(const VecQ& v) const {
  return solve_in_span(simple_coroots_, v);
}

bool RootDatum::in_coroot_lattice(const VecQ& v) const {
  auto c = coroot_coords(v);
  if (!c) return false;
  for (const Rat& x : *c)
    if (!x.is_integer()) return false;
  return true;
}

bool RootDatum::conv_hull_contains(const VecI& mu, const VecQ& v) const {
  if (!is_dominant(mu)) throw std::invalid_argument("conv_hull_contains: mu not dominant");
  VecQ vplus = dominant_rep(v).first;
  auto c = coroot_coords(sub(to_q(mu), vplus));
  if (!c) return false;
  for (const Rat& x : *c)
    if (x.sign() < 0) return false;
  return true;
}

bool RootDatum::conv_hull_contains_alt(const VecI& mu, const VecQ& v) const {
  if (!is_dominant(mu)) throw std::invalid_argument("conv_hull_contains_alt: mu not dominant");
  for (const WeylElt& w : weyl_) {
    auto c = coroot_coords(sub(to_q(mu), w.apply_inv(v)));
    if (!c) return false;
    for (const Rat& x : *c)
      if (x.sign() < 0) return false;
  }
  return true;
}

}  // namespace alcoves
