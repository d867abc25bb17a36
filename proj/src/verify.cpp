#include "alcoves/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "alcoves/bruhat.hpp"
#include "alcoves/cones.hpp"
#include "alcoves/json_io.hpp"

namespace alcoves {
namespace verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::set<AffElt> to_set(const std::vector<AffElt>& v) {
  return std::set<AffElt>(v.begin(), v.end());
}

std::vector<AffElt> in_first_only(const std::set<AffElt>& a, const std::set<AffElt>& b,
                                  size_t limit) {
  std::vector<AffElt> out;
  for (const AffElt& x : a) {
    if (b.count(x)) continue;
    out.push_back(x);
    if (out.size() == limit) break;
  }
  return out;
}

std::string vec_str(const VecQ& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

// names the first vertex/chamber pair whose point-cone condition fails for x
std::string point_cone_evidence(const Affine& af, const VecI& mu, const WallSet& J,
                                const AffElt& x) {
  for (const VertexInfo& a : af.facet_vertices(J)) {
    VecQ q = x.apply(a.point);
    for (int wi = 0; wi < af.rd().weyl_order(); ++wi) {
      const WeylElt& w = af.rd().weyl()[wi];
      VecQ p = add(to_q(w.apply(mu)), a.point);
      if (!cones::obtuse_cone_contains_point(af, w, q, p))
        return "vertex " + vec_str(a.point) + " type " + std::to_string(a.type) +
               " fails at w#" + std::to_string(wi) + ": x(a)=" + vec_str(q) +
               " unreachable from " + vec_str(p);
    }
  }
  return "all vertex cone conditions hold";
}

}  // namespace

std::vector<AffElt> EnumCache::get(const std::string& key,
                                   const std::function<std::vector<AffElt>()>& make) {
  {
    std::lock_guard<std::mutex> lk(m_);
    auto it = store_.find(key);
    if (it != store_.end()) return it->second;
  }
  std::vector<AffElt> v = make();
  std::lock_guard<std::mutex> lk(m_);
  auto ins = store_.emplace(key, std::move(v));
  return ins.first->second;
}

std::vector<AffElt> EnumCache::adm(const Affine& af, const VecI& mu) {
  return get(af.rd().name() + "|adm|" + mu_str(mu),
             [&] { return admsets::enumerate_adm(af, mu); });
}

std::vector<AffElt> EnumCache::adm_st(const Affine& af, const VecI& mu) {
  return get(af.rd().name() + "|adm_st|" + mu_str(mu),
             [&] { return admsets::enumerate_adm_st(af, mu); });
}

std::vector<AffElt> EnumCache::adm_J(const Affine& af, const VecI& mu, const WallSet& J) {
  return get(af.rd().name() + "|adm_J|" + mu_str(mu) + "|" + af.wallset_str(J),
             [&] { return admsets::enumerate_adm_J(af, mu, J); });
}

std::string mu_str(const VecI& mu) {
  std::string s = "[";
  for (size_t i = 0; i < mu.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(mu[i]);
  }
  return s + "]";
}

CheckReport check_main(const Affine& af, const VecI& mu, const WallSet& J,
                       EnumCache* cache) {
  EnumCache local;
  if (!cache) cache = &local;
  CheckReport r;
  r.check = "main";
  r.key = af.rd().name() + " mu=" + mu_str(mu) + " J=" + af.wallset_str(J);
  auto t0 = Clock::now();

  std::vector<AffElt> adm_st = cache->adm_st(af, mu);
  std::vector<AffElt> lhs = admsets::saturate(af, adm_st, J, false, true);
  std::vector<AffElt> mid = admsets::enumerate_perm_st_J(af, mu, J);
  std::vector<AffElt> rhs = cache->adm_J(af, mu, J);

  r.pass = lhs == mid && mid == rhs;
  if (!r.pass) {
    std::ostringstream os;
    os << "|Adm_st.W_J|=" << lhs.size() << " |Perm_st_J|=" << mid.size()
       << " |Adm_J|=" << rhs.size();
    auto sl = to_set(lhs), sm = to_set(mid), sr = to_set(rhs);
    for (const AffElt& x : in_first_only(sl, sm, 2))
      os << "\nin Adm_st.W_J, not Perm_st_J: " << elt_str(x) << "; "
         << point_cone_evidence(af, mu, J, x);
    for (const AffElt& x : in_first_only(sm, sl, 2))
      os << "\nin Perm_st_J, not Adm_st.W_J: " << elt_str(x);
    for (const AffElt& x : in_first_only(sm, sr, 2))
      os << "\nin Perm_st_J, not Adm_J: " << elt_str(x);
    for (const AffElt& x : in_first_only(sr, sm, 2))
      os << "\nin Adm_J, not Perm_st_J: " << elt_str(x) << "; "
         << point_cone_evidence(af, mu, J, x);
    r.details = os.str();
  }
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_additivity(const Affine& af, const VecI& mu, const VecI& nu,
                             const WallSet& J, EnumCache* cache) {
  EnumCache local;
  if (!cache) cache = &local;
  CheckReport r;
  r.check = "additivity";
  r.key = af.rd().name() + " mu=" + mu_str(mu) + " nu=" + mu_str(nu) + " J=" +
          af.wallset_str(J);
  auto t0 = Clock::now();

  std::vector<AffElt> a = cache->adm_J(af, mu, J);
  std::vector<AffElt> b = cache->adm_J(af, nu, J);
  std::vector<AffElt> lhs = cache->adm_J(af, add(mu, nu), J);
  std::vector<AffElt> prod = admsets::product_set(af, a, b);

  r.pass = lhs == prod;
  if (!r.pass) {
    std::ostringstream os;
    os << "|Adm_J(mu+nu)|=" << lhs.size() << " |Adm_J(mu).Adm_J(nu)|=" << prod.size();
    auto sl = to_set(lhs), sp = to_set(prod);
    for (const AffElt& z : in_first_only(sp, sl, 2))
      os << "\nproduct escapes Adm_J(mu+nu): " << elt_str(z);
    for (const AffElt& z : in_first_only(sl, sp, 2))
      os << "\nno factorization x.y with x in Adm_J(mu), y in Adm_J(nu): " << elt_str(z);
    r.details = os.str();
  }
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_vertexwise(const Affine& af, const VecI& mu,
                             const std::vector<WallSet>& family, EnumCache* cache) {
  if (family.empty()) throw std::invalid_argument("check_vertexwise: empty family");
  EnumCache local;
  if (!cache) cache = &local;
  CheckReport r;
  r.check = "vertexwise";
  WallSet k = family[0];
  std::string fam;
  for (size_t i = 0; i < family.size(); ++i) {
    if (i) fam += "&";
    fam += af.wallset_str(family[i]);
    k = k & family[i];
  }
  r.key = af.rd().name() + " mu=" + mu_str(mu) + " family=" + fam;
  auto t0 = Clock::now();

  std::vector<AffElt> lhs = cache->adm_J(af, mu, k);
  std::set<AffElt> inter = to_set(cache->adm_J(af, mu, family[0]));
  for (size_t i = 1; i < family.size(); ++i) {
    std::set<AffElt> cur = to_set(cache->adm_J(af, mu, family[i]));
    std::set<AffElt> next;
    for (const AffElt& x : inter)
      if (cur.count(x)) next.insert(x);
    inter.swap(next);
  }
  std::vector<AffElt> rhs(inter.begin(), inter.end());
  canonical_sort(af, rhs);

  r.pass = lhs == rhs;
  if (!r.pass) {
    std::ostringstream os;
    os << "|Adm_K|=" << lhs.size() << " |intersection|=" << rhs.size()
       << " K=" << af.wallset_str(k);
    auto sl = to_set(lhs);
    for (const AffElt& x : in_first_only(sl, inter, 2))
      os << "\nin Adm_K, not in intersection: " << elt_str(x);
    for (const AffElt& x : in_first_only(inter, sl, 2))
      os << "\nin intersection, not in Adm_K: " << elt_str(x);
    r.details = os.str();
  }
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_compatibility(const Affine& af, const VecI& mu, const WallSet& J,
                                EnumCache* cache) {
  EnumCache local;
  if (!cache) cache = &local;
  CheckReport r;
  r.check = "compatibility";
  r.key = af.rd().name() + " mu=" + mu_str(mu) + " J=" + af.wallset_str(J);
  auto t0 = Clock::now();

  std::vector<AffElt> amin;
  for (const AffElt& x : cache->adm(af, mu))
    if (bruhat::is_min_right_rep(af, x, J)) amin.push_back(x);
  std::vector<AffElt> jmin;
  for (const AffElt& x : cache->adm_J(af, mu, J))
    if (bruhat::is_min_right_rep(af, x, J)) jmin.push_back(x);

  r.pass = amin == jmin;
  if (!r.pass) {
    std::ostringstream os;
    os << "|min reps of Adm|=" << amin.size() << " |min reps of Adm_J|=" << jmin.size();
    auto sa = to_set(amin), sj = to_set(jmin);
    for (const AffElt& x : in_first_only(sj, sa, 3))
      os << "\nminimal in Adm_J, not admissible-minimal: " << elt_str(x);
    for (const AffElt& x : in_first_only(sa, sj, 3))
      os << "\nadmissible-minimal, lost in Adm_J: " << elt_str(x);
    r.details = os.str();
  }
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_cone_corollary(const Affine& af, const VecI& mu, EnumCache* cache) {
  EnumCache local;
  if (!cache) cache = &local;
  CheckReport r;
  r.check = "cone";
  r.key = af.rd().name() + " mu=" + mu_str(mu);
  auto t0 = Clock::now();

  std::vector<AffElt> adm = cache->adm(af, mu);
  r.pass = true;
  std::ostringstream os;
  int bad = 0;
  for (int wi = 0; wi < af.rd().weyl_order() && bad < 3; ++wi) {
    const WeylElt& w = af.rd().weyl()[wi];
    bruhat::DescentChain ch = bruhat::descent_chain(af, af.translation(w.apply(mu)));
    for (const AffElt& x : adm) {
      if (!cones::acute_cone_contains(af, w, x)) continue;
      if (bruhat::leq_chain(af, ch, x)) continue;
      r.pass = false;
      if (++bad <= 3)
        os << (bad > 1 ? "\n" : "") << "admissible " << elt_str(x)
           << " lies in the acute cone at w#" << wi << " but is not below t_{w.mu}";
    }
  }
  if (!r.pass) r.details = os.str();
  r.seconds = seconds_since(t0);
  return r;
}

CheckReport check_hull_identities(const Affine& af, const VecI& mu, EnumCache* cache) {
  EnumCache local;
  if (!cache) cache = &local;
  const RootDatum& rd = af.rd();
  CheckReport r;
  r.check = "hull";
  r.key = rd.name() + " mu=" + mu_str(mu);
  auto t0 = Clock::now();
  std::ostringstream os;
  r.pass = true;
  int bad = 0;
  auto complain = [&](const std::string& msg) {
    r.pass = false;
    if (++bad <= 4) os << (bad > 1 ? "\n" : "") << msg;
  };

  Int m = 1;
  for (const VecI& v : rd.weyl_orbit(mu))
    for (Int c : v) m = std::max(m, c < 0 ? -c : c);
  m += 1;

  // every lattice point of the box against both hull routes, and against the
  // shifted-cone description on the strict chambers
  VecI v(rd.rank(), -m);
  for (;;) {
    VecQ vq = to_q(v);
    bool h1 = rd.conv_hull_contains(mu, vq);
    bool h2 = rd.conv_hull_contains_alt(mu, vq);
    if (h1 != h2)
      complain("hull routes disagree at " + vec_str(vq) + ": dominant-rep says " +
               (h1 ? "yes" : "no"));
    for (const WeylElt& w : rd.weyl()) {
      VecQ u = w.apply_inv(vq);
      bool strict = true;
      for (int i = 0; i < rd.nsimple() && strict; ++i)
        if (dot(to_q(rd.simple_root(i)), u).sign() <= 0) strict = false;
      if (!strict) continue;
      bool in_cone = false;
      auto cc = rd.coroot_coords(sub(to_q(mu), u));
      if (cc) {
        in_cone = true;
        for (const Rat& c : *cc)
          if (c.sign() < 0) in_cone = false;
      }
      if (h1 != in_cone) {
        complain("chamber description disagrees at " + vec_str(vq) + ": hull says " +
                 (h1 ? "yes" : "no"));
        break;
      }
    }
    int i = 0;
    while (i < rd.rank() && ++v[i] > m) v[i++] = -m;
    if (i == rd.rank()) break;
  }

  // the two alcove identities: stable admissibility is admissibility, and in
  // each acute cone the admissible set is the interval below t_{w.mu}
  std::vector<AffElt> adm = cache->adm(af, mu);
  std::vector<AffElt> adm_st = cache->adm_st(af, mu);
  if (adm != adm_st) {
    complain("Adm and Adm_st differ: " + std::to_string(adm.size()) + " vs " +
             std::to_string(adm_st.size()));
  }
  std::set<AffElt> adm_set = to_set(adm);
  for (int wi = 0; wi < rd.weyl_order(); ++wi) {
    const WeylElt& w = rd.weyl()[wi];
    std::set<AffElt> closure =
        to_set(bruhat::lower_closure(af, {af.translation(w.apply(mu))}));
    bool ok = true;
    for (const AffElt& x : adm) {
      if (!cones::acute_cone_contains(af, w, x)) continue;
      if (!closure.count(x)) {
        complain("acute-cone slice at w#" + std::to_string(wi) +
                 " is not the interval below t_{w.mu}: extra " + elt_str(x));
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const AffElt& x : closure) {
      if (!cones::acute_cone_contains(af, w, x)) continue;
      if (!adm_set.count(x)) {
        complain("interval below t_{w.mu} leaves Adm at w#" + std::to_string(wi) +
                 ": " + elt_str(x));
        break;
      }
    }
  }

  if (!r.pass) r.details = os.str();
  r.seconds = seconds_since(t0);
  return r;
}

std::vector<VecI> dominant_mus(const Affine& af, Int lmax) {
  const RootDatum& rd = af.rd();
  std::vector<VecI> out;
  if (lmax < 0) return out;
  int n = rd.nsimple();

  if (rd.is_gl()) {
    // pairing vectors become weakly decreasing tuples with last entry zero
    VecI pair(n, 0);
    for (;;) {
      VecI mu(rd.rank(), 0);
      for (int j = n - 1; j >= 0; --j) mu[j] = mu[j + 1] + pair[j];
      if (af.length(af.translation(mu)) <= lmax) out.push_back(mu);
      int i = 0;
      while (i < n && ++pair[i] > lmax) pair[i++] = 0;
      if (i == n) break;
    }
  } else {
    std::vector<VecI> rows;
    for (int i = 0; i < n; ++i) rows.push_back(rd.simple_root(i));
    std::vector<VecQ> cowt;
    for (int i = 0; i < n; ++i) {
      VecQ e(n, Rat(0));
      e[i] = Rat(1);
      auto s = min_norm_solution(rows, e, rd.rank());
      if (!s) throw std::logic_error("dominant_mus: no fundamental coweight");
      cowt.push_back(*s);
    }
    VecI pair(n, 0);
    for (;;) {
      VecQ v(rd.rank(), Rat(0));
      for (int i = 0; i < n; ++i)
        if (pair[i]) v = add(v, scale(Rat(pair[i]), cowt[i]));
      bool integral = true;
      for (const Rat& c : v)
        if (!c.is_integer()) integral = false;
      if (integral) {
        VecI mu(rd.rank());
        for (int j = 0; j < rd.rank(); ++j) mu[j] = v[j].floor();
        if (af.length(af.translation(mu)) <= lmax) out.push_back(mu);
      }
      int i = 0;
      while (i < n && ++pair[i] > lmax) pair[i++] = 0;
      if (i == n) break;
    }
  }

  std::sort(out.begin(), out.end(), [&](const VecI& a, const VecI& b) {
    Int la = af.length(af.translation(a)), lb = af.length(af.translation(b));
    if (la != lb) return la < lb;
    return a < b;
  });
  return out;
}

std::vector<WallSet> finite_wallsets(const Affine& af, bool singletons_only) {
  std::vector<WallSet> out;
  if (singletons_only) {
    out.push_back(WallSet::none());
    for (int i = 0; i < af.nwalls(); ++i) {
      WallSet s = WallSet::none().with(i);
      if (af.parahoric_finite(s)) out.push_back(s);
    }
    return out;
  }
  uint32_t total = 1u << af.nwalls();
  for (uint32_t bits = 0; bits < total; ++bits) {
    WallSet s{bits};
    if (af.parahoric_finite(s)) out.push_back(s);
  }
  std::sort(out.begin(), out.end(), [](const WallSet& a, const WallSet& b) {
    if (a.count() != b.count()) return a.count() < b.count();
    return a.bits < b.bits;
  });
  return out;
}

namespace {

struct Cell {
  std::string check;
  size_t preset = 0;
  VecI mu, nu;
  WallSet J;
  std::vector<WallSet> family;
  std::string key;  // content address for the cache file
};

std::string fnv1a_hex(const std::string& s) {
  unsigned long long h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

std::string cell_key(const Affine& af, const Cell& c) {
  std::string k = "v1|" + c.check + "|" + af.rd().name() + "|mu=" + mu_str(c.mu);
  if (c.check == "additivity") k += "|nu=" + mu_str(c.nu);
  if (c.check == "main" || c.check == "additivity" || c.check == "compatibility")
    k += "|J=" + af.wallset_str(c.J);
  if (c.check == "vertexwise") {
    k += "|family=";
    for (size_t i = 0; i < c.family.size(); ++i) {
      if (i) k += "&";
      k += af.wallset_str(c.family[i]);
    }
  }
  return k;
}

CheckReport run_cell(const Affine& af, const Cell& c, EnumCache* ec) {
  try {
    if (c.check == "main") return check_main(af, c.mu, c.J, ec);
    if (c.check == "additivity") return check_additivity(af, c.mu, c.nu, c.J, ec);
    if (c.check == "vertexwise") return check_vertexwise(af, c.mu, c.family, ec);
    if (c.check == "compatibility") return check_compatibility(af, c.mu, c.J, ec);
    if (c.check == "cone") return check_cone_corollary(af, c.mu, ec);
    if (c.check == "hull") return check_hull_identities(af, c.mu, ec);
    throw std::invalid_argument("unknown check: " + c.check);
  } catch (const std::exception& e) {
    CheckReport r;
    r.check = c.check;
    r.key = c.key;
    r.pass = false;
    r.details = std::string("exception: ") + e.what();
    return r;
  }
}

}  // namespace

std::vector<CheckReport> run_grid(const GridConfig& cfg, const std::string& cache_path) {
  std::vector<std::unique_ptr<Affine>> afs;
  afs.reserve(cfg.presets.size());
  for (const std::string& p : cfg.presets)
    afs.push_back(std::make_unique<Affine>(RootDatum::preset(p)));

  std::vector<Cell> cells;
  for (size_t pi = 0; pi < afs.size(); ++pi) {
    const Affine& af = *afs[pi];
    std::vector<VecI> mus;
    if (!cfg.mus.empty()) {
      for (const VecI& m : cfg.mus) {
        if (static_cast<int>(m.size()) != af.rd().rank())
          throw std::invalid_argument("mu " + mu_str(m) + " has wrong rank for " +
                                      af.rd().name());
        if (!af.rd().is_dominant(m))
          throw std::invalid_argument("mu " + mu_str(m) + " is not dominant");
        mus.push_back(m);
      }
    } else {
      mus = dominant_mus(af, cfg.lmax);
    }

    std::vector<WallSet> js;
    if (cfg.j_policy == "all-proper") {
      js = finite_wallsets(af, false);
    } else if (cfg.j_policy == "singletons") {
      js = finite_wallsets(af, true);
    } else if (cfg.j_policy == "custom") {
      for (const std::string& s : cfg.js) {
        WallSet j = af.parse_walls(s);
        if (!af.parahoric_finite(j))
          throw std::invalid_argument("subgroup for J=" + s + " is infinite");
        js.push_back(j);
      }
    } else {
      throw std::invalid_argument("unknown j policy: " + cfg.j_policy);
    }

    for (const std::string& check : cfg.checks) {
      if (check == "main" || check == "compatibility") {
        for (const VecI& mu : mus)
          for (const WallSet& j : js) {
            Cell c{check, pi, mu, {}, j, {}, ""};
            c.key = cell_key(af, c);
            cells.push_back(std::move(c));
          }
      } else if (check == "additivity") {
        Int plim = cfg.pair_lmax > 0 ? cfg.pair_lmax : cfg.lmax;
        std::vector<WallSet> ajs = finite_wallsets(af, true);
        for (const VecI& mu : mus)
          for (const VecI& nu : mus) {
            if (af.length(af.translation(mu)) + af.length(af.translation(nu)) > plim)
              continue;
            for (const WallSet& j : ajs) {
              Cell c{check, pi, mu, nu, j, {}, ""};
              c.key = cell_key(af, c);
              cells.push_back(std::move(c));
            }
          }
      } else if (check == "vertexwise") {
        std::vector<WallSet> maximal;
        for (int i = 0; i < af.nwalls(); ++i) {
          WallSet s = af.all_walls().without(i);
          if (af.parahoric_finite(s)) maximal.push_back(s);
        }
        std::vector<std::vector<WallSet>> families;
        size_t total = size_t(1) << maximal.size();
        for (size_t bits = 1; bits < total; ++bits) {
          std::vector<WallSet> fam;
          for (size_t i = 0; i < maximal.size(); ++i)
            if ((bits >> i) & 1) fam.push_back(maximal[i]);
          families.push_back(std::move(fam));
        }
        for (const VecI& mu : mus)
          for (const auto& fam : families) {
            Cell c{check, pi, mu, {}, {}, fam, ""};
            c.key = cell_key(af, c);
            cells.push_back(std::move(c));
          }
      } else if (check == "cone" || check == "hull") {
        for (const VecI& mu : mus) {
          Cell c{check, pi, mu, {}, {}, {}, ""};
          c.key = cell_key(af, c);
          cells.push_back(std::move(c));
        }
      } else {
        throw std::invalid_argument("unknown check: " + check);
      }
    }
  }

  nlohmann::json cache;
  cache["version"] = 1;
  cache["entries"] = nlohmann::json::object();
  if (!cache_path.empty()) {
    std::ifstream in(cache_path);
    if (in) {
      nlohmann::json loaded = nlohmann::json::parse(in, nullptr, false);
      if (!loaded.is_discarded() && loaded.value("version", 0) == 1 &&
          loaded.contains("entries") && loaded["entries"].is_object())
        cache = std::move(loaded);
    }
  }

  std::vector<CheckReport> reports(cells.size());
  std::vector<char> pending(cells.size(), 1);
  for (size_t i = 0; i < cells.size(); ++i) {
    const std::string h = fnv1a_hex(cells[i].key);
    auto& entries = cache["entries"];
    if (!entries.contains(h)) continue;
    const nlohmann::json& e = entries[h];
    if (e.value("cell", "") != cells[i].key) continue;
    CheckReport r;
    r.check = cells[i].check;
    r.key = e.value("key", cells[i].key);
    r.pass = e.value("pass", false);
    r.seconds = e.value("seconds", 0.0);
    r.details = e.value("details", "");
    r.cached = true;
    reports[i] = std::move(r);
    pending[i] = 0;
  }

  EnumCache ecache;
  std::mutex cache_mu;
  auto persist = [&](size_t i) {
    if (cache_path.empty()) return;
    std::lock_guard<std::mutex> lk(cache_mu);
    nlohmann::json e;
    e["cell"] = cells[i].key;
    e["key"] = reports[i].key;
    e["pass"] = reports[i].pass;
    e["seconds"] = reports[i].seconds;
    e["details"] = reports[i].details;
    cache["entries"][fnv1a_hex(cells[i].key)] = std::move(e);
    std::string tmp = cache_path + ".tmp";
    std::ofstream out(tmp);
    out << cache.dump(1) << "\n";
    out.close();
    std::rename(tmp.c_str(), cache_path.c_str());
  };

  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      if (!pending[i]) continue;
      reports[i] = run_cell(*afs[cells[i].preset], cells[i], &ecache);
      persist(i);
    }
  };

  int jobs = std::max(1, cfg.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return reports;
}

std::string report_line(const CheckReport& r) {
  std::string s = r.pass ? "[PASS] " : "[FAIL] ";
  s += r.check + " " + r.key;
  char buf[48];
  std::snprintf(buf, sizeof buf, " (%.2fs%s)", r.seconds, r.cached ? ", cached" : "");
  s += buf;
  if (!r.pass && !r.details.empty()) {
    std::istringstream is(r.details);
    std::string line;
    while (std::getline(is, line)) s += "\n    " + line;
  }
  return s;
}

}  // namespace verify
}  // namespace alcoves
