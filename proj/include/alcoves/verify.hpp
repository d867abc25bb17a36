#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "alcoves/admsets.hpp"

namespace alcoves {
namespace verify {

struct CheckReport {
  std::string check;
  std::string key;
  bool pass = false;
  bool cached = false;
  double seconds = 0;
  std::string details;  // witnesses and evidence, empty on pass
};

// shared memo for the expensive enumerations; safe to use from many threads
class EnumCache {
 public:
  std::vector<AffElt> adm(const Affine& af, const VecI& mu);
  std::vector<AffElt> adm_st(const Affine& af, const VecI& mu);
  std::vector<AffElt> adm_J(const Affine& af, const VecI& mu, const WallSet& J);

 private:
  std::vector<AffElt> get(const std::string& key,
                          const std::function<std::vector<AffElt>()>& make);
  std::mutex m_;
  std::map<std::string, std::vector<AffElt>> store_;
};

std::string mu_str(const VecI& mu);

CheckReport check_main(const Affine& af, const VecI& mu, const WallSet& J,
                       EnumCache* cache = nullptr);
CheckReport check_additivity(const Affine& af, const VecI& mu, const VecI& nu,
                             const WallSet& J, EnumCache* cache = nullptr);
CheckReport check_vertexwise(const Affine& af, const VecI& mu,
                             const std::vector<WallSet>& family,
                             EnumCache* cache = nullptr);
CheckReport check_compatibility(const Affine& af, const VecI& mu, const WallSet& J,
                                EnumCache* cache = nullptr);
CheckReport check_cone_corollary(const Affine& af, const VecI& mu,
                                 EnumCache* cache = nullptr);
CheckReport check_hull_identities(const Affine& af, const VecI& mu,
                                  EnumCache* cache = nullptr);

// all dominant mu with length(t_mu) <= lmax; GL-style lattices are
// normalized so the smallest coordinate is zero (central translations only
// shift the sets around)
std::vector<VecI> dominant_mus(const Affine& af, Int lmax);

// wall subsets with finite parahoric subgroup: every proper one, or only
// singletons plus the empty set
std::vector<WallSet> finite_wallsets(const Affine& af, bool singletons_only);

struct GridConfig {
  std::vector<std::string> presets;
  std::vector<VecI> mus;  // when empty, generated from lmax
  Int lmax = 8;
  Int pair_lmax = 0;  // additivity bound; 0 means use lmax
  std::string j_policy = "all-proper";  // all-proper | singletons | custom
  std::vector<std::string> js;          // wall label csv, custom policy only
  std::vector<std::string> checks = {"main", "additivity", "compatibility"};
  int jobs = 1;
};

// runs the configured checks over the grid, consulting and updating the
// cache file (content-addressed by cell key, versioned, safe to interrupt)
std::vector<CheckReport> run_grid(const GridConfig& cfg, const std::string& cache_path);

std::string report_line(const CheckReport& r);

}  // namespace verify
}  // namespace alcoves
