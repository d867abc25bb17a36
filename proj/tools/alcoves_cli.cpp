#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "alcoves/admsets.hpp"
#include "alcoves/bruhat.hpp"
#include "alcoves/cones.hpp"
#include "alcoves/json_io.hpp"
#include "alcoves/verify.hpp"
#include "plot_svg.hpp"
#include "toml_mini.hpp"

using namespace alcoves;

namespace {

VecI parse_mu(const std::string& s, int rank) {
  VecI mu;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) {
    size_t used = 0;
    mu.push_back(std::stoll(part, &used));
    if (used != part.size()) throw std::invalid_argument("--mu: bad integer '" + part + "'");
  }
  if (static_cast<int>(mu.size()) != rank)
    throw std::invalid_argument("--mu needs " + std::to_string(rank) +
                                " comma-separated integers for this preset");
  return mu;
}

void write_out(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

// csv cell for a cocharacter or wall set: space separated, no commas
std::string csv_mu(const VecI& mu) {
  std::string s;
  for (size_t i = 0; i < mu.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(mu[i]);
  }
  return s;
}

std::string csv_walls(const Affine& af, const WallSet& j) {
  std::string s;
  bool first = true;
  for (int id : j.ids()) {
    if (!first) s += " ";
    s += af.wall(id).label;
    first = false;
  }
  return first ? "-" : s;
}

std::string set_csv(const Affine& af, const std::vector<AffElt>& elts) {
  std::string s = "length,trans,fin_word\n";
  for (const AffElt& x : elts) {
    s += std::to_string(af.length(x)) + "," + csv_mu(x.trans) + ",";
    std::vector<int> word = bruhat::finite_word(af.rd(), x.fin);
    if (word.empty()) s += "e";
    for (size_t i = 0; i < word.size(); ++i)
      s += (i ? " " : "") + std::to_string(word[i] + 1);
    s += "\n";
  }
  return s;
}

verify::GridConfig config_from_toml(const std::string& path) {
  auto kv = tomlmini::parse_file(path);
  verify::GridConfig cfg;
  auto str_list = [&](const tomlmini::Value& v, const char* key) {
    std::vector<std::string> out;
    if (v.kind != tomlmini::Value::Kind::array)
      throw std::runtime_error(std::string(key) + " must be an array");
    for (const auto& e : v.arr) {
      if (e.kind != tomlmini::Value::Kind::str)
        throw std::runtime_error(std::string(key) + " must hold strings");
      out.push_back(e.s);
    }
    return out;
  };
  for (const auto& [key, v] : kv) {
    if (key == "presets") cfg.presets = str_list(v, "presets");
    else if (key == "checks") cfg.checks = str_list(v, "checks");
    else if (key == "js") cfg.js = str_list(v, "js");
    else if (key == "j_policy") cfg.j_policy = v.s;
    else if (key == "lmax") cfg.lmax = v.i;
    else if (key == "pair_lmax") cfg.pair_lmax = v.i;
    else if (key == "jobs") cfg.jobs = static_cast<int>(v.i);
    else if (key == "mus") {
      if (v.kind != tomlmini::Value::Kind::array)
        throw std::runtime_error("mus must be an array of integer arrays");
      for (const auto& row : v.arr) {
        if (row.kind != tomlmini::Value::Kind::array)
          throw std::runtime_error("mus must be an array of integer arrays");
        VecI mu;
        for (const auto& e : row.arr) mu.push_back(e.i);
        cfg.mus.push_back(mu);
      }
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  if (cfg.presets.empty()) throw std::runtime_error("config needs a presets list");
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"alcove combinatorics for extended affine Weyl groups"};
  app.require_subcommand(1);

  std::string preset, mu_arg, j_arg, format = "json", out_path, elt_arg, set_arg;
  std::string grid_path, cache_path = "verify_cache.json", w_arg, nu_arg;
  int jobs = 0;

  auto add_common = [&](CLI::App* c, bool need_mu) {
    c->add_option("--preset", preset, "root datum key, e.g. A2-sc")->required();
    auto* m = c->add_option("--mu", mu_arg, "dominant cocharacter, comma separated");
    if (need_mu) m->required();
    c->add_option("--out", out_path, "write output to a file instead of stdout");
    return c;
  };

  auto* c_info = app.add_subcommand("info", "preset facts: walls, vertices, sizes");
  add_common(c_info, false);

  auto* c_adm = app.add_subcommand("adm", "admissible set");
  add_common(c_adm, true)->add_option("--format", format, "json|csv");
  auto* c_perm = app.add_subcommand("perm", "permissible set");
  add_common(c_perm, true)->add_option("--format", format, "json|csv");
  auto* c_adm_st = app.add_subcommand("adm-st", "strongly admissible set");
  add_common(c_adm_st, true)->add_option("--format", format, "json|csv");
  auto* c_psj = app.add_subcommand("perm-st-j", "parahoric strongly permissible set");
  add_common(c_psj, true)->add_option("--format", format, "json|csv");
  c_psj->add_option("--j", j_arg, "wall labels, comma separated (0 = affine)");

  auto* c_table = app.add_subcommand("table", "cardinality table as csv");
  add_common(c_table, true);
  c_table->add_option("--j", j_arg, "restrict to one wall set; default all proper");

  auto* c_query = app.add_subcommand("query", "membership of one element");
  add_common(c_query, true);
  c_query->add_option("--elt", elt_arg, "element as json {\"trans\":..,\"fin\":..}")
      ->required();
  c_query->add_option("--set", set_arg,
                      "adm|perm|adm-st|perm-st-j|acute-cone|obtuse-cone")
      ->required();
  c_query->add_option("--j", j_arg, "wall labels for perm-st-j");
  c_query->add_option("--w", w_arg, "finite Weyl element index for cone queries");

  auto* c_hasse = app.add_subcommand("hasse", "covering relations as DOT");
  add_common(c_hasse, true);
  c_hasse->add_option("--j", j_arg, "wall labels; set drawn is Adm^J");

  auto* c_plot = app.add_subcommand("plot", "rank-2 svg of the admissible alcoves");
  add_common(c_plot, true);

  auto* c_verify = app.add_subcommand("verify", "run check grids");
  c_verify->add_option("--grid", grid_path, "toml grid config")->required();
  c_verify->add_option("--cache", cache_path, "resumable result cache path");
  c_verify->add_option("--jobs", jobs, "worker threads override");
  c_verify->add_option("--out", out_path, "write the report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(c_verify)) {
      verify::GridConfig cfg = config_from_toml(grid_path);
      if (jobs > 0) cfg.jobs = jobs;
      std::vector<verify::CheckReport> reports = verify::run_grid(cfg, cache_path);
      std::ostringstream os;
      size_t failed = 0;
      for (const auto& r : reports) {
        if (!r.pass) ++failed;
        os << verify::report_line(r) << "\n";
      }
      os << reports.size() - failed << "/" << reports.size() << " checks passed\n";
      write_out(out_path, os.str());
      return failed ? 1 : 0;
    }

    Affine af(RootDatum::preset(preset));
    const RootDatum& rd = af.rd();

    if (app.got_subcommand(c_info)) {
      json j;
      j["preset"] = rd.name();
      j["rank"] = rd.rank();
      j["simple_roots"] = rd.nsimple();
      j["positive_roots"] = rd.positive_roots().size();
      j["weyl_order"] = rd.weyl_order();
      json walls = json::array();
      for (int i = 0; i < af.nwalls(); ++i) {
        const Wall& w = af.wall(i);
        walls.push_back({{"id", i},
                         {"label", w.label},
                         {"alpha", rd.positive_roots()[w.ar.root].alpha},
                         {"k", w.ar.k},
                         {"component", w.component}});
      }
      j["walls"] = walls;
      json verts = json::array();
      for (const VertexInfo& v : af.base_vertices()) {
        json pt = json::array();
        for (const Rat& c : v.point) pt.push_back(c.str());
        verts.push_back({{"point", pt}, {"type", af.wall(v.type).label}});
      }
      j["base_vertices"] = verts;
      if (!mu_arg.empty()) {
        VecI mu = parse_mu(mu_arg, rd.rank());
        j["mu"] = mu;
        j["dominant"] = rd.is_dominant(mu);
        j["translation_length"] = af.length(af.translation(mu));
        j["orbit_size"] = rd.weyl_orbit(mu).size();
      }
      write_out(out_path, j.dump(1) + "\n");
      return 0;
    }

    if (app.got_subcommand(c_plot)) {
      VecI mu = parse_mu(mu_arg, rd.rank());
      write_out(out_path, plotsvg::render(af, mu));
      return 0;
    }

    if (app.got_subcommand(c_hasse)) {
      VecI mu = parse_mu(mu_arg, rd.rank());
      WallSet j = af.parse_walls(j_arg);
      std::vector<AffElt> elts = admsets::enumerate_adm_J(af, mu, j);
      write_out(out_path, bruhat::hasse_dot(af, elts, "adm"));
      return 0;
    }

    if (app.got_subcommand(c_table)) {
      VecI mu = parse_mu(mu_arg, rd.rank());
      std::vector<WallSet> js;
      if (!j_arg.empty()) js.push_back(af.parse_walls(j_arg));
      else js = verify::finite_wallsets(af, false);
      std::string csv = "preset,mu,J,|Adm^J|,|Perm^{st;J}|,|Adm^st.W_J|\n";
      std::vector<AffElt> adm_st = admsets::enumerate_adm_st(af, mu);
      for (const WallSet& j : js) {
        if (!af.parahoric_finite(j))
          throw std::invalid_argument("subgroup for --j is infinite");
        size_t a = admsets::enumerate_adm_J(af, mu, j).size();
        size_t p = admsets::enumerate_perm_st_J(af, mu, j).size();
        size_t s = admsets::saturate(af, adm_st, j, false, true).size();
        csv += rd.name() + "," + csv_mu(mu) + "," + csv_walls(af, j) + "," +
               std::to_string(a) + "," + std::to_string(p) + "," + std::to_string(s) +
               "\n";
      }
      write_out(out_path, csv);
      return 0;
    }

    if (app.got_subcommand(c_query)) {
      VecI mu = parse_mu(mu_arg, rd.rank());
      if (!rd.is_dominant(mu)) throw std::invalid_argument("--mu must be dominant");
      AffElt x = elt_from_json(af, json::parse(elt_arg));
      bool ans = false;
      if (set_arg == "acute-cone" || set_arg == "obtuse-cone") {
        if (w_arg.empty()) throw std::invalid_argument("--w required for cone queries");
        int wi = std::stoi(w_arg);
        if (wi < 0 || wi >= rd.weyl_order())
          throw std::invalid_argument("--w out of range");
        const WeylElt& w = rd.weyl()[wi];
        ans = set_arg == "acute-cone"
                  ? cones::acute_cone_contains(af, w, x)
                  : cones::obtuse_cone_contains_alcove(af, x, w, mu);
      } else {
        bool coset = af.same_waff_coset(x, af.translation(mu));
        if (set_arg == "adm") {
          for (const VecI& lam : rd.weyl_orbit(mu))
            if (coset && bruhat::leq(af, x, af.translation(lam))) {
              ans = true;
              break;
            }
        } else if (set_arg == "perm") {
          ans = coset && admsets::perm_contains(af, mu, x);
        } else if (set_arg == "adm-st") {
          ans = coset && admsets::adm_st_contains(af, mu, x);
        } else if (set_arg == "perm-st-j") {
          WallSet j = af.parse_walls(j_arg);
          ans = coset && admsets::perm_st_J_contains(af, mu, j, x);
        } else {
          throw std::invalid_argument("unknown --set: " + set_arg);
        }
      }
      write_out(out_path, ans ? "true\n" : "false\n");
      return 0;
    }

    // the four set subcommands
    VecI mu = parse_mu(mu_arg, rd.rank());
    std::vector<AffElt> elts;
    if (app.got_subcommand(c_adm)) elts = admsets::enumerate_adm(af, mu);
    else if (app.got_subcommand(c_perm)) elts = admsets::enumerate_perm(af, mu);
    else if (app.got_subcommand(c_adm_st)) elts = admsets::enumerate_adm_st(af, mu);
    else elts = admsets::enumerate_perm_st_J(af, mu, af.parse_walls(j_arg));

    if (format == "json") {
      write_out(out_path, set_to_json(elts).dump(1) + "\n");
    } else if (format == "csv") {
      write_out(out_path, set_csv(af, elts));
    } else {
      throw std::invalid_argument("unsupported --format for sets: " + format);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
