#pragma once

#include <string>

#include <json.hpp>

#include "alcoves/affine.hpp"

namespace alcoves {

using json = nlohmann::json;

inline json elt_to_json(const AffElt& x) {
  json j;
  j["trans"] = x.trans;
  std::vector<VecI> rows;
  int n = x.fin.mat().n;
  for (int i = 0; i < n; ++i) {
    VecI row(n);
    for (int c = 0; c < n; ++c) row[c] = x.fin.mat().at(i, c);
    rows.push_back(std::move(row));
  }
  j["fin"] = rows;
  return j;
}

// parse {"trans": [...], "fin": [[...], ...]}; the matrix must be an actual
// Weyl group element of the datum
inline AffElt elt_from_json(const Affine& af, const json& j) {
  if (!j.is_object() || !j.contains("trans") || !j.contains("fin"))
    throw std::invalid_argument("element json needs 'trans' and 'fin'");
  VecI trans = j.at("trans").get<VecI>();
  auto rows = j.at("fin").get<std::vector<VecI>>();
  int n = af.rd().rank();
  if (static_cast<int>(trans.size()) != n || static_cast<int>(rows.size()) != n)
    throw std::invalid_argument("element json has wrong dimensions");
  MatI m;
  m.n = n;
  for (const VecI& row : rows) {
    if (static_cast<int>(row.size()) != n)
      throw std::invalid_argument("element json has a ragged matrix");
    m.a.insert(m.a.end(), row.begin(), row.end());
  }
  int wi = af.rd().weyl_index(WeylElt(m, m));  // index only looks at m
  if (wi < 0)
    throw std::invalid_argument("element json: matrix is not a Weyl group element");
  return {std::move(trans), af.rd().weyl()[wi]};
}

inline json set_to_json(const std::vector<AffElt>& v) {
  json arr = json::array();
  for (const AffElt& x : v) arr.push_back(elt_to_json(x));
  return arr;
}

inline std::string elt_str(const AffElt& x) { return elt_to_json(x).dump(); }

}  // namespace alcoves
