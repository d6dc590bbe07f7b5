// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include "isac/json_io.hpp"

#include <json.hpp>

#include "isac/errors.hpp"

namespace isac {

namespace {

using nlohmann::json;

json cplx(cdouble z) { return json::array({z.real(), z.imag()}); }

cdouble to_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("channel json: complex entries must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

json vec_json(const CVector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cplx(v(i)));
  return a;
}

CVector to_vec(const json& j) {
  if (!j.is_array()) throw ValidationError("channel json: expected a vector");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = to_cplx(j[i]);
  return v;
}

}  // namespace

std::string channel_to_json(const ChannelSet& ch) {
  json j;
  j["M"] = ch.M();
  j["N"] = ch.N();
  j["K"] = ch.K();
  json g = json::array();
  for (Eigen::Index r = 0; r < ch.G.rows(); ++r) g.push_back(vec_json(ch.G.row(r).transpose()));
  j["G"] = std::move(g);
  json hd = json::array(), hr = json::array();
  for (const auto& v : ch.h_d) hd.push_back(vec_json(v));
  for (const auto& v : ch.h_r) hr.push_back(vec_json(v));
  j["h_d"] = std::move(hd);
  j["h_r"] = std::move(hr);
  j["sigma_k2"] = std::vector<double>(ch.sigma_k2.data(), ch.sigma_k2.data() + ch.sigma_k2.size());
  j["sigma_r2"] = ch.sigma_r2;
  return j.dump();
}

ChannelSet channel_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("channel json: ") + e.what());
  }
  ChannelSet ch;
  try {
    const auto& g = j.at("G");
    const int N = static_cast<int>(g.size());
    const int M = N ? static_cast<int>(g[0].size()) : 0;
    ch.G.resize(N, M);
    for (int r = 0; r < N; ++r) {
      if (static_cast<int>(g[r].size()) != M) throw ValidationError("channel json: ragged G");
      ch.G.row(r) = to_vec(g[r]).transpose();
    }
    for (const auto& v : j.at("h_d")) ch.h_d.push_back(to_vec(v));
    for (const auto& v : j.at("h_r")) ch.h_r.push_back(to_vec(v));
    const auto s = j.at("sigma_k2").get<std::vector<double>>();
    ch.sigma_k2 = Eigen::Map<const RVector>(s.data(), static_cast<Eigen::Index>(s.size()));
    ch.sigma_r2 = j.at("sigma_r2").get<double>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("channel json: ") + e.what());
  }
  ch.validate();
  return ch;
}

}  // namespace isac
