// Copyright 2026 The irs-isac Authors
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include "isac/sdp.hpp"

namespace isac::sdp {

namespace {

nlohmann::json coeff_json(const BlockCoeff& c) {
  nlohmann::json j;
  j["block"] = c.block();
  if (c.is_dense()) {
    const RMatrix& m = c.matrix();
    auto rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      auto row = nlohmann::json::array();
      for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(r, k));
      rows.push_back(std::move(row));
    }
    j["dense"] = std::move(rows);
  } else {
    auto e = nlohmann::json::array();
    for (const auto& t : c.entries()) e.push_back({t.row, t.col, t.value});
    j["sparse"] = std::move(e);
  }
  return j;
}

}  // namespace

std::string dump_json(const SdpProblem& p) {
  nlohmann::json j;
  j["format"] = "isac-sdp-1";
  auto blocks = nlohmann::json::array();
  for (const auto& b : p.blocks) blocks.push_back({{"label", b.label}, {"dim", b.dim}});
  j["blocks"] = std::move(blocks);
  j["free_vars"] = p.free_vars;

  auto obj_blocks = nlohmann::json::array();
  for (const auto& c : p.objective) obj_blocks.push_back(coeff_json(c));
  auto obj_free = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.objective_free.size(); ++i)
    obj_free.push_back(p.objective_free(i));
  j["objective"] = {{"blocks", std::move(obj_blocks)}, {"free", std::move(obj_free)}};

  auto cons = nlohmann::json::array();
  for (const auto& c : p.constraints) {
    nlohmann::json jc;
    jc["sense"] = c.sense == Sense::Equal ? "=" : ">=";
    jc["rhs"] = c.rhs;
    auto cb = nlohmann::json::array();
    for (const auto& b : c.blocks) cb.push_back(coeff_json(b));
    jc["blocks"] = std::move(cb);
    auto cf = nlohmann::json::array();
    for (const auto& [idx, val] : c.free) cf.push_back({idx, val});
    jc["free"] = std::move(cf);
    cons.push_back(std::move(jc));
  }
  j["constraints"] = std::move(cons);
  return j.dump(2);
}

}  // namespace isac::sdp
