#include "qspair/json_io.hpp"

namespace qspair {

std::string rat_string(const Rat& r) { return r.get_str(); }

Json weight_json(const WeightVec& w) {
  Json out = Json::array();
  for (const auto& c : w.coords) out.push_back(rat_string(c));
  return out;
}

Json weight_fund_json(const RootDatum& rd, const WeightVec& w) {
  Json out = Json::array();
  for (const auto& c : rd.to_fundamental_coords(w)) out.push_back(rat_string(c));
  return out;
}

Json character_json(const Character& phi) {
  Json out = Json::array();
  for (const auto& [w, c] : phi.coeff) {
    Json term;
    term["exponent"] = weight_json(w);
    term["coeff"] = c.to_string();
    out.push_back(std::move(term));
  }
  return out;
}

Json pair_json(const InvolutionDatum& inv) {
  Json out;
  out["tag"] = inv.tag;
  out["name"] = inv.display_name();
  out["root_datum"] = inv.rd.name();
  out["n"] = inv.n();
  if (inv.family_r > 0) out["r"] = inv.family_r;
  auto nodes = [](const std::vector<char>& mask) {
    Json a = Json::array();
    for (std::size_t i = 0; i < mask.size(); ++i)
      if (mask[i]) a.push_back(static_cast<int>(i) + 1);
    return a;
  };
  out["pi_theta"] = nodes(inv.pi_theta);
  Json p = Json::array();
  for (int i = 0; i < inv.n(); ++i) p.push_back(inv.p[i] + 1);
  out["p"] = p;
  out["S"] = nodes(inv.S);
  out["S_table"] = nodes(inv.S_table);
  out["D"] = nodes(inv.D);
  Json seqs;
  for (const auto& [node, seq] : inv.seqs) {
    Json s;
    s["sign"] = seq.sign;
    s["seed"] = seq.seed + 1;
    Json factors = Json::array();
    for (const auto& f : seq.factors) factors.push_back(Json::array({f.node + 1, f.power}));
    s["factors"] = std::move(factors);
    seqs[std::to_string(node + 1)] = std::move(s);
  }
  out["sequences"] = std::move(seqs);
  Json theta = Json::array();
  for (int i = 0; i < inv.n(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < inv.n(); ++j) row.push_back(rat_string(inv.theta_mat[i][j]));
    theta.push_back(std::move(row));
  }
  out["theta"] = std::move(theta);
  return out;
}

Json module_json(const ModuleRep& m) {
  Json out;
  out["root_datum"] = m.rd.name();
  if (m.highest) out["highest_weight"] = weight_fund_json(m.rd, *m.highest);
  out["dim"] = m.dim();
  Json ws = Json::array();
  for (const auto& w : m.weights) ws.push_back(weight_json(w));
  out["basis_weights"] = std::move(ws);
  auto mats = [&](const std::vector<ScalarMat>& gens) {
    Json a = Json::array();
    for (std::size_t i = 0; i < gens.size(); ++i) {
      Json triplets = Json::array();
      for (int r = 0; r < gens[i].rows(); ++r)
        for (int c = 0; c < gens[i].cols(); ++c)
          if (!gens[i].at(r, c).is_zero())
            triplets.push_back(Json::array({r, c, gens[i].at(r, c).to_string()}));
      a.push_back(std::move(triplets));
    }
    return a;
  };
  out["x"] = mats(m.x);
  out["y"] = mats(m.y);
  return out;
}

Json relation_outcome_json(const RootDatum& rd, const RelationOutcome& oc) {
  Json out;
  out["relation"] = rel_name(oc.instance.rel);
  out["i"] = oc.instance.i + 1;
  if (oc.instance.j >= 0) out["j"] = oc.instance.j + 1;
  out["module"] = weight_fund_json(rd, oc.module_highest);
  out["status"] = oc.zero ? "zero" : "nonzero";
  if (!oc.zero) {
    Json w;
    w["row"] = oc.row;
    w["col"] = oc.col;
    w["value"] = oc.value;
    out["witness"] = std::move(w);
  }
  return out;
}

}  // namespace qspair
