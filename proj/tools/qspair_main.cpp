// qspair: exact computations with quantum symmetric pairs.
//
// Subcommands:
//   pairs             list the built-in classification rows
//   census            spherical-weight census over dominant weights
//   zonal             zonal character, orbit-sum expansion, invariance flags
//   verify-relations  evaluate the presentation relations on module batteries
//
// Exit codes: 0 all checks hold, 1 usage or input error, 2 a structural
// assertion failed (or a relation residual is nonzero), 3 resource cap hit.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "qspair/charring.hpp"
#include "qspair/json_io.hpp"
#include "qspair/spherical.hpp"

using namespace qspair;

namespace {

constexpr const char* kSchemaPrefix = "qspair";

struct PairArgs {
  std::string tag;
  int n = 0;
  int r = 0;
};

void add_pair_options(CLI::App* cmd, PairArgs& args, bool required = true) {
  auto* o = cmd->add_option("--pair", args.tag, "pair tag (see `qspair pairs`)");
  if (required) o->required();
  auto* on = cmd->add_option("--n", args.n, "rank (per simple factor for DOUBLE tags)");
  if (required) on->required();
  cmd->add_option("--r", args.r, "family parameter r, when the tag has one");
}

std::vector<std::pair<std::string, std::string>> parse_assignments(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("expected name=value in '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

int node_index(const std::string& name, std::size_t prefix_len, int n) {
  int idx = std::stoi(name.substr(prefix_len)) - 1;
  if (idx < 0 || idx >= n) throw DomainError("node index out of range in '" + name + "'");
  return idx;
}

// --params s2=sym,d1=3/4 ; "sym" keeps the symbol
PairSpec parse_pair_spec(const InvolutionDatum& inv, const std::string& params) {
  std::map<int, Scalar> s_vals, d_vals;
  for (const auto& [name, value] : parse_assignments(params)) {
    if (value == "sym") continue;
    Scalar v{Rat(value)};
    if (name.rfind("s'", 0) == 0) throw DomainError("s' belongs to --partner");
    if (name[0] == 's')
      s_vals[node_index(name, 1, inv.n())] = v;
    else if (name[0] == 'd')
      d_vals[node_index(name, 1, inv.n())] = v;
    else
      throw DomainError("unknown parameter '" + name + "' (expected s<i> or d<i>)");
  }
  return PairSpec::with_params(inv, s_vals, d_vals);
}

struct PartnerChoice {
  bool theorem53 = true;
  PartnerParams params;       // for theorem53 mode
  PairSpec custom;            // for custom mode
};

// --partner theorem53[:sprime2=1,c1=sym] | custom[:s2=...,d1=...]
PartnerChoice parse_partner(const InvolutionDatum& inv, const std::string& text) {
  PartnerChoice out;
  out.params = PartnerParams::symbolic(inv);
  out.custom = PairSpec::symbolic(inv);
  std::string mode = text, args;
  if (auto colon = text.find(':'); colon != std::string::npos) {
    mode = text.substr(0, colon);
    args = text.substr(colon + 1);
  }
  if (mode == "theorem53") {
    for (const auto& [name, value] : parse_assignments(args)) {
      if (value == "sym") continue;
      Scalar v{Rat(value)};
      if (name.rfind("sprime", 0) == 0) {
        int idx = node_index(name, 6, inv.n());
        if (!inv.S[idx]) throw DomainError("sprime only on S nodes");
        out.params.s_prime[idx] = v;
      } else if (name[0] == 'c') {
        int idx = node_index(name, 1, inv.n());
        if (!inv.D[idx]) throw DomainError("c only on D nodes");
        if (v.is_zero()) throw DomainError("c must be invertible");
        out.params.c[idx] = v;
      } else {
        throw DomainError("unknown partner parameter '" + name + "'");
      }
    }
  } else if (mode == "custom") {
    out.theorem53 = false;
    std::map<int, Scalar> s_vals, d_vals;
    for (const auto& [name, value] : parse_assignments(args)) {
      if (value == "sym") continue;
      Scalar v{Rat(value)};
      if (name[0] == 's')
        s_vals[node_index(name, 1, inv.n())] = v;
      else if (name[0] == 'd')
        d_vals[node_index(name, 1, inv.n())] = v;
      else
        throw DomainError("unknown partner parameter '" + name + "'");
    }
    out.custom = PairSpec::with_params(inv, s_vals, d_vals);
    // a custom partner reuses the s'/c symbols so both sides stay distinct
    for (int i = 0; i < inv.n(); ++i) {
      if (inv.S[i] && !s_vals.count(i)) out.custom.s[i] = Scalar::variable(var_sprime(i + 1));
      if (inv.D[i] && !d_vals.count(i)) out.custom.d[i] = Scalar::variable(var_c(i + 1));
    }
  } else {
    throw DomainError("partner mode must be theorem53 or custom");
  }
  return out;
}

std::vector<Int> parse_coords(const std::string& text, int rank) {
  std::vector<Int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(Int(item));
  if (static_cast<int>(out.size()) != rank)
    throw DomainError("expected " + std::to_string(rank) + " fundamental coordinates");
  return out;
}

void emit(const Json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::ofstream f(out_path);
    if (!f) throw DomainError("cannot open output file " + out_path);
    f << j.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------

int cmd_pairs(const PairArgs& args, bool as_json, const std::string& out_path) {
  std::vector<InvolutionDatum> rows;
  if (!args.tag.empty()) {
    rows.push_back(make_involution(args.tag, args.n, args.r));
  } else {
    rows = builtin_catalog();
  }
  if (as_json) {
    Json j;
    j["schema"] = std::string(kSchemaPrefix) + ".pairs/1";
    Json list = Json::array();
    for (const auto& inv : rows) list.push_back(pair_json(inv));
    j["pairs"] = std::move(list);
    emit(j, out_path);
    return 0;
  }
  std::cout << "tag        root   pi_theta        S      D      p\n";
  for (const auto& inv : rows) {
    auto nodes = [](const std::vector<char>& mask) {
      std::string s = "{";
      bool first = true;
      for (std::size_t i = 0; i < mask.size(); ++i)
        if (mask[i]) {
          if (!first) s += ",";
          s += std::to_string(i + 1);
          first = false;
        }
      return s + "}";
    };
    std::string p = "(";
    for (int i = 0; i < inv.n(); ++i) p += (i ? " " : "") + std::to_string(inv.p[i] + 1);
    p += ")";
    std::ostringstream line;
    line.width(10);
    line << std::left << (inv.tag + (inv.family_r ? "(" + std::to_string(inv.family_r) + ")" : ""));
    line << " ";
    line.width(6);
    line << std::left << inv.rd.name();
    line << " ";
    line.width(15);
    line << std::left << nodes(inv.pi_theta);
    line << " ";
    line.width(6);
    line << std::left << nodes(inv.S);
    line.width(7);
    line << std::left << nodes(inv.D);
    line << p;
    std::cout << line.str() << "\n";
  }
  return 0;
}

int cmd_census(const PairArgs& args, const std::string& params, long dim_bound,
               const std::string& out_path) {
  InvolutionDatum inv = make_involution(args.tag, args.n, args.r);
  PairSpec spec = parse_pair_spec(inv, params);
  Json j;
  j["schema"] = std::string(kSchemaPrefix) + ".census/1";
  j["pair"] = pair_json(inv);
  j["dim_bound"] = dim_bound;
  Json rows = Json::array();
  bool all_agree = true;
  for (const auto& lambda : inv.rd.enumerate_dominant(dim_bound)) {
    ModuleRep m = build_module(inv.rd, lambda, Int(dim_bound));
    auto xi = invariant_vector(m, invariance_system(spec, m));
    bool expected = in_P_plus_theta(inv, lambda);
    int kernel_dim = xi ? 1 : 0;
    bool agree = (kernel_dim == 1) == expected;
    all_agree = all_agree && agree;
    Json row;
    row["lambda"] = weight_fund_json(inv.rd, lambda);
    row["dim"] = m.dim();
    row["in_P_plus_theta"] = expected;
    row["kernel_dim"] = kernel_dim;
    row["agree"] = agree;
    if (xi) {
      bool supp = true, poly = true;
      for (int b = 0; b < m.dim(); ++b) {
        if (xi->coeffs[b].is_zero()) continue;
        supp = supp && inv.rest.in_monoid_N(lambda - m.weights[b], inv.rd);
        poly = poly && xi->coeffs[b].denominator_unit_parameters_only();
      }
      row["support_in_lambda_minus_N"] = supp;
      row["denominators_unit_parameters_only"] = poly;
      all_agree = all_agree && supp && poly;
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  j["all_agree"] = all_agree;
  emit(j, out_path);
  return all_agree ? 0 : 2;
}

int cmd_zonal(const PairArgs& args, const std::string& params, const std::string& partner_text,
              const std::string& lambda_text, long dim_cap, const std::string& out_path) {
  InvolutionDatum inv = make_involution(args.tag, args.n, args.r);
  PairSpec spec = parse_pair_spec(inv, params);
  PartnerChoice partner = parse_partner(inv, partner_text);
  WeightVec lambda = inv.rd.from_fundamental_coords(parse_coords(lambda_text, inv.n()));

  ModuleRep m = build_module(inv.rd, lambda, Int(dim_cap));
  ZonalData data = partner.theorem53
                       ? zonal_on_module(spec, partner.params, m)
                       : zonal_with_presentations(spec, m, invariance_system(spec, m),
                                                  invariance_system(partner.custom, m));
  bool invariant = is_w_invariant(data.phi, inv);

  Json j;
  j["schema"] = std::string(kSchemaPrefix) + ".zonal/1";
  j["pair"] = pair_json(inv);
  j["lambda"] = weight_fund_json(inv.rd, lambda);
  j["partner"] = partner.theorem53 ? "theorem53" : "custom";
  j["character"] = character_json(data.phi);
  j["w_invariant"] = invariant;
  if (invariant) {
    Json exp = Json::array();
    for (const auto& [mu, c] : expand_in_orbit_sums(data.phi, inv)) {
      Json term;
      term["mu"] = weight_json(mu);
      term["coeff"] = c.to_string();
      exp.push_back(std::move(term));
    }
    j["orbit_sum_expansion"] = std::move(exp);
  }
  emit(j, out_path);
  if (partner.theorem53 && !invariant) return 2;
  return 0;
}

int cmd_verify_relations(const PairArgs& args, const std::string& params,
                         const std::string& battery_text, long dim_cap, int perturb,
                         const std::string& out_path) {
  InvolutionDatum inv = make_involution(args.tag, args.n, args.r);
  PairSpec spec = parse_pair_spec(inv, params);

  std::vector<ModuleRep> battery;
  if (battery_text == "auto") {
    for (const auto& lambda : inv.rd.enumerate_dominant(dim_cap)) {
      if (lambda.is_zero()) continue;
      battery.push_back(build_module(inv.rd, lambda, Int(dim_cap)));
      if (battery.size() == 3) break;
    }
    if (battery.size() < 3) throw DomainError("auto battery found fewer than three modules under the cap");
  } else {
    std::stringstream ss(battery_text);
    std::string part;
    while (std::getline(ss, part, ';')) {
      WeightVec lambda = inv.rd.from_fundamental_coords(parse_coords(part, inv.n()));
      battery.push_back(build_module(inv.rd, lambda, Int(dim_cap)));
    }
    if (battery.empty()) throw DomainError("empty battery");
  }
  std::vector<const Carrier*> mods;
  for (const auto& m : battery) mods.push_back(&m);

  std::optional<int> perturb_node;
  if (perturb > 0) perturb_node = perturb - 1;

  Json j;
  j["schema"] = std::string(kSchemaPrefix) + ".relations/1";
  j["pair"] = pair_json(inv);
  if (perturb_node) j["perturbed_node"] = perturb;
  Json results = Json::array();
  bool all_zero = true;
  for (const auto& instance : applicable_relations(spec))
    for (const auto& oc : verify_relation(spec, instance, mods, perturb_node)) {
      all_zero = all_zero && oc.zero;
      results.push_back(relation_outcome_json(inv.rd, oc));
    }
  j["results"] = std::move(results);
  j["all_zero"] = all_zero;
  emit(j, out_path);
  return all_zero ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computations with quantum symmetric pairs"};
  app.require_subcommand(1);

  PairArgs pair_args;
  std::string params, partner = "theorem53", lambda_text, battery = "auto", out_path;
  long dim_bound = 60, dim_cap = 200;
  int perturb = 0;
  bool as_json = false;

  auto* pairs = app.add_subcommand("pairs", "list classification rows");
  add_pair_options(pairs, pair_args, false);
  pairs->add_flag("--json", as_json, "emit JSON instead of a table");
  pairs->add_option("--out", out_path, "output path (default stdout)");

  auto* census = app.add_subcommand("census", "spherical census over dominant weights");
  add_pair_options(census, pair_args);
  census->add_option("--params", params, "parameter assignments, e.g. s2=sym,d1=3/4");
  census->add_option("--dim-bound", dim_bound, "largest module dimension (default 60)");
  census->add_option("--out", out_path, "output path");

  auto* zonal_cmd = app.add_subcommand("zonal", "zonal character and its expansion");
  add_pair_options(zonal_cmd, pair_args);
  zonal_cmd->add_option("--lambda", lambda_text, "fundamental coordinates, e.g. 2,0")->required();
  zonal_cmd->add_option("--params", params, "base pair parameters");
  zonal_cmd->add_option("--partner", partner, "theorem53[:sprime2=..,c1=..] or custom[:s2=..,d1=..]");
  zonal_cmd->add_option("--dim-cap", dim_cap, "module dimension cap (default 200)");
  zonal_cmd->add_option("--out", out_path, "output path");

  auto* rel = app.add_subcommand("verify-relations", "evaluate presentation relations");
  add_pair_options(rel, pair_args);
  rel->add_option("--params", params, "parameter assignments");
  rel->add_option("--battery", battery, "auto or lambda list '1,0;0,1;1,1'");
  rel->add_option("--dim-cap", dim_cap, "module dimension cap");
  rel->add_option("--perturb", perturb, "perturb B at this node (negative control)");
  rel->add_option("--out", out_path, "output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (pairs->parsed()) return cmd_pairs(pair_args, as_json, out_path);
    if (census->parsed()) return cmd_census(pair_args, params, dim_bound, out_path);
    if (zonal_cmd->parsed())
      return cmd_zonal(pair_args, params, partner, lambda_text, dim_cap, out_path);
    if (rel->parsed())
      return cmd_verify_relations(pair_args, params, battery, dim_cap, perturb, out_path);
  } catch (const ResourceLimit& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const StructuralViolation& e) {
    std::cerr << "structural violation: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
