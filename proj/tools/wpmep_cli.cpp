// wpmep: command-line front end for weighted poset metric computations.
//
//   wpmep poset --instance chain.json
//   wpmep mep --instance planes.json --brute-force --max-dim 3
//   wpmep lattice subspace 2 2
//   wpmep accept --grid small
//
// Exit codes: 0 pass, 1 property failure, 2 validation error, 3 bound exceeded.

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "wpmep/acceptance.hpp"
#include "wpmep/fourier.hpp"
#include "wpmep/instance.hpp"
#include "wpmep/isometry.hpp"
#include "wpmep/lattice.hpp"
#include "wpmep/mep.hpp"

namespace {

using Json = nlohmann::ordered_json;
using namespace wpmep;

constexpr int kPass = 0;
constexpr int kPropertyFailure = 1;
constexpr int kValidation = 2;
constexpr int kBound = 3;

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  EVP_Digest(data.data(), data.size(), digest, &size, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < size; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

Json labels_json(const Poset& p, LabelSet s) { return p.labels_of(s); }

Json matrix_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& r : m.row_list()) rows.push_back(r);
  return rows;
}

Json code_json(const LinearCode& c) { return matrix_json(c.basis()); }

Json permutation_json(const Poset& p, const Permutation& perm) {
  Json out = Json::object();
  for (int i = 0; i < p.size(); ++i) out[p.label(i)] = p.label(perm[i]);
  return out;
}

Json condition_json(const Condition& c) {
  Json out;
  out["value"] = c.value;
  if (!c.note.empty()) out["note"] = c.note;
  if (!c.witness.empty()) out["witness"] = c.witness;
  return out;
}

std::string text_scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// Indented key: value rendering; arrays of scalars stay on one line.
void render_text(std::ostream& out, const Json& v, int depth) {
  const std::string pad(2 * depth, ' ');
  auto scalar_array = [](const Json& a) {
    return a.is_array() && std::all_of(a.begin(), a.end(), [](const Json& x) { return x.is_primitive(); });
  };
  if (v.is_object()) {
    for (const auto& [key, value] : v.items()) {
      if (value.is_primitive() || scalar_array(value)) {
        out << pad << key << ": " << text_scalar(value) << "\n";
      } else {
        out << pad << key << ":\n";
        render_text(out, value, depth + 1);
      }
    }
  } else if (v.is_array()) {
    for (const auto& item : v) {
      if (item.is_primitive() || scalar_array(item)) {
        out << pad << "- " << text_scalar(item) << "\n";
      } else {
        out << pad << "-\n";
        render_text(out, item, depth + 1);
      }
    }
  } else {
    out << pad << text_scalar(v) << "\n";
  }
}

struct Context {
  std::string instance_path;
  std::uint64_t bound = 0;
  bool text = false;
  std::uint32_t seed = 2024;

  Bounds bounds() const { return bound ? Bounds::uniform(bound) : Bounds{}; }

  Instance load() const {
    if (instance_path.empty()) throw ValidationError("--instance is required for this command");
    return load_instance(instance_path);
  }
};

Json report_head(const std::string& command, const Instance* inst) {
  Json out;
  out["command"] = command;
  if (inst) {
    auto canonical = to_json(*inst);
    out["instance"] = canonical;
    out["digest"] = sha256_hex(canonical.dump());
  }
  return out;
}

// poset -----------------------------------------------------------------

int cmd_poset(const Context& ctx, Json& report) {
  auto inst = ctx.load();
  const auto& p = inst.poset;
  report = report_head("poset", &inst);
  Json ideals = Json::array();
  for (auto i : all_ideals(p)) ideals.push_back(labels_json(p, i));
  report["ideals"] = ideals;
  Json lv = Json::object();
  auto len = levels(p);
  for (int i = 0; i < p.size(); ++i) lv[p.label(i)] = len[i];
  report["levels"] = lv;
  auto hier = is_hierarchical(p);
  report["hierarchical"] = hier.hierarchical;
  if (hier.witness)
    report["hierarchy_witness"] = {p.label(hier.witness->first), p.label(hier.witness->second)};
  auto bounds = ctx.bounds();
  auto aut = automorphisms(p, bounds.max_aut_elements);
  report["aut_order"] = aut.size();
  report["weight_preserving_aut_order"] = weight_preserving_automorphisms(p, inst.omega, bounds.max_aut_elements).size();
  auto udp = udp_check(p, inst.omega, bounds.max_aut_elements);
  report["udp"] = udp.holds;
  if (udp.witness) {
    report["udp_witness"] = {labels_json(p, udp.witness->first), labels_json(p, udp.witness->second)};
    report["udp_witness_weights"] = {to_string(inst.omega.sum(udp.witness->first)),
                                     to_string(inst.omega.sum(udp.witness->second))};
  }
  return kPass;
}

// isometries ------------------------------------------------------------

/// Greedy generating set: keep each element not already in the subgroup
/// generated by the earlier picks.
std::vector<std::size_t> greedy_generators(const FieldSpec& f, const std::vector<Matrix>& group) {
  std::set<Matrix> generated{Matrix::identity(group.front().rows())};
  std::vector<Matrix> gens;
  std::vector<std::size_t> picks;
  for (std::size_t g = 0; g < group.size(); ++g) {
    if (generated.count(group[g])) continue;
    gens.push_back(group[g]);
    picks.push_back(g);
    std::vector<Matrix> frontier(generated.begin(), generated.end());
    while (!frontier.empty()) {
      std::vector<Matrix> next;
      for (const auto& x : frontier)
        for (const auto& s : gens) {
          auto y = multiply(f, x, s);
          if (generated.insert(y).second) next.push_back(y);
        }
      frontier = std::move(next);
    }
  }
  return picks;
}

int cmd_isometries(const Context& ctx, bool brute_force, Json& report) {
  auto inst = ctx.load();
  auto m = inst.metric();
  auto bounds = ctx.bounds();
  report = report_head("isometries", &inst);
  auto sf = weight_sum_functional(m.poset, m.omega);
  auto admissible = admissible_automorphisms(m.poset, sf, m.space, bounds);
  auto formula = structured_group_order(m.space, m.poset, admissible.size(), bounds.max_group);
  if (!formula) throw BoundExceeded("isometry group order exceeds the configured bound");
  auto group = weight_isometry_group(m, bounds);
  report["order"] = group.size();
  report["formula_order"] = *formula;
  report["admissible_automorphisms"] = admissible.size();

  std::vector<Matrix> mats;
  for (const auto& g : group) mats.push_back(to_matrix(m.space, g));
  Json gens = Json::array();
  if (group.size() <= 100000) {
    for (auto g : greedy_generators(m.space.field(), mats)) {
      Json e;
      e["lambda"] = permutation_json(m.poset, group[g].lambda);
      e["matrix"] = matrix_json(mats[g]);
      gens.push_back(e);
    }
    report["generators"] = gens;
  } else {
    report["generators"] = "skipped: group too large for a greedy generating set";
  }

  Json table = Json::array();
  for (const auto& lambda : admissible) {
    std::uint64_t count = 0;
    for (const auto& g : group) count += g.lambda == lambda;
    Json row;
    row["lambda"] = permutation_json(m.poset, lambda);
    row["preimages"] = count;
    table.push_back(row);
  }
  report["zeta_image"] = table;
  bool ok = group.size() == *formula;
  if (brute_force) {
    auto brute = brute_force_isometry_group(m, bounds);
    bool agree = std::set<Matrix>(mats.begin(), mats.end()) == std::set<Matrix>(brute.begin(), brute.end());
    report["brute_force_order"] = brute.size();
    report["agreement"] = agree;
    ok = ok && agree;
  }
  return ok ? kPass : kPropertyFailure;
}

// mep -------------------------------------------------------------------

Json verdict_json(const MetricSpace& m, MepMode mode, const MepVerdict& v, const Bounds& bounds) {
  Json out;
  out["holds"] = v.holds;
  if (!v.trace.empty()) {
    Json trace = Json::object();
    for (const auto& t : v.trace) trace[t.name] = t.value;
    out["trace"] = trace;
  }
  if (v.codes_checked) {
    out["exhaustive"] = v.exhaustive;
    out["codes_checked"] = v.codes_checked;
    out["maps_checked"] = v.maps_checked;
  }
  if (v.counterexample) {
    Json ce;
    ce["code"] = code_json(v.counterexample->code);
    ce["images"] = matrix_json(v.counterexample->images);
    ce["replayed"] = replay_counterexample(m, mode, *v.counterexample, bounds);
    out["counterexample"] = ce;
  }
  return out;
}

int cmd_mep(const Context& ctx, const std::string& mode_name, bool brute_force, int max_dim, Json& report) {
  auto inst = ctx.load();
  auto m = inst.metric();
  auto bounds = ctx.bounds();
  MepMode mode = mode_name == "psupport" ? MepMode::PSupport : MepMode::Weight;
  report = report_head("mep", &inst);
  report["mode"] = to_string(mode);

  auto conditions = condition_report(m, bounds);
  Json cr;
  cr["A"] = condition_json(conditions.a);
  cr["B"] = condition_json(conditions.b);
  cr["C"] = condition_json(conditions.c);
  cr["D"] = condition_json(conditions.d);
  cr["E"] = condition_json(conditions.e);
  report["conditions"] = cr;

  std::optional<MepVerdict> predicate;
  try {
    predicate = mode == MepMode::Weight ? mep_predicate(m, bounds) : mep_p_support_predicate(m);
  } catch (const PredicateUnavailable& e) {
    if (!brute_force) throw;
    report["predicate"] = std::string("unavailable: ") + e.what();
  }
  if (predicate) report["predicate"] = verdict_json(m, mode, *predicate, bounds);

  bool ok = predicate ? predicate->holds : true;
  if (brute_force) {
    auto brute = mep_brute_force(m, mode, bounds, max_dim);
    report["brute_force"] = verdict_json(m, mode, brute, bounds);
    ok = brute.holds;
    if (predicate) {
      // A bounded scan that found nothing only agrees with a "fails" verdict vacuously.
      bool agree = brute.holds == predicate->holds || (brute.holds && !brute.exhaustive);
      report["agreement"] = agree;
      if (!agree) return kPropertyFailure;
    }
    if (brute.counterexample && !replay_counterexample(m, mode, *brute.counterexample, bounds))
      return kPropertyFailure;
  }
  report["holds"] = ok;
  return ok ? kPass : kPropertyFailure;
}

// lattice ---------------------------------------------------------------

std::string moebius_digest(const MoebiusTable& mu) {
  std::string data;
  const auto& l = mu.lattice();
  for (int y = 0; y < l.size(); ++y) {
    const auto& b = l.below(y);
    const auto& col = mu.column(y);
    for (std::size_t i = 0; i < b.size(); ++i)
      data += std::to_string(b[i]) + "," + std::to_string(y) + ":" + std::to_string(col[i]) + ";";
  }
  return sha256_hex(data);
}

Json point_set_json(const PointSet& s) { return s.elements(); }

int cmd_lattice(const Context& ctx, const std::vector<std::string>& spec, int e, Json& report) {
  if (spec.empty()) throw ValidationError("lattice needs a generator: subspace <q> <k> | boolean <n> | powerset <n>");
  auto arg = [&](std::size_t i) {
    if (i >= spec.size()) throw ValidationError("lattice " + spec[0] + ": missing argument " + std::to_string(i));
    try {
      std::size_t used = 0;
      int v = std::stoi(spec[i], &used);
      if (used != spec[i].size()) throw std::invalid_argument(spec[i]);
      return v;
    } catch (const std::logic_error&) {
      throw ValidationError("lattice " + spec[0] + ": argument \"" + spec[i] + "\" is not an integer");
    }
  };
  auto bounds = ctx.bounds();
  report = report_head("lattice", nullptr);
  Json gen = spec;
  report["generator"] = gen;

  std::optional<SubspaceLattice> sub;
  std::optional<FiniteLattice> plain;
  std::vector<int> tops;
  if (spec[0] == "subspace") {
    if (spec.size() != 3) throw ValidationError("usage: lattice subspace <q> <k>");
    sub = subspace_lattice(arg(1), arg(2), bounds);
    for (int y = 0; y < sub->lattice.size(); ++y)
      if (sub->dims[y] > e) tops.push_back(y);
    report["e"] = e;
  } else if (spec[0] == "boolean" || spec[0] == "powerset") {
    if (spec.size() != 2) throw ValidationError("usage: lattice " + spec[0] + " <n>");
    plain = spec[0] == "boolean" ? pointed_boolean_lattice(arg(1)) : power_set_lattice(arg(1));
  } else {
    throw ValidationError("unknown lattice generator \"" + spec[0] + "\"");
  }
  const FiniteLattice& l = sub ? sub->lattice : *plain;
  MoebiusTable mu(l);
  report["ground"] = l.ground();
  report["members"] = l.size();
  report["moebius_digest"] = moebius_digest(mu);

  MinimalLength best;
  if (sub) {
    best = minimal_length_over(mu, tops);
  } else if (l.has_empty_member()) {
    report["n"] = nullptr;
    report["note"] = "the empty set is a member; solutions from Moebius columns need it excluded";
    return kPass;
  } else {
    best = minimal_nontrivial_length(mu);
  }
  if (best.all_trivial) {
    report["n"] = nullptr;
    report["note"] = "no admissible top member: every solution is trivial";
    return kPass;
  }
  report["n"] = best.length;
  if (sub) {
    auto z = zeta(sub->field.q(), sub->k, e, bounds);
    report["zeta"] = z;
    report["zeta_formula"] = zeta_formula(sub->field.q(), e);
  }
  auto sol = construct_minimal_solution(mu, best.witness);
  Json s;
  s["top"] = point_set_json(l.member(best.witness));
  Json left = Json::array(), right = Json::array();
  for (const auto& x : sol.left) left.push_back(point_set_json(x));
  for (const auto& x : sol.right) right.push_back(point_set_json(x));
  s["left"] = left;
  s["right"] = right;
  s["length"] = sol.length();
  bool valid = is_solution(l.ground(), sol) && !is_trivial(sol) && sol.length() == best.length;
  s["valid"] = valid;
  report["solution"] = s;
  return valid ? kPass : kPropertyFailure;
}

// macwilliams / audit ---------------------------------------------------

int cmd_macwilliams(const Context& ctx, Json& report) {
  auto inst = ctx.load();
  auto m = inst.metric();
  auto bounds = ctx.bounds();
  report = report_head("macwilliams", &inst);
  auto r = macwilliams_identity_check(m, bounds);
  report["holds"] = r.holds;
  report["codes_checked"] = r.codes_checked;
  report["partition_blocks"] = weight_partition(m, bounds).block_count();
  report["dual_partition_blocks"] = dual_weight_partition(m, bounds).block_count();
  if (r.witness) {
    Json w;
    w["first"] = code_json(r.witness->first);
    w["second"] = code_json(r.witness->second);
    w["replayed"] = replay_macwilliams_witness(m, r.witness->first, r.witness->second, bounds);
    report["witness"] = w;
  }
  return r.holds ? kPass : kPropertyFailure;
}

int cmd_audit(const Context& ctx, int max_dim, Json& report) {
  auto inst = ctx.load();
  auto m = inst.metric();
  report = report_head("audit", &inst);
  auto a = statement_audit(m, ctx.bounds(), max_dim);
  Json st = Json::array();
  for (int i = 1; i <= 7; ++i) {
    Json row;
    row["id"] = i;
    row["statement"] = statement_name(i);
    row["value"] = a.s[i];
    st.push_back(row);
  }
  report["statements"] = st;
  report["hierarchical"] = a.hierarchical;
  report["unit_weight"] = a.unit_weight;
  report["integer_valued"] = a.integer_valued;
  report["partition_sizes_match"] = a.partition_sizes_match;
  report["mep_exhaustive"] = a.mep_exhaustive;
  report["violated"] = a.violated;
  report["consistent"] = a.consistent();
  return a.consistent() ? kPass : kPropertyFailure;
}

// accept ----------------------------------------------------------------

int cmd_accept(const Context& ctx, const std::string& grid, int only, Json& report) {
  acceptance::Options options;
  options.small = grid == "small";
  options.seed = ctx.seed;
  report = report_head("accept", nullptr);
  report["grid"] = grid;
  report["seed"] = ctx.seed;
  const int count = static_cast<int>(acceptance::criteria().size());
  if (only < 0 || only > count) throw ValidationError("--only must be between 1 and " + std::to_string(count));
  Json results = Json::array();
  int failed = 0;
  for (int id = 1; id <= count; ++id) {
    if (only && id != only) continue;
    auto r = acceptance::run(id, options);
    if (!ctx.text) std::cerr << acceptance::format_line(r) << "\n";
    Json row;
    row["id"] = r.id;
    row["name"] = r.name;
    row["passed"] = r.passed;
    row["detail"] = r.detail;
    if (!r.passed) {
      row["replay"] = "wpmep accept --only " + std::to_string(id) + " --seed " + std::to_string(ctx.seed) +
                      (options.small ? " --grid small" : "");
    }
    results.push_back(row);
    report["timing"]["criterion_" + std::to_string(id)] = r.seconds;
    failed += !r.passed;
  }
  report["criteria"] = results;
  report["failed"] = failed;
  return failed ? kPropertyFailure : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted poset metrics: isometries, extension property and MacWilliams checks"};
  app.require_subcommand(1);
  app.fallthrough();
  Context ctx;
  app.add_option("--instance", ctx.instance_path, "instance JSON file");
  app.add_option("--bound", ctx.bound, "cap for every exhaustive enumeration (vectors, codes, maps, groups)");
  auto* json_flag = app.add_flag("--json", "emit a JSON report (default)");
  app.add_flag("--text", ctx.text, "emit an indented text report")->excludes(json_flag);
  app.add_option("--seed", ctx.seed, "seed for randomized sampling in the acceptance grid");

  auto* poset = app.add_subcommand("poset", "ideals, levels, hierarchy, automorphisms and UDP");
  bool iso_brute = false;
  auto* iso = app.add_subcommand("isometries", "isometry group order, generators and the zeta image");
  iso->add_flag("--brute-force", iso_brute, "compare with the brute-force automorphism scan");
  std::string mode = "weight";
  bool mep_brute = false;
  int mep_max_dim = -1;
  auto* mep = app.add_subcommand("mep", "MacWilliams extension property");
  mep->add_option("--mode", mode, "weight or psupport")->check(CLI::IsMember({"weight", "psupport"}));
  mep->add_flag("--brute-force", mep_brute, "scan codes and weight-preserving maps exhaustively");
  mep->add_option("--max-dim", mep_max_dim, "only scan codes of dimension at most this");
  std::vector<std::string> lattice_spec;
  int lattice_e = 1;
  auto* lattice = app.add_subcommand("lattice", "Moebius function and minimal isometry-equation solutions");
  lattice->add_option("generator", lattice_spec, "subspace <q> <k> | boolean <n> | powerset <n>")->expected(1, 3);
  lattice->add_option("--e", lattice_e, "for subspace lattices: admissible tops have dimension > e");
  auto* mw = app.add_subcommand("macwilliams", "MacWilliams identity for the weight partition");
  int audit_max_dim = -1;
  auto* audit = app.add_subcommand("audit", "the seven-statement equivalence audit");
  audit->add_option("--max-dim", audit_max_dim, "limit the MEP scan to codes of at most this dimension");
  std::string grid = "default";
  int only = 0;
  auto* accept = app.add_subcommand("accept", "run the acceptance criteria");
  accept->add_option("--grid", grid, "default or small")->check(CLI::IsMember({"default", "small"}));
  accept->add_option("--only", only, "run a single criterion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kValidation;
  }

  Json report;
  int code = kPass;
  auto start = std::chrono::steady_clock::now();
  try {
    if (*poset) code = cmd_poset(ctx, report);
    if (*iso) code = cmd_isometries(ctx, iso_brute, report);
    if (*mep) code = cmd_mep(ctx, mode, mep_brute, mep_max_dim, report);
    if (*lattice) code = cmd_lattice(ctx, lattice_spec, lattice_e, report);
    if (*mw) code = cmd_macwilliams(ctx, report);
    if (*audit) code = cmd_audit(ctx, audit_max_dim, report);
    if (*accept) code = cmd_accept(ctx, grid, only, report);
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const DomainError& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const PredicateUnavailable& e) {
    std::cerr << "predicate unavailable: " << e.what() << "\n";
    return kValidation;
  } catch (const ContractError& e) {
    std::cerr << "contract violation: " << e.what() << "\n";
    return kPropertyFailure;
  }
  report["exit_code"] = code;
  report["timing"]["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ctx.text) {
    render_text(std::cout, report, 0);
  } else {
    std::cout << report.dump(2) << "\n";
  }
  return code;
}
