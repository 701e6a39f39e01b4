// zgfree: command-line front end for free-pair analysis in integral group
// rings. See README.md for the flag grammar and output formats.

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "zg/freeness.hpp"
#include "zg/stau.hpp"

using json = nlohmann::ordered_json;
using namespace zg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitUnknown = 3;

struct Options {
  std::string format = "text";
  std::string kb_path;
};

FreePointKB loadKB(const Options& opt) {
  std::string path = opt.kb_path;
  if (path.empty()) {
    const char* env = std::getenv("ZGFREE_KB");
    if (env) path = env;
  }
  if (path.empty()) return {};
  return FreePointKB::load(path);
}

// Splits an H=/K= generator list "(1,2)(3,4),(1,3)" at the commas that
// separate whole permutation words.
std::vector<std::string> splitGenerators(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == ',' && i > 0 && s[i - 1] == ')' && i + 1 < s.size() && s[i + 1] == '(') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += s[i];
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

Subgroup parseSubgroup(const FiniteGroup& G, const std::string& gens) {
  std::vector<int> idx;
  for (const std::string& w : splitGenerators(gens)) idx.push_back(G.parseElement(w));
  return G.subgroupGenerated(idx);
}

// Descriptor grammar: beta:<x>:<h>[:H=<gens>] | gamma:<x>:<h>[:H=<gens>]
// | bass:<x>:<k>:<m>, with x, h in cycle notation.
UnitValue parseUnit(const FiniteGroup& G, const std::string& desc) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : desc) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  if (parts.size() < 3) throw parse_error("bad unit descriptor: " + desc);
  const std::string& kind = parts[0];
  if (kind == "beta" || kind == "gamma") {
    int x = G.parseElement(parts[1]);
    int h = G.parseElement(parts[2]);
    std::optional<Subgroup> H;
    if (parts.size() == 4) {
      if (parts[3].rfind("H=", 0) != 0) throw parse_error("bad subgroup suffix: " + parts[3]);
      H = parseSubgroup(G, parts[3].substr(2));
    } else if (parts.size() > 4) {
      throw parse_error("bad unit descriptor: " + desc);
    }
    return bicyclicUnit(G, kind == "beta" ? BicyclicKind::Beta : BicyclicKind::Gamma, x, h, H);
  }
  if (kind == "bass") {
    if (parts.size() != 4) throw parse_error("bad unit descriptor: " + desc);
    int x = G.parseElement(parts[1]);
    return bassUnit(G, x, std::stoul(parts[2]), std::stoul(parts[3]));
  }
  throw parse_error("unknown unit kind: " + kind);
}

json boxToJson(const RootBox& b) {
  return json{{"re", b.re.get_str()},
              {"im", b.im.get_str()},
              {"radius", b.radius.get_str()},
              {"decided", b.decided}};
}

// Coefficients in ascending degree, as exact decimal strings.
json polyToJson(const IntPoly& p) {
  json out = json::array();
  for (const mpz_class& c : p) out.push_back(c.get_str());
  return out;
}

json spectrumToJson(const Spectrum& s) {
  json roots = json::array();
  for (const auto& [r, m] : s.integer_roots) roots.push_back(json::array({r.get_str(), m}));
  json boxes = json::array();
  for (const RootBox& b : s.boxes) boxes.push_back(boxToJson(b));
  return json{{"min_poly", polyToJson(s.min_poly)},
              {"integer_roots", roots},
              {"boxes", boxes},
              {"precision_bits", s.precision_bits},
              {"scale", s.scale}};
}

void emit(const Options& opt, const json& j, const std::string& text) {
  if (opt.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

UnitValue powerUnit(const UnitValue& u, unsigned long n, const FiniteGroup& G) {
  UnitValue out = u;
  out.element = u.element.pow(n);
  return out;
}

int cmdEnumerate(const Options& opt, const std::string& groupSpec, const std::string& type,
                 bool countOnly) {
  FiniteGroup G = FiniteGroup::fromSpec(groupSpec);
  BicyclicKind kind = type == "beta" ? BicyclicKind::Beta : BicyclicKind::Gamma;
  BicyclicCensus census = enumerateBicyclic(G, kind);
  if (countOnly) {
    emit(opt,
         json{{"group", groupSpec},
              {"type", type},
              {"distinct_including_trivial", census.distinct_including_trivial}},
         std::to_string(census.distinct_including_trivial) + "\n");
    return kExitOk;
  }
  json units = json::array();
  std::string text;
  for (const UnitValue& u : census.units) {
    units.push_back(u.descriptor.describe(G));
    text += u.descriptor.describe(G) + "\n";
  }
  text += "parameter pairs (nontrivial): " + std::to_string(census.parameter_count_nontrivial) +
          "\ndistinct nontrivial units: " + std::to_string(census.distinct_nontrivial) +
          "\ndistinct units including trivial: " +
          std::to_string(census.distinct_including_trivial) + "\n";
  emit(opt,
       json{{"group", groupSpec},
            {"type", type},
            {"units", units},
            {"parameter_count_nontrivial", census.parameter_count_nontrivial},
            {"distinct_nontrivial", census.distinct_nontrivial},
            {"distinct_including_trivial", census.distinct_including_trivial}},
       text);
  return kExitOk;
}

int cmdVerdict(const Options& opt, const std::string& groupSpec, const std::string& uDesc,
               const std::string& vDesc, unsigned long powerU, unsigned long powerV) {
  FiniteGroup G = FiniteGroup::fromSpec(groupSpec);
  FreePointKB kb = loadKB(opt);
  UnitValue u = powerUnit(parseUnit(G, uDesc), powerU, G);
  UnitValue v = powerUnit(parseUnit(G, vDesc), powerV, G);
  Verdict verdict = pairVerdict(u, v, kb);
  json j{{"group", groupSpec},
         {"u", uDesc},
         {"v", vDesc},
         {"power_u", powerU},
         {"power_v", powerV},
         {"verdict", verdictName(verdict.kind)}};
  std::string text = std::string("verdict: ") + verdictName(verdict.kind) + "\n";
  if (verdict.witness_integer) {
    j["witness"] = verdict.witness_integer->get_str();
    text += "witness eigenvalue: " + verdict.witness_integer->get_str() + "\n";
  } else if (verdict.witness_box) {
    j["witness_box"] = boxToJson(*verdict.witness_box);
    text += "witness eigenvalue box: center (" + verdict.witness_box->re.get_str() + ", " +
            verdict.witness_box->im.get_str() + "), radius " +
            verdict.witness_box->radius.get_str() + "\n";
  }
  j["spectrum"] = spectrumToJson(verdict.spectrum);
  text += "minimal polynomial of (u-1)(v-1): " + poly::toString(verdict.spectrum.min_poly) + "\n";
  emit(opt, j, text);
  return verdict.kind == VerdictKind::Unknown ? kExitUnknown : kExitOk;
}

int cmdMinPower(const Options& opt, const std::string& groupSpec, const std::string& uDesc,
                const std::string& vDesc) {
  FiniteGroup G = FiniteGroup::fromSpec(groupSpec);
  FreePointKB kb = loadKB(opt);
  UnitValue u = parseUnit(G, uDesc);
  UnitValue v = parseUnit(G, vDesc);
  MinPowerResult r = minPower(u, v, kb);
  json j{{"group", groupSpec}, {"u", uDesc}, {"v", vDesc}};
  std::string text;
  if (r.certified) {
    j["certified"] = *r.certified;
    text += "certified minimal freeing power: " + std::to_string(*r.certified) + "\n";
  } else {
    j["certified"] = nullptr;
    text += "certified minimal freeing power: none found\n";
  }
  j["possible_from"] = r.possible_from;
  text += "freeness not excluded from power: " + std::to_string(r.possible_from) + "\n";
  json und = json::array();
  for (const RootBox& b : r.undecided) und.push_back(boxToJson(b));
  j["undecided"] = und;
  if (!r.undecided.empty()) {
    j["undecided_min_poly"] = polyToJson(r.undecided_min_poly);
    text += "undecided points with minimal polynomial " + poly::toString(r.undecided_min_poly) +
            " block exactness\n";
  }
  emit(opt, j, text);
  bool exact = r.certified && *r.certified == r.possible_from;
  return exact ? kExitOk : kExitUnknown;
}

int cmdInvariant(const Options& opt, const std::string& groupSpec, const std::string& mode,
                 unsigned jobs) {
  FiniteGroup G = FiniteGroup::fromSpec(groupSpec);
  FreePointKB kb = loadKB(opt);
  InvariantResult r = groupInvariant(G, mode[0], kb, {}, jobs, &std::cerr);
  json j{{"group", groupSpec},
         {"mode", mode},
         {"pairs_total", r.pairs_total},
         {"pairs_non_nilpotent", r.pairs_nonnilpotent}};
  std::string text;
  if (r.infinite) {
    j["value"] = "infinity";
    text = mode + "(" + groupSpec + ") = infinity (no non-nilpotent pair)\n";
    emit(opt, j, text);
    return kExitOk;
  }
  if (r.exact_value) {
    j["value"] = *r.exact_value;
    text = mode + "(" + groupSpec + ") = " + std::to_string(*r.exact_value) + " (exact)\n";
  } else {
    j["value"] = nullptr;
    text = mode + "(" + groupSpec + ") in [" + std::to_string(r.lower_bound) + ", " +
           std::to_string(r.upper_bound) + "] (not exact)\n";
  }
  j["lower_bound"] = r.lower_bound;
  j["upper_bound"] = r.upper_bound;
  if (r.witness) {
    j["witness"] = json{{"u", r.witness->u_desc},
                        {"v", r.witness->v_desc},
                        {"certified", r.witness->certified}};
    text += "upper bound witness: (" + r.witness->u_desc + ", " + r.witness->v_desc + ")\n";
  }
  json unresolved = json::array();
  for (size_t i = 0; i < r.unresolved.size(); ++i) {
    const PairRecord& p = r.unresolved[i];
    if (i < 16)
      unresolved.push_back(json{{"u", p.u_desc},
                                {"v", p.v_desc},
                                {"possible_from", p.possible_from},
                                {"certified", p.certified},
                                {"undecided_min_poly", polyToJson(p.undecided_min_poly)}});
  }
  j["unresolved_count"] = r.unresolved.size();
  j["unresolved_sample"] = unresolved;
  if (!r.unresolved.empty()) {
    text += "unresolved pairs: " + std::to_string(r.unresolved.size()) +
            " (first obstruction minimal polynomial: " +
            poly::toString(r.unresolved.front().undecided_min_poly) + ")\n";
  }
  emit(opt, j, text);
  return r.exact_value ? kExitOk : kExitUnknown;
}

int cmdManyFP(const Options& opt, const std::string& groupSpec, const std::string& variant,
              const std::string& xStr, const std::string& hStr, const std::string& kStr,
              const std::string& Hgens, const std::string& Kgens) {
  FiniteGroup G = FiniteGroup::fromSpec(groupSpec);
  FreePointKB kb = loadKB(opt);
  int x = G.parseElement(xStr);
  int h = G.parseElement(hStr);
  int k = kStr.empty() ? h : G.parseElement(kStr);
  Subgroup H = Hgens.empty() ? G.cyclicSubgroup(h) : parseSubgroup(G, Hgens);
  Subgroup K = Kgens.empty() ? (Hgens.empty() && kStr.empty() ? H : G.cyclicSubgroup(k))
                             : parseSubgroup(G, Kgens);
  ManyFPVariant var =
      variant == "beta-gamma" ? ManyFPVariant::BetaGamma : ManyFPVariant::BetaBeta;
  auto [u, v] = manyfpPair(G, var, x, h, H, k, K);
  bool salwa = salwaCheck(u, v);
  Verdict verdict = pairVerdict(u, v, kb);
  json j{{"group", groupSpec},
         {"variant", variant},
         {"u", u.descriptor.describe(G)},
         {"v", v.descriptor.describe(G)},
         {"salwa_check", salwa},
         {"verdict", verdictName(verdict.kind)}};
  std::string text = "u = " + u.descriptor.describe(G) + "\nv = " + v.descriptor.describe(G) +
                     "\ntrace criterion |T((u-1)(v-1))| >= 2: " + (salwa ? "holds" : "fails") +
                     "\nverdict: " + verdictName(verdict.kind) + "\n";
  emit(opt, j, text);
  return verdict.kind == VerdictKind::Unknown ? kExitUnknown : kExitOk;
}

int cmdStauA5(const Options& opt) {
  A5Report rep = a5CaseStudy();
  json steps = json::array();
  std::string text = "A5 case study (Z A5, a = (1,2)(3,4), b = (1,3,5), c = ba)\n";
  for (const A5Step& s : rep.steps) {
    steps.push_back(json{{"check", s.description}, {"ok", s.ok}});
    text += std::string("  [") + (s.ok ? "ok" : "FAIL") + "] " + s.description + "\n";
  }
  json conds = json::array();
  for (const StauCondition& c : rep.stau.conditions)
    conds.push_back(json{{"name", c.name}, {"trivial", c.trivial}});
  json j{{"case", "a5"},
         {"steps", steps},
         {"intersections", conds},
         {"max_modulus_class", rep.max_class},
         {"pass", rep.pass},
         {"conclusion", rep.conclusion}};
  text += "result: " + std::string(rep.pass ? "pass" : "fail") + "\n" + rep.conclusion + "\n";
  emit(opt, j, text);
  return rep.pass ? kExitOk : kExitUnknown;
}

int cmdBassEval(const Options& opt, unsigned long d, unsigned long k, unsigned long m,
                unsigned long jj) {
  Cyclotomic val = bassAtRoot(k, m, d, jj);
  json coeffs = json::array();
  for (const mpq_class& c : val.coeffs()) coeffs.push_back(c.get_str());
  json j{{"d", d}, {"k", k}, {"m", m}, {"j", jj},
         {"conductor", val.conductor()}, {"coefficients", coeffs},
         {"value", val.toString()}};
  emit(opt, j,
       "u_{" + std::to_string(k) + "," + std::to_string(m) + "} at zeta_" + std::to_string(d) +
           "^" + std::to_string(jj) + " = " + val.toString() + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free pairs of bicyclic and Bass cyclic units in integral group rings"};
  app.require_subcommand(1);
  Options opt;
  app.fallthrough();  // allow the global flags after a subcommand name
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--kb", opt.kb_path, "Free-point knowledge-base file (or env ZGFREE_KB)");

  std::string groupSpec, type = "beta", uDesc, vDesc, mode = "M";
  std::string variant = "beta-gamma", xStr, hStr, kStr, Hgens, Kgens;
  bool countOnly = false;
  unsigned long powerU = 1, powerV = 1, bassD = 0, bassK = 0, bassM = 0, bassJ = 0;
  unsigned jobs = 1;

  CLI::App* units = app.add_subcommand("units", "Unit enumeration");
  CLI::App* enumerate = units->add_subcommand("enumerate", "Enumerate bicyclic units");
  enumerate->add_option("--group", groupSpec, "Group spec (S4, A5, C7, D12, perm:...)")->required();
  enumerate->add_option("--type", type, "Unit type")->check(CLI::IsMember({"beta", "gamma"}));
  enumerate->add_flag("--count-only", countOnly, "Print only the distinct-unit count (including the trivial unit)");

  CLI::App* pair = app.add_subcommand("pair", "Pair analysis");
  CLI::App* verdict = pair->add_subcommand("verdict", "Free-pair verdict for a pair of units");
  verdict->add_option("--group", groupSpec)->required();
  verdict->add_option("--u", uDesc, "First unit descriptor")->required();
  verdict->add_option("--v", vDesc, "Second unit descriptor")->required();
  verdict->add_option("--power-u", powerU, "Raise u to this power");
  verdict->add_option("--power-v", powerV, "Raise v to this power");
  CLI::App* minpower = pair->add_subcommand("min-power", "Minimal freeing power of a pair");
  minpower->add_option("--group", groupSpec)->required();
  minpower->add_option("--u", uDesc)->required();
  minpower->add_option("--v", vDesc)->required();

  CLI::App* invariant = app.add_subcommand("invariant", "Group invariant M(G) or m(G)");
  invariant->add_option("--group", groupSpec)->required();
  invariant->add_option("--mode", mode, "M = all bicyclic pairs, m = same-type pairs")
      ->check(CLI::IsMember({"M", "m"}))->required();
  invariant->add_option("--jobs", jobs, "Worker threads for the pair sweep");

  CLI::App* manyfp = app.add_subcommand("manyfp", "Guaranteed-free pair construction");
  manyfp->set_help_flag("--help", "Print help");  // frees -h/--h for the element option
  manyfp->add_option("--group", groupSpec)->required();
  manyfp->add_option("--variant", variant)->check(CLI::IsMember({"beta-gamma", "beta-beta"}));
  manyfp->add_option("--x", xStr, "Element x in cycle notation")->required();
  manyfp->add_option("--h", hStr, "Element h in cycle notation")->required();
  manyfp->add_option("--k", kStr, "Element k in cycle notation (default: h)");
  manyfp->add_option("--H", Hgens, "Generators of H (default: <h>)");
  manyfp->add_option("--K", Kgens, "Generators of K (default: H or <k>)");

  CLI::App* stau = app.add_subcommand("stau", "Ping-pong hypothesis checks");
  CLI::App* a5 = stau->add_subcommand("a5", "Run the Z A5 case study");
  (void)a5;

  CLI::App* bass = app.add_subcommand("bass", "Bass unit evaluation");
  CLI::App* bassEval = bass->add_subcommand("eval", "Evaluate u_{k,m} at a d-th root of unity");
  bassEval->add_option("--d", bassD, "Order of the root of unity")->required();
  bassEval->add_option("--k", bassK)->required();
  bassEval->add_option("--m", bassM)->required();
  bassEval->add_option("--j", bassJ, "Exponent of the root: evaluate at zeta_d^j")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (enumerate->parsed()) return cmdEnumerate(opt, groupSpec, type, countOnly);
    if (verdict->parsed()) return cmdVerdict(opt, groupSpec, uDesc, vDesc, powerU, powerV);
    if (minpower->parsed()) return cmdMinPower(opt, groupSpec, uDesc, vDesc);
    if (invariant->parsed()) return cmdInvariant(opt, groupSpec, mode, jobs);
    if (manyfp->parsed()) return cmdManyFP(opt, groupSpec, variant, xStr, hStr, kStr, Hgens, Kgens);
    if (a5->parsed()) return cmdStauA5(opt);
    if (bassEval->parsed()) return cmdBassEval(opt, bassD, bassK, bassM, bassJ);
    std::cerr << "error: missing subcommand\n";
    return kExitUsage;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
}
