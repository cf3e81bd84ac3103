#include "primform/job.hpp"

#include <functional>
#include <memory>
#include <set>

#include "primform/errors.hpp"
#include "primform/moduli.hpp"
#include "primform/parse.hpp"
#include "primform/primitive.hpp"
#include "primform/residue_series.hpp"
#include "primform/singularity.hpp"

namespace primform {

namespace {

[[noreturn]] void bad_job(const std::string& what) { throw Error(ErrorCode::InvalidJob, "cli", what); }

Rat rat_of(const Json& v, const std::string& field) {
  if (v.is_string()) return Rat::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long>());
  bad_job("field '" + field + "' must be a rational string \"p/q\"");
}

std::string key_of(const std::pair<int, int>& ij) { return std::to_string(ij.first) + "," + std::to_string(ij.second); }

std::map<std::pair<int, int>, Rat> pair_map(const Json& obj, const std::string& field) {
  if (!obj.is_object()) bad_job("field '" + field + "' must be an object");
  std::map<std::pair<int, int>, Rat> out;
  for (const auto& [k, v] : obj.items()) out[parse_index_pair(k)] = rat_of(v, field);
  return out;
}

Json pair_map_json(const std::map<std::pair<int, int>, Rat>& m) {
  Json out = Json::object();
  for (const auto& [ij, v] : m) out[key_of(ij)] = v.str();
  return out;
}

const std::set<std::string> kCommands{"analyze", "moduli", "primitive-form", "pairing", "verify"};
const std::set<std::string> kFields{"command", "mode",    "variables", "weights",        "polynomial",
                                    "q",       "order",   "c",         "mask",           "prune",
                                    "deformation", "representative", "pairs", "pairing_constants"};

struct Context {
  std::shared_ptr<SingularityData> base;
  std::vector<std::string> basis_names;
};

Context build_base(const JobSpec& job) {
  Context ctx;
  if (job.mode == "laurent_p1") {
    if (!job.q) bad_job("laurent_p1 mode needs q");
    ctx.base = std::make_shared<SingularityData>(mirror_p1(*job.q));
  } else {
    if (job.variables.empty()) bad_job("no variables declared");
    if (job.polynomial.empty()) bad_job("no polynomial given");
    VarsPtr vars = VariableSet::make(job.variables);
    MPoly f = parse_polynomial(job.polynomial, vars);
    WeightSystem w = job.weights.empty() ? infer_weights(f) : WeightSystem(job.weights);
    if (w.size() != vars->size()) bad_job("one weight per variable expected");
    ctx.base = std::make_shared<SingularityData>(analyze_singularity(f, w));
  }
  for (const auto& b : ctx.base->basis) ctx.basis_names.push_back(b.str());
  return ctx;
}

Json string_list(const std::vector<Rat>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(x.str());
  return out;
}

Json matrix_json(const QMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(row);
  }
  return out;
}

Json tvalue_json(const TLaurentValue& v) {
  Json out = Json::array();
  for (const auto& [k, c] : v) out.push_back({{"t_power", k}, {"coefficient", c.str()}});
  return out;
}

// Laurent-mode expressions may use the symbol q.
MPoly parse_p1_expression(const std::string& text, const SingularityData& base) {
  VarsPtr zq = VariableSet::make({"z", "q"}, {true, false});
  MPoly p = parse_polynomial(text, zq);
  MPoly out(base.f.vars());
  for (const auto& [e, c] : p.terms()) out.add_term({e[0]}, c * pow(base.q, e[1]));
  return out;
}

QMatrix p1_residue_matrix(const SingularityData& base) {
  auto ctx = UnivariateContext::mirror_p1(base.q);
  QMatrix M(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      auto v = pairing_univariate(base.basis[i], base.basis[j], ctx, 0);
      auto it = v.find(0);
      if (it != v.end()) M(i, j) = it->second;
    }
  return M;
}

QMatrix residue_matrix(const SingularityData& base) {
  return base.mode == SingularityMode::LaurentP1 ? p1_residue_matrix(base) : residue_pairing_matrix(base);
}

Json records_json(const std::vector<PrimitiveRecord>& recs) {
  Json out = Json::array();
  for (const auto& r : recs)
    out.push_back({{"t_power", r.t_power},
                   {"basis_index", r.basis_index},
                   {"u_monomial", r.u_monomial},
                   {"coefficient", r.coefficient.str()}});
  return out;
}

Json lattice_records(const RLattice& v) {
  Json out = Json::array();
  for (const auto& [k, row] : v.slices)
    for (std::size_t j = 0; j < row.size(); ++j)
      for (const auto& [key, c] : row[j].sorted_terms())
        out.push_back({{"t_power", k},
                       {"basis_index", static_cast<int>(j) + 1},
                       {"u_monomial", v.ring->monomial_str(key)},
                       {"coefficient", c.str()}});
  return out;
}

UnfoldingData build_job_unfolding(const JobSpec& job, const Context& ctx) {
  CoefficientOverrides overrides;
  if (job.deformation == "exponential") {
    if (job.mode != "laurent_p1") bad_job("the exponential deformation needs laurent_p1 mode");
    overrides = exponential_override(job.order);
  } else if (job.deformation != "linear") {
    bad_job("unknown deformation '" + job.deformation + "'");
  }
  return build_unfolding(ctx.base, job.order, job.mask, overrides);
}

Json parameters_json(const UnfoldingData& unf) {
  Json out = Json::array();
  const std::size_t n = unf.active.size();
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<int> e(n);
    e[v] = 1;
    out.push_back({{"name", unf.ring->names()[v]},
                   {"basis_index", unf.active[v] + 1},
                   {"degree", unf.ring->weight_rat(unf.ring->key(e)).str()}});
  }
  return out;
}

std::pair<Json, std::string> cmd_analyze(const JobSpec&, const Context& ctx) {
  const SingularityData& b = *ctx.base;
  Json r;
  r["mode"] = b.mode == SingularityMode::LaurentP1 ? "laurent_p1" : "polynomial";
  r["variables"] = b.f.vars()->names;
  if (b.weights) r["weights"] = string_list(b.weights->weights());
  r["polynomial"] = b.f.str();
  r["mu"] = b.mu;
  r["s"] = b.s.str();
  r["basis"] = ctx.basis_names;
  r["degrees"] = string_list(b.degrees);
  std::vector<Rat> udeg;
  for (const auto& d : b.degrees) udeg.push_back(Rat(1) - d);
  r["parameter_degrees"] = string_list(udeg);
  r["orthogonal"] = b.orthogonal;
  r["residue_matrix"] = matrix_json(residue_matrix(b));
  r["D"] = dimension_D(b.degrees);
  std::string pretty = "mu = " + std::to_string(b.mu) + ", s = " + b.s.str() + ", D = " +
                       std::to_string(dimension_D(b.degrees)) + "\nbasis:";
  for (int j = 0; j < b.mu; ++j) pretty += " " + ctx.basis_names[j] + " [" + b.degrees[j].str() + "]";
  return {r, pretty};
}

std::pair<Json, std::string> cmd_moduli(const JobSpec& job, const Context& ctx) {
  const SingularityData& b = *ctx.base;
  ModuliReport rep = y_constraints(b.degrees, b.s, residue_matrix(b), job.pairing_constants);
  Json r;
  r["D"] = rep.D;
  Json steps = Json::array();
  for (const auto& row : rep.steps) steps.push_back(string_list(row));
  r["steps"] = steps;
  Json fr = Json::array(), det = Json::array(), av = Json::array();
  std::string pretty = "D = " + std::to_string(rep.D);
  for (const auto& p : rep.parameters) {
    const std::string name = "c_" + std::to_string(p.i) + "_" + std::to_string(p.j);
    if (p.kind == ParameterKind::Free) {
      fr.push_back({p.i, p.j});
      pretty += "\n" + name + " free";
    } else if (p.kind == ParameterKind::AutoVanishing) {
      av.push_back({p.i, p.j});
      pretty += "\n" + name + " = 0";
    } else {
      det.push_back({{"i", p.i}, {"j", p.j}, {"value", p.value.str()}, {"constants", p.constants}});
      pretty += "\n" + name + " = " + p.value.str();
    }
  }
  r["free"] = fr;
  r["determined"] = det;
  r["auto_vanishing"] = av;
  r["unknown_constants"] = std::vector<std::string>(rep.unknown_constants.begin(), rep.unknown_constants.end());
  return {r, pretty};
}

std::pair<Json, std::string> cmd_primitive(const JobSpec& job, const Context& ctx) {
  UnfoldingData unf = build_job_unfolding(job, ctx);
  Reducer red(*ctx.base);
  PrimitiveOptions opts;
  opts.prune = job.prune;
  PrimitiveFormExpansion z = primitive_form(unf, red, job.c, opts);
  Json r;
  r["order"] = job.order;
  r["a"] = z.a;
  r["basis_reference"] = job.c.empty() ? "phi" : "Phi(c)";
  r["c"] = pair_map_json(job.c);
  r["basis"] = ctx.basis_names;
  r["parameters"] = parameters_json(unf);
  r["records"] = records_json(z.records());
  std::vector<std::string> names = ctx.basis_names;
  if (!job.c.empty())
    for (int j = 0; j < ctx.base->mu; ++j) names[j] = "Phi" + std::to_string(j + 1);
  return {r, "zeta_+ = " + z.pretty(names)};
}

std::pair<Json, std::string> cmd_verify(const JobSpec& job, const Context& ctx) {
  if (!job.representative) bad_job("verify needs a representative");
  UnfoldingData unf = build_job_unfolding(job, ctx);
  Reducer red(*ctx.base);
  Representative rep = parse_representative(*job.representative, unf);
  PrimitiveOptions opts;
  opts.prune = job.prune;
  VerifyResult v = verify_primitive(rep, unf, red, job.c, opts);
  Json r;
  r["order"] = job.order;
  r["pass"] = v.pass;
  r["defect"] = lattice_records(v.defect);
  return {r, v.pass ? "primitive mod m^" + std::to_string(job.order + 1) : "not primitive: nonzero defect"};
}

std::pair<Json, std::string> cmd_pairing(const JobSpec& job, const Context& ctx) {
  const SingularityData& b = *ctx.base;
  UnivariateContext uc;
  Json r;
  std::function<MPoly(const std::string&)> parse;
  if (b.mode == SingularityMode::LaurentP1) {
    uc = UnivariateContext::mirror_p1(b.q);
    r["context"] = {{"kind", "mirror_p1"}, {"q", b.q.str()}};
    parse = [&](const std::string& s) { return parse_p1_expression(s, b); };
  } else {
    if (b.f.nvars() != 1 || b.f.size() != 1)
      throw Error(ErrorCode::UnsupportedContext, "residue_series", "pairings need f = c*z^(m+1) in one variable");
    const auto& [e, lead] = *b.f.terms().begin();
    uc = UnivariateContext::am_scaled(e[0] - 1, lead);
    r["context"] = {{"kind", "A_m"}, {"m", e[0] - 1}};
    parse = [&](const std::string& s) { return parse_polynomial(s, b.f.vars()); };
  }
  r["t_order"] = job.order;
  Json vals = Json::array();
  std::string pretty;
  for (const auto& [a, bb] : job.pairs) {
    TLaurentValue v = pairing_univariate(parse(a), parse(bb), uc, job.order);
    vals.push_back({{"a", a}, {"b", bb}, {"value", tvalue_json(v)}});
    if (!pretty.empty()) pretty += "\n";
    pretty += "K(" + a + ", " + bb + ") = " + to_string(v);
  }
  r["values"] = vals;
  return {r, pretty};
}

}  // namespace

std::pair<int, int> parse_index_pair(const std::string& s) {
  auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument(s);
    std::size_t p1 = 0, p2 = 0;
    std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    int i = std::stoi(a, &p1), j = std::stoi(b, &p2);
    if (p1 != a.size() || p2 != b.size()) throw std::invalid_argument(s);
    return {i, j};
  } catch (const std::logic_error&) {
    bad_job("expected an index pair \"i,j\", got '" + s + "'");
  }
}

JobSpec JobSpec::from_json(const Json& j) {
  if (!j.is_object()) bad_job("job must be an object");
  for (const auto& [k, v] : j.items())
    if (!kFields.count(k)) bad_job("unknown field '" + k + "'");
  JobSpec s;
  try {
    if (j.contains("command")) s.command = j.at("command").get<std::string>();
    if (j.contains("mode")) s.mode = j.at("mode").get<std::string>();
    if (j.contains("variables")) s.variables = j.at("variables").get<std::vector<std::string>>();
    if (j.contains("weights"))
      for (const auto& w : j.at("weights")) s.weights.push_back(rat_of(w, "weights"));
    if (j.contains("polynomial")) s.polynomial = j.at("polynomial").get<std::string>();
    if (j.contains("q")) s.q = rat_of(j.at("q"), "q");
    if (j.contains("order")) s.order = j.at("order").get<int>();
    if (j.contains("c")) s.c = pair_map(j.at("c"), "c");
    if (j.contains("mask")) s.mask = j.at("mask").get<std::vector<int>>();
    if (j.contains("prune")) s.prune = j.at("prune").get<bool>();
    if (j.contains("deformation")) s.deformation = j.at("deformation").get<std::string>();
    if (j.contains("representative")) s.representative = j.at("representative").get<std::string>();
    if (j.contains("pairs"))
      for (const auto& p : j.at("pairs")) {
        auto v = p.get<std::vector<std::string>>();
        if (v.size() != 2) bad_job("each pair needs two expressions");
        s.pairs.emplace_back(v[0], v[1]);
      }
    if (j.contains("pairing_constants")) s.pairing_constants = pair_map(j.at("pairing_constants"), "pairing_constants");
  } catch (const nlohmann::json::exception& e) {
    bad_job(e.what());
  }
  if (!kCommands.count(s.command)) bad_job("unknown command '" + s.command + "'");
  if (s.mode != "polynomial" && s.mode != "laurent_p1") bad_job("unknown mode '" + s.mode + "'");
  if (s.order < 0) bad_job("order must be nonnegative");
  return s;
}

Json JobSpec::to_json() const {
  Json j;
  j["command"] = command;
  j["mode"] = mode;
  j["variables"] = variables;
  j["weights"] = string_list(weights);
  j["polynomial"] = polynomial;
  if (q) j["q"] = q->str();
  j["order"] = order;
  j["c"] = pair_map_json(c);
  j["mask"] = mask;
  j["prune"] = prune;
  j["deformation"] = deformation;
  if (representative) j["representative"] = *representative;
  Json ps = Json::array();
  for (const auto& [a, b] : pairs) ps.push_back({a, b});
  j["pairs"] = ps;
  j["pairing_constants"] = pair_map_json(pairing_constants);
  return j;
}

bool operator==(const JobSpec& a, const JobSpec& b) {
  return a.command == b.command && a.mode == b.mode && a.variables == b.variables && a.weights == b.weights &&
         a.polynomial == b.polynomial && a.q == b.q && a.order == b.order && a.c == b.c && a.mask == b.mask &&
         a.prune == b.prune && a.deformation == b.deformation && a.representative == b.representative &&
         a.pairs == b.pairs && a.pairing_constants == b.pairing_constants;
}

Json run(const JobSpec& job) {
  Json doc;
  doc["schema"] = kSchema;
  doc["command"] = job.command;
  try {
    if (!kCommands.count(job.command)) bad_job("unknown command '" + job.command + "'");
    Context ctx = build_base(job);
    std::pair<Json, std::string> out;
    if (job.command == "analyze") out = cmd_analyze(job, ctx);
    else if (job.command == "moduli") out = cmd_moduli(job, ctx);
    else if (job.command == "primitive-form") out = cmd_primitive(job, ctx);
    else if (job.command == "verify") out = cmd_verify(job, ctx);
    else if (job.command == "pairing") out = cmd_pairing(job, ctx);
    else bad_job("unknown command '" + job.command + "'");
    doc["result"] = std::move(out.first);
    doc["pretty"] = std::move(out.second);
  } catch (const Error& e) {
    doc["error"] = {{"code", std::string(to_string(e.code()))}, {"module", e.module()}, {"message", e.what()}};
  }
  return doc;
}

}  // namespace primform
