#include "mpvc/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace mpvc {

NLOHMANN_JSON_SERIALIZE_ENUM(CqName, {{CqName::Licq, "MPVC-LICQ"},
                                      {CqName::Mfcq, "MPVC-MFCQ"},
                                      {CqName::Gmfcq, "MPVC-GMFCQ"},
                                      {CqName::Pseudonormality, "MPVC-generalized-pseudonormality"},
                                      {CqName::Quasinormality, "MPVC-generalized-quasinormality"},
                                      {CqName::AcqMpvc, "MPVC-ACQ"},
                                      {CqName::AcqProduct, "ACQ-product"}})

NLOHMANN_JSON_SERIALIZE_ENUM(CqStatus, {{CqStatus::Certified, "CERTIFIED"},
                                        {CqStatus::Refuted, "REFUTED"},
                                        {CqStatus::NoViolationFound, "NO-VIOLATION-FOUND"}})

NLOHMANN_JSON_SERIALIZE_ENUM(ProbeVerdict, {{ProbeVerdict::Yes, "YES"},
                                            {ProbeVerdict::No, "NO"},
                                            {ProbeVerdict::Inconclusive, "INCONCLUSIVE"}})

NLOHMANN_JSON_SERIALIZE_ENUM(AcqVerdict, {{AcqVerdict::Corroborated, "CORROBORATED"},
                                          {AcqVerdict::Refuted, "REFUTED"}})

NLOHMANN_JSON_SERIALIZE_ENUM(BiactiveBranch, {{BiactiveBranch::HZero, "eta_H=0"},
                                              {BiactiveBranch::GZero, "eta_G=0"}})

namespace {

// JSON has no infinities; they travel as strings.
json num(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double get_num(const json& j) {
  if (j.is_number()) return j.get<double>();
  const auto s = j.get<std::string>();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return std::numeric_limits<double>::quiet_NaN();
}

template <class T>
void put_opt(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
void get_opt(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
  else v.reset();
}

}  // namespace

void to_json(json& j, const IndexSets& s) {
  j = json{{"I_g", s.active_g},       {"I_+", s.plus},        {"I_0", s.zero},
           {"I_+0", s.plus_zero},     {"I_+-", s.plus_minus}, {"I_0+", s.zero_plus},
           {"I_0-", s.zero_minus},    {"I_00", s.zero_zero},  {"tol_active", s.tol_active}};
}

void from_json(const json& j, IndexSets& s) {
  j.at("I_g").get_to(s.active_g);
  j.at("I_+").get_to(s.plus);
  j.at("I_0").get_to(s.zero);
  j.at("I_+0").get_to(s.plus_zero);
  j.at("I_+-").get_to(s.plus_minus);
  j.at("I_0+").get_to(s.zero_plus);
  j.at("I_0-").get_to(s.zero_minus);
  j.at("I_00").get_to(s.zero_zero);
  j.at("tol_active").get_to(s.tol_active);
}

void to_json(json& j, const MultiplierVector& m) {
  j = json{{"lambda", m.lambda}, {"mu", m.mu}, {"eta_H", m.eta_H}, {"eta_G", m.eta_G}};
  json br = json::array();
  for (const auto& [i, b] : m.branch) br.push_back({{"index", i}, {"branch", b}});
  j["branch"] = std::move(br);
}

void from_json(const json& j, MultiplierVector& m) {
  j.at("lambda").get_to(m.lambda);
  j.at("mu").get_to(m.mu);
  j.at("eta_H").get_to(m.eta_H);
  j.at("eta_G").get_to(m.eta_G);
  m.branch.clear();
  for (const auto& e : j.at("branch"))
    m.branch[e.at("index").get<std::size_t>()] = e.at("branch").get<BiactiveBranch>();
}

namespace {

json certificate_json(const Certificate& c) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return json{{"kind", "none"}};
        } else if constexpr (std::is_same_v<T, RankCertificate>) {
          return json{{"kind", "rank"},
                      {"rows", v.rows},
                      {"rank", v.rank},
                      {"gradients", v.gradients},
                      {"stage", v.stage}};
        } else if constexpr (std::is_same_v<T, DirectionCertificate>) {
          return json{{"kind", "direction"}, {"d", v.d}, {"slack", num(v.slack)}};
        } else if constexpr (std::is_same_v<T, MultiplierVector>) {
          return json{{"kind", "multiplier"}, {"multiplier", v}};
        } else if constexpr (std::is_same_v<T, SequenceWitness>) {
          return json{{"kind", "sequence"},
                      {"multiplier", v.multiplier},
                      {"direction", v.direction},
                      {"ts", v.ts},
                      {"values", v.values}};
        } else {
          return json{{"kind", "downgrade"}, {"from", v.from}};
        }
      },
      c);
}

Certificate certificate_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "none") return std::monostate{};
  if (kind == "rank") {
    RankCertificate r;
    j.at("rows").get_to(r.rows);
    j.at("rank").get_to(r.rank);
    j.at("gradients").get_to(r.gradients);
    j.at("stage").get_to(r.stage);
    return r;
  }
  if (kind == "direction") return DirectionCertificate{j.at("d").get<Point>(), get_num(j.at("slack"))};
  if (kind == "multiplier") return j.at("multiplier").get<MultiplierVector>();
  if (kind == "sequence") {
    SequenceWitness w;
    j.at("multiplier").get_to(w.multiplier);
    j.at("direction").get_to(w.direction);
    j.at("ts").get_to(w.ts);
    j.at("values").get_to(w.values);
    return w;
  }
  if (kind == "downgrade") return DowngradeCertificate{j.at("from").get<CqName>()};
  throw InvalidArgument("unknown certificate kind '" + kind + "'");
}

}  // namespace

void to_json(json& j, const CqVerdict& v) {
  j = json{{"name", v.name},
           {"status", v.status},
           {"certificate", certificate_json(v.certificate)},
           {"notes", v.notes}};
  if (v.lp_value) j["lp_value"] = *v.lp_value;
}

void from_json(const json& j, CqVerdict& v) {
  j.at("name").get_to(v.name);
  j.at("status").get_to(v.status);
  v.certificate = certificate_from(j.at("certificate"));
  j.at("notes").get_to(v.notes);
  if (j.contains("lp_value")) v.lp_value = j.at("lp_value").get<double>();
}

void to_json(json& j, const ChainViolation& c) {
  j = json{{"stronger", c.stronger}, {"weaker", c.weaker}};
}

void from_json(const json& j, ChainViolation& c) {
  j.at("stronger").get_to(c.stronger);
  j.at("weaker").get_to(c.weaker);
}

void to_json(json& j, const ProbeSample& s) {
  j = json{{"t", s.t},
           {"target", s.target},
           {"projected", s.projected},
           {"correction", num(s.correction)},
           {"resolved", s.resolved}};
}

void from_json(const json& j, ProbeSample& s) {
  j.at("t").get_to(s.t);
  j.at("target").get_to(s.target);
  j.at("projected").get_to(s.projected);
  s.correction = get_num(j.at("correction"));
  j.at("resolved").get_to(s.resolved);
}

void to_json(json& j, const ConeMembershipReport& c) {
  j = json{{"d", c.d},
           {"in_L_mpvc", c.in_L_mpvc},
           {"in_L_product", c.in_L_product},
           {"in_T_numeric", c.in_T_numeric},
           {"probed", c.probed},
           {"arc", c.arc}};
}

void from_json(const json& j, ConeMembershipReport& c) {
  j.at("d").get_to(c.d);
  j.at("in_L_mpvc").get_to(c.in_L_mpvc);
  j.at("in_L_product").get_to(c.in_L_product);
  j.at("in_T_numeric").get_to(c.in_T_numeric);
  j.at("probed").get_to(c.probed);
  j.at("arc").get_to(c.arc);
}

void to_json(json& j, const AcqProbeReport& r) {
  j = json{{"acq_mpvc", r.acq_mpvc},
           {"acq_product", r.acq_product},
           {"mpvc_counterexamples", r.mpvc_counterexamples},
           {"product_counterexamples", r.product_counterexamples},
           {"directions", r.directions}};
}

void from_json(const json& j, AcqProbeReport& r) {
  j.at("acq_mpvc").get_to(r.acq_mpvc);
  j.at("acq_product").get_to(r.acq_product);
  j.at("mpvc_counterexamples").get_to(r.mpvc_counterexamples);
  j.at("product_counterexamples").get_to(r.product_counterexamples);
  j.at("directions").get_to(r.directions);
}

void to_json(json& j, const CqReport& r) {
  j = json{{"point", r.point},
           {"index_sets", r.sets},
           {"verdicts", r.verdicts},
           {"chain_violations", r.chain},
           {"chain_consistent", r.chain.empty()},
           {"acq", r.acq},
           {"discrepancies", r.discrepancies}};
}

void from_json(const json& j, CqReport& r) {
  j.at("point").get_to(r.point);
  j.at("index_sets").get_to(r.sets);
  j.at("verdicts").get_to(r.verdicts);
  j.at("chain_violations").get_to(r.chain);
  j.at("acq").get_to(r.acq);
  j.at("discrepancies").get_to(r.discrepancies);
}

void to_json(json& j, const ErrorBoundScan& s) {
  json samples = json::array();
  for (const auto& e : s.samples) {
    json k{{"x", e.x}, {"dist", num(e.dist)}, {"residual", num(e.residual)}};
    k["ratio"] = e.ratio ? num(*e.ratio) : json(nullptr);
    samples.push_back(std::move(k));
  }
  j = json{{"center", s.center},
           {"radius", s.radius},
           {"sample_count", s.sample_count},
           {"seed", s.seed},
           {"c_hat", num(s.c_hat)},
           {"unbounded_flag", s.unbounded_flag},
           {"approximate", s.approximate},
           {"grid_step", s.grid_step},
           {"error_bar", num(s.error_bar)},
           {"samples", std::move(samples)}};
}

void from_json(const json& j, ErrorBoundScan& s) {
  j.at("center").get_to(s.center);
  j.at("radius").get_to(s.radius);
  j.at("sample_count").get_to(s.sample_count);
  j.at("seed").get_to(s.seed);
  s.c_hat = get_num(j.at("c_hat"));
  j.at("unbounded_flag").get_to(s.unbounded_flag);
  j.at("approximate").get_to(s.approximate);
  j.at("grid_step").get_to(s.grid_step);
  s.error_bar = get_num(j.at("error_bar"));
  s.samples.clear();
  for (const auto& k : j.at("samples")) {
    ErrorBoundSample e;
    k.at("x").get_to(e.x);
    e.dist = get_num(k.at("dist"));
    e.residual = get_num(k.at("residual"));
    if (!k.at("ratio").is_null()) e.ratio = get_num(k.at("ratio"));
    s.samples.push_back(std::move(e));
  }
}

void to_json(json& j, const PenaltyProfile& p) {
  json rows = json::array();
  for (const auto& r : p.rows)
    rows.push_back({{"alpha", r.alpha},
                    {"minimizer", r.minimizer},
                    {"value", num(r.value)},
                    {"distance", num(r.distance)},
                    {"residual", num(r.residual)}});
  j = json{{"center", p.center}, {"exact_tol", p.exact_tol}, {"rows", std::move(rows)}};
  j["alpha_bar"] = p.alpha_bar ? json(*p.alpha_bar) : json(nullptr);
}

void from_json(const json& j, PenaltyProfile& p) {
  j.at("center").get_to(p.center);
  j.at("exact_tol").get_to(p.exact_tol);
  get_opt(j, "alpha_bar", p.alpha_bar);
  p.rows.clear();
  for (const auto& k : j.at("rows")) {
    PenaltyRow r;
    k.at("alpha").get_to(r.alpha);
    k.at("minimizer").get_to(r.minimizer);
    r.value = get_num(k.at("value"));
    r.distance = get_num(k.at("distance"));
    r.residual = get_num(k.at("residual"));
    p.rows.push_back(std::move(r));
  }
}

void to_json(json& j, const SolveResult& r) {
  j = json{{"point", r.point},           {"value", num(r.value)},
           {"residual", num(r.residual)}, {"alpha", r.alpha},
           {"iterations", r.iterations},  {"converged", r.converged}};
}

void from_json(const json& j, SolveResult& r) {
  j.at("point").get_to(r.point);
  r.value = get_num(j.at("value"));
  r.residual = get_num(j.at("residual"));
  j.at("alpha").get_to(r.alpha);
  j.at("iterations").get_to(r.iterations);
  j.at("converged").get_to(r.converged);
}

void to_json(json& j, const AuditReport& r) {
  json inst = json::array();
  for (const auto& i : r.instances) {
    json st = json::object();
    for (const auto& [n, s] : i.statuses) st[to_string(n)] = s;
    inst.push_back({{"index", i.index},
                    {"name", i.name},
                    {"statuses", std::move(st)},
                    {"chain_violations", i.chain},
                    {"discrepancies", i.discrepancies},
                    {"biactive", i.biactive}});
  }
  j = json{{"seed", r.seed},
           {"chain_violations", r.chain_violations},
           {"discrepancies", r.discrepancies},
           {"instances", std::move(inst)}};
}

void from_json(const json& j, AuditReport& r) {
  j.at("seed").get_to(r.seed);
  j.at("chain_violations").get_to(r.chain_violations);
  j.at("discrepancies").get_to(r.discrepancies);
  r.instances.clear();
  static const CqName kAll[] = {CqName::Licq,           CqName::Mfcq,    CqName::Gmfcq,
                                CqName::Pseudonormality, CqName::Quasinormality,
                                CqName::AcqMpvc,        CqName::AcqProduct};
  for (const auto& k : j.at("instances")) {
    AuditInstance i;
    k.at("index").get_to(i.index);
    k.at("name").get_to(i.name);
    for (CqName n : kAll)
      if (k.at("statuses").contains(to_string(n)))
        i.statuses.emplace_back(n, k.at("statuses").at(to_string(n)).get<CqStatus>());
    k.at("chain_violations").get_to(i.chain);
    k.at("discrepancies").get_to(i.discrepancies);
    k.at("biactive").get_to(i.biactive);
    r.instances.push_back(std::move(i));
  }
}

void to_json(json& j, const Report& r) {
  j = json{{"schema_version", kSchemaVersion},
           {"tool_version", r.tool_version},
           {"command", r.command},
           {"problem", r.problem},
           {"variables", r.variables},
           {"point", r.point},
           {"seed", r.seed},
           {"timestamp", r.timestamp}};
  put_opt(j, "analysis", r.analysis);
  put_opt(j, "acq", r.acq);
  put_opt(j, "penalty_profile", r.penalty);
  put_opt(j, "error_bound_scan", r.scan);
  put_opt(j, "solve", r.solve);
  put_opt(j, "audit", r.audit);
}

void from_json(const json& j, Report& r) {
  const int version = j.at("schema_version").get<int>();
  if (version != kSchemaVersion)
    throw InvalidArgument("unsupported report schema version " + std::to_string(version));
  j.at("tool_version").get_to(r.tool_version);
  j.at("command").get_to(r.command);
  j.at("problem").get_to(r.problem);
  j.at("variables").get_to(r.variables);
  j.at("point").get_to(r.point);
  j.at("seed").get_to(r.seed);
  j.at("timestamp").get_to(r.timestamp);
  get_opt(j, "analysis", r.analysis);
  get_opt(j, "acq", r.acq);
  get_opt(j, "penalty_profile", r.penalty);
  get_opt(j, "error_bound_scan", r.scan);
  get_opt(j, "solve", r.solve);
  get_opt(j, "audit", r.audit);
}

// ---------------------------------------------------------------------------
// Text

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string fmt_point(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ", " : "") + fmt(p[i]);
  return s + ")";
}

std::string fmt_vec(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
  return s + "]";
}

void render_certificate(std::ostream& os, const Certificate& c) {
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, RankCertificate>) {
          os << "      rank " << v.rank << " of " << v.rows << " gradient rows";
          if (!v.stage.empty()) os << " (failed at " << v.stage << ")";
          os << "\n";
        } else if constexpr (std::is_same_v<T, DirectionCertificate>) {
          os << "      direction " << fmt_point(v.d) << ", slack " << fmt(v.slack) << "\n";
        } else if constexpr (std::is_same_v<T, MultiplierVector>) {
          os << "      multiplier lambda=" << fmt_vec(v.lambda) << " mu=" << fmt_vec(v.mu)
             << " eta_H=" << fmt_vec(v.eta_H) << " eta_G=" << fmt_vec(v.eta_G) << "\n";
        } else if constexpr (std::is_same_v<T, SequenceWitness>) {
          os << "      multiplier lambda=" << fmt_vec(v.multiplier.lambda)
             << " mu=" << fmt_vec(v.multiplier.mu) << " eta_H=" << fmt_vec(v.multiplier.eta_H)
             << " eta_G=" << fmt_vec(v.multiplier.eta_G) << "\n";
          os << "      sequence x + t d, d = " << fmt_point(v.direction) << ", t = " << fmt_vec(v.ts)
             << "\n";
        } else if constexpr (std::is_same_v<T, DowngradeCertificate>) {
          os << "      implied by " << to_string(v.from) << "\n";
        }
      },
      c);
}

void render_analysis(std::ostream& os, const CqReport& a) {
  const auto& s = a.sets;
  os << "Index sets (1-based):\n"
     << "  I_g  = " << format_index_set(s.active_g) << "\n"
     << "  I_+  = " << format_index_set(s.plus) << "\n"
     << "  I_0  = " << format_index_set(s.zero) << "\n"
     << "  I_+0 = " << format_index_set(s.plus_zero) << "\n"
     << "  I_+- = " << format_index_set(s.plus_minus) << "\n"
     << "  I_0+ = " << format_index_set(s.zero_plus) << "\n"
     << "  I_0- = " << format_index_set(s.zero_minus) << "\n"
     << "  I_00 = " << format_index_set(s.zero_zero) << "\n\n";
  os << "Constraint qualifications:\n";
  for (const auto& v : a.verdicts) {
    char line[128];
    std::snprintf(line, sizeof line, "  %-34s %s", to_string(v.name), to_string(v.status));
    os << line;
    if (!v.notes.empty()) os << "  [" << v.notes << "]";
    os << "\n";
    render_certificate(os, v.certificate);
  }
  os << "\nChain consistency: "
     << (a.chain.empty() ? "ok" : std::to_string(a.chain.size()) + " violation(s)") << "\n";
  for (const auto& c : a.chain)
    os << "  " << to_string(c.stronger) << " CERTIFIED but " << to_string(c.weaker) << " REFUTED\n";
  for (const auto& d : a.discrepancies) os << "Discrepancy: " << d << "\n";
}

void render_acq(std::ostream& os, const AcqProbeReport& r) {
  std::size_t in_mpvc = 0, in_prod = 0, probed = 0;
  for (const auto& c : r.directions) {
    in_mpvc += c.in_L_mpvc;
    in_prod += c.in_L_product;
    probed += c.probed;
  }
  os << "ACQ probe: " << r.directions.size() << " directions, " << in_mpvc << " in L_MPVC, "
     << in_prod << " in L_product, " << probed << " probed\n"
     << "  acq_mpvc    " << to_string(r.acq_mpvc) << "\n"
     << "  acq_product " << to_string(r.acq_product) << "\n";
  if (!r.mpvc_counterexamples.empty())
    os << "  first L_MPVC counterexample " << fmt_point(r.mpvc_counterexamples.front()) << "\n";
  if (!r.product_counterexamples.empty())
    os << "  first L_product counterexample " << fmt_point(r.product_counterexamples.front())
       << "\n";
}

}  // namespace

std::string format_index_set(const std::vector<std::size_t>& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? ", " : "") + std::to_string(set[i] + 1);
  return s + "}";
}

std::string render_text(const Report& r) {
  std::ostringstream os;
  os << "mpvc " << r.tool_version << " " << r.command;
  if (!r.problem.empty()) os << " -- problem " << r.problem;
  os << "\n";
  if (!r.point.empty()) {
    os << "Point: ";
    for (std::size_t i = 0; i < r.point.size(); ++i) {
      if (i) os << ", ";
      os << (i < r.variables.size() ? r.variables[i] : "x" + std::to_string(i + 1)) << " = "
         << fmt(r.point[i]);
    }
    os << "\n";
  }
  os << "\n";
  if (r.analysis) {
    render_analysis(os, *r.analysis);
    os << "\n";
    render_acq(os, r.analysis->acq);
  }
  if (r.acq) render_acq(os, *r.acq);
  if (r.penalty) {
    const auto& p = *r.penalty;
    os << "Penalty sweep around " << fmt_point(p.center) << " (exact_tol " << fmt(p.exact_tol)
       << "):\n";
    char line[256];
    std::snprintf(line, sizeof line, "  %-10s %-14s %-14s %-12s %s\n", "alpha", "P_alpha",
                  "distance", "residual", "minimizer");
    os << line;
    for (const auto& row : p.rows) {
      const bool mark = p.alpha_bar && row.alpha == *p.alpha_bar;
      std::snprintf(line, sizeof line, "  %-10s %-14s %-14s %-12s %s%s\n", fmt(row.alpha).c_str(),
                    fmt(row.value).c_str(), fmt(row.distance).c_str(), fmt(row.residual).c_str(),
                    fmt_point(row.minimizer).c_str(), mark ? "  <- stabilized" : "");
      os << line;
    }
    os << "alpha_bar estimate: " << (p.alpha_bar ? fmt(*p.alpha_bar) : "none") << "\n";
  }
  if (r.scan) {
    const auto& s = *r.scan;
    std::size_t ratios = 0;
    for (const auto& e : s.samples) ratios += e.ratio.has_value();
    os << "Error-bound scan: radius " << fmt(s.radius) << ", " << s.sample_count << " samples, "
       << ratios << " ratios recorded\n"
       << "  c_hat = " << fmt(s.c_hat) << " (oracle error bar " << fmt(s.error_bar) << ")"
       << (s.approximate ? ", distances approximate" : ", grid step " + fmt(s.grid_step)) << "\n"
       << "  unbounded_flag = " << (s.unbounded_flag ? "true" : "false") << "\n";
  }
  if (r.solve) {
    const auto& s = *r.solve;
    os << "Solve: point " << fmt_point(s.point) << ", P_alpha " << fmt(s.value) << ", residual "
       << fmt(s.residual) << ", alpha " << fmt(s.alpha) << ", iterations " << s.iterations
       << ", converged " << (s.converged ? "true" : "false") << "\n";
  }
  if (r.audit) {
    const auto& a = *r.audit;
    std::size_t biactive = 0;
    for (const auto& i : a.instances) biactive += i.biactive > 0;
    os << "Audit: " << a.instances.size() << " instances (" << biactive
       << " with biactive pairs), seed " << a.seed << "\n"
       << "chain violations: " << a.chain_violations << "\n"
       << "ACQ discrepancies: " << a.discrepancies << "\n";
    for (const auto& i : a.instances)
      for (const auto& c : i.chain)
        os << "  instance " << i.index << ": " << to_string(c.stronger) << " CERTIFIED but "
           << to_string(c.weaker) << " REFUTED\n";
  }
  return os.str();
}

}  // namespace mpvc
