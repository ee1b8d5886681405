// Command-line front end: analyze, penalty-sweep, scan, solve, acq, audit.

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mpvc/report.hpp"

namespace {

enum ExitCode { kOk = 0, kParse = 1, kInfeasible = 2, kInternal = 3 };

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end == item.c_str() || *end != '\0')
      throw mpvc::InvalidArgument(std::string("malformed ") + what + " entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw mpvc::InvalidArgument(std::string("empty ") + what);
  return out;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Globals {
  double tol_active = mpvc::kDefaultTolActive;
  std::uint64_t seed = 7;
  bool json = false;
  std::string out;
};

struct ProblemArgs {
  std::string file;
  std::string point;
};

mpvc::Report start_report(const std::string& command, const Globals& g) {
  mpvc::Report r;
  r.command = command;
  r.seed = g.seed;
  r.timestamp = utc_timestamp();
  return r;
}

void describe_problem(mpvc::Report& r, const mpvc::MpvcProblem& prob) {
  r.problem = prob.name();
  r.variables = prob.vars().names();
}

mpvc::Point read_point(const mpvc::MpvcProblem& prob, const std::string& text) {
  mpvc::Point p = parse_list(text, "point");
  if (p.size() != prob.dim())
    throw mpvc::InvalidArgument("point has " + std::to_string(p.size()) + " entries, problem has " +
                                std::to_string(prob.dim()) + " variables");
  return p;
}

int emit(const mpvc::Report& r, const Globals& g) {
  const std::string body = g.json ? mpvc::json(r).dump(2) + "\n" : mpvc::render_text(r);
  if (g.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(g.out);
    if (!f) throw mpvc::InvalidArgument("cannot write '" + g.out + "'");
    f << body;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Analysis of programs with vanishing constraints"};
  app.set_version_flag("--version", MPVC_VERSION);
  app.require_subcommand(1);
  // Subcommands inherit this, so global flags may follow the subcommand.
  app.fallthrough();

  Globals g;
  app.add_option("--tol-active", g.tol_active, "Activity tolerance for index sets")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Seed for every sampler");
  app.add_flag("--json", g.json, "Write the report as JSON");
  app.add_option("--out", g.out, "Write the report to this file");

  ProblemArgs pa;
  auto add_problem = [&](CLI::App* sub, bool needs_point) {
    sub->add_option("file", pa.file, "Problem file")->required()->check(CLI::ExistingFile);
    auto* opt = sub->add_option("--point", pa.point, "Comma-separated coordinates");
    if (needs_point) opt->required();
  };

  std::size_t directions = 360;
  auto* analyze = app.add_subcommand("analyze", "Index sets, constraint qualifications, ACQ probe");
  add_problem(analyze, true);
  analyze->add_option("--directions", directions, "Directions for the ACQ probe");

  std::string alphas_text = "0,0.1,1,10";
  auto* sweep = app.add_subcommand("penalty-sweep", "Minimize the penalty over an alpha grid");
  add_problem(sweep, true);
  sweep->add_option("--alphas", alphas_text, "Comma-separated, strictly increasing");

  double radius = 0.1;
  std::size_t samples = 500;
  auto* scan = app.add_subcommand("scan", "Empirical local error bound");
  add_problem(scan, true);
  scan->add_option("--radius", radius, "l1 ball radius")->check(CLI::PositiveNumber);
  scan->add_option("--samples", samples, "Sample count");

  std::string schedule_text;
  std::size_t starts = 8;
  auto* solve = app.add_subcommand("solve", "Penalty continuation solve");
  add_problem(solve, false);
  solve->add_option("--alphas", schedule_text, "Penalty schedule (default 0.1,1,10,100)");
  solve->add_option("--starts", starts, "Random starts in the unit box");

  auto* acq = app.add_subcommand("acq", "Probe linearized and tangent cones");
  add_problem(acq, true);
  acq->add_option("--directions", directions, "Number of directions");

  std::size_t instances = 200;
  auto* audit = app.add_subcommand("audit", "Implication-chain audit on random instances");
  audit->add_option("--instances", instances, "Corpus size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (audit->parsed()) {
      mpvc::Report r = start_report("audit", g);
      mpvc::AuditConfig cfg;
      cfg.generator.instances = instances;
      r.audit = mpvc::audit_corpus(cfg, g.seed);
      emit(r, g);
      return r.audit->chain_violations == 0 ? kOk : kInternal;
    }

    const mpvc::MpvcProblem prob = mpvc::load_problem(pa.file);
    mpvc::Report r;
    if (analyze->parsed() || acq->parsed()) {
      r = start_report(analyze->parsed() ? "analyze" : "acq", g);
      describe_problem(r, prob);
      r.point = read_point(prob, pa.point);
      const mpvc::IndexSets sets = mpvc::classify(prob, r.point, g.tol_active);
      if (analyze->parsed()) {
        mpvc::FullReportConfig cfg;
        cfg.acq_direction_count = directions;
        cfg.seed = g.seed;
        cfg.search.seed = g.seed;
        r.analysis = mpvc::full_report(prob, r.point, sets, cfg);
        emit(r, g);
        return r.analysis->chain.empty() ? kOk : kInternal;
      }
      r.acq = mpvc::probe_acq(prob, r.point, sets,
                              mpvc::acq_directions(prob.dim(), directions, g.seed));
    } else if (sweep->parsed()) {
      r = start_report("penalty-sweep", g);
      describe_problem(r, prob);
      r.point = read_point(prob, pa.point);
      mpvc::SweepConfig cfg;
      cfg.seed = g.seed;
      r.penalty = mpvc::penalty_sweep(prob, r.point, parse_list(alphas_text, "alpha list"), cfg);
    } else if (scan->parsed()) {
      r = start_report("scan", g);
      describe_problem(r, prob);
      r.point = read_point(prob, pa.point);
      r.scan = mpvc::scan_error_bound(prob, r.point, radius, samples, g.seed);
    } else {
      r = start_report("solve", g);
      describe_problem(r, prob);
      mpvc::SolveConfig cfg;
      cfg.seed = g.seed;
      cfg.num_starts = starts;
      if (!pa.point.empty()) cfg.starts = {read_point(prob, pa.point)};
      if (!schedule_text.empty()) cfg.alpha_schedule = parse_list(schedule_text, "alpha schedule");
      r.solve = mpvc::solve_mpvc(prob, cfg);
    }
    return emit(r, g);
  } catch (const mpvc::ParseError& e) {
    std::cerr << "parse error: " << pa.file << ": " << e.what() << "\n";
    return kParse;
  } catch (const mpvc::InfeasiblePointError& e) {
    std::cerr << "infeasible point: " << e.what() << "\n";
    return kInfeasible;
  } catch (const mpvc::InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return kParse;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
