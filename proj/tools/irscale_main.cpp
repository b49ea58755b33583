/*
 * Copyright 2026 The irscale Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// irscale: command-line front end.
//
// Exit codes: 0 success, 1 input error, 2 size limit, 3 degenerate data.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "irscale/irscale.hpp"

namespace {

using irscale::InputError;
using irscale::report::ordered_json;

struct GlobalOptions {
  std::string measure = "rr";
  double persistence = 0.5;
  std::optional<std::size_t> k;
  int g_max = 1;
  std::optional<int> recall_base;
  double tol = irscale::kDefaultEquispacingTolerance;
  std::size_t trials = 1000;
  std::optional<std::uint64_t> seed;
  std::uint64_t universe_cap = irscale::kDefaultUniverseCap;
  bool rb_constrained = false;
  std::string format = "auto";
};

enum class Format { kCsv, kJson };

Format resolve_format(const GlobalOptions& g, Format fallback) {
  if (g.format == "csv") return Format::kCsv;
  if (g.format == "json") return Format::kJson;
  return fallback;
}

std::size_t require_k(const GlobalOptions& g) {
  if (!g.k) throw InputError("--k is required for this command");
  return *g.k;
}

irscale::Measure build_measure(const GlobalOptions& g, std::optional<std::size_t> cutoff) {
  return irscale::measure_from_name(g.measure, g.persistence, cutoff, g.g_max);
}

std::optional<irscale::TopicContext> build_context(const GlobalOptions& g) {
  if (!g.recall_base) return std::nullopt;
  irscale::TopicContext ctx{"cli", *g.recall_base, g.g_max};
  ctx.validate();
  return ctx;
}

irscale::SerpUniverse build_universe(const GlobalOptions& g) {
  const std::size_t k = require_k(g);
  std::optional<std::size_t> cap;
  if (g.rb_constrained) {
    if (!g.recall_base) throw InputError("--rb-constrained needs --rb");
    cap = static_cast<std::size_t>(*g.recall_base);
  }
  return irscale::SerpUniverse(k, irscale::GradeSet::up_to(g.g_max), cap, g.universe_cap);
}

void print_json(const ordered_json& j) { std::cout << j.dump(2) << '\n'; }

irscale::Serp parse_serp(const std::string& text) {
  std::vector<irscale::Grade> grades;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    irscale::Grade g = 0;
    if (!irscale::trec::detail::parse_number(std::string_view(item), g)) {
      throw InputError("bad grade '" + item + "' in --serp");
    }
    grades.push_back(g);
  }
  if (grades.empty()) throw InputError("--serp is empty");
  return irscale::Serp(std::move(grades));
}

std::vector<irscale::trec::Run> load_runs(const std::vector<std::string>& paths) {
  std::vector<irscale::trec::Run> runs;
  for (const auto& p : paths) runs.push_back(irscale::trec::parse_run_file(p));
  return runs;
}

// --- subcommands ----------------------------------------------------------

void cmd_measure(const GlobalOptions& g, const std::string& serp_text,
                 const std::vector<std::string>& run_paths, const std::string& qrels_path) {
  if (!serp_text.empty()) {
    const auto serp = parse_serp(serp_text);
    const auto m = build_measure(g, g.k);
    const auto ctx = build_context(g);
    const auto score = irscale::eval_measure(m, serp, ctx);
    if (resolve_format(g, Format::kCsv) == Format::kCsv) {
      std::cout << "measure,value\n" << score.measure << ',' << irscale::report::num(score.value)
                << '\n';
    } else {
      print_json({{"schema_version", irscale::report::kSchemaVersion},
                  {"kind", "score"},
                  {"measure", score.measure},
                  {"serp", serp.grades},
                  {"value", score.value},
                  {"rb_dependent", m.rb_dependent()}});
    }
    return;
  }
  if (run_paths.empty() || qrels_path.empty()) {
    throw InputError("measure needs --serp, or --run and --qrels");
  }
  const std::size_t k = require_k(g);
  const auto qrels = irscale::trec::parse_qrels_file(qrels_path);
  const auto matrix = irscale::score_runs(load_runs(run_paths), qrels, build_measure(g, k), k);
  for (const auto& w : matrix.warnings) std::cerr << "warning: " << w << '\n';
  if (resolve_format(g, Format::kCsv) == Format::kCsv) {
    irscale::report::matrix_csv(std::cout, matrix);
  } else {
    print_json(irscale::report::matrix_json(matrix));
  }
}

void cmd_points(const GlobalOptions& g) {
  const auto u = build_universe(g);
  const auto scale =
      irscale::achievable_points(build_measure(g, u.k()), u, build_context(g));
  if (resolve_format(g, Format::kCsv) == Format::kCsv) {
    irscale::report::points_csv(std::cout, scale);
  } else {
    print_json(irscale::report::points_json(scale));
  }
}

void cmd_check_scale(const GlobalOptions& g) {
  const auto u = build_universe(g);
  const auto scale =
      irscale::achievable_points(build_measure(g, u.k()), u, build_context(g));
  const auto verdict = irscale::check_equispaced(scale, g.tol);
  const auto ranks = irscale::intervalize(scale).mapped_scale();
  const auto fit = irscale::check_affine_equivalent(scale, ranks, g.tol);
  if (resolve_format(g, Format::kJson) == Format::kCsv) {
    std::cout << "source,n_points,equispaced,worst_gap_index,worst_relative_deviation,"
                 "affine_to_ranks,alpha,beta\n"
              << scale.source << ',' << scale.size() << ','
              << (verdict.equispaced ? "yes" : "no") << ',' << verdict.worst_gap << ','
              << irscale::report::num(verdict.worst_deviation) << ',' << (fit ? "yes" : "no")
              << ',' << (fit ? irscale::report::num(fit->transform.alpha) : "NA") << ','
              << (fit ? irscale::report::num(fit->transform.beta) : "NA") << '\n';
    return;
  }
  print_json({{"schema_version", irscale::report::kSchemaVersion},
              {"kind", "scale-check"},
              {"source", scale.source},
              {"n_points", scale.size()},
              {"claimed_type", std::string(irscale::to_string(scale.claimed_type))},
              {"equispacing", irscale::report::equispacing_json(verdict)},
              {"affine_to_intervalized_ranks", irscale::report::affine_json(fit)}});
}

void cmd_intervalize(const GlobalOptions& g, bool normalize) {
  const auto u = build_universe(g);
  const auto scale =
      irscale::achievable_points(build_measure(g, u.k()), u, build_context(g));
  const auto mapping = irscale::intervalize(scale, normalize);
  if (resolve_format(g, Format::kCsv) == Format::kCsv) {
    irscale::report::mapping_csv(std::cout, mapping);
  } else {
    print_json(irscale::report::mapping_json(scale, mapping));
  }
}

void cmd_meaningful(const GlobalOptions& g, const std::string& statement_text,
                    const std::string& scale_name, const std::vector<std::string>& inline_samples,
                    const std::string& samples_file, bool no_whitelist, bool exact) {
  if (!g.seed) throw InputError("meaningful needs --seed for reproducibility");
  irscale::Samples samples;
  if (!samples_file.empty()) {
    std::ifstream in(samples_file);
    if (!in) throw InputError("cannot open '" + samples_file + "'");
    samples = irscale::parse_samples(in, samples_file);
  }
  for (const auto& item : inline_samples) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("--sample expects NAME=v1,v2,...");
    std::istringstream line(item.substr(0, eq) + " " + item.substr(eq + 1));
    for (auto& [name, values] : irscale::parse_samples(line, "--sample")) {
      if (!samples.emplace(name, std::move(values)).second) {
        throw InputError("duplicate sample '" + name + "'");
      }
    }
  }
  auto st = irscale::parse_statement(statement_text, samples);
  st.equality_tol = exact ? 0.0 : g.tol;
  irscale::MeaningfulnessOptions opts;
  opts.n_trials = g.trials;
  opts.seed = *g.seed;
  opts.use_whitelist = !no_whitelist;
  const irscale::TransformationFamily family{
      irscale::family_for(irscale::scale_type_from_name(scale_name))};
  const auto verdict = irscale::check_meaningfulness(st, samples, family, opts);
  if (resolve_format(g, Format::kJson) == Format::kCsv) {
    std::cout << "statement,family,outcome,truth,lhs,rhs,witness\n"
              << '"' << statement_text << "\"," << irscale::to_string(verdict.family) << ','
              << irscale::to_string(verdict.outcome) << ',' << (verdict.truth ? "true" : "false")
              << ',' << irscale::report::num(verdict.sides.lhs) << ','
              << irscale::report::num(verdict.sides.rhs) << ','
              << (verdict.witness ? verdict.witness->transformation.describe() : "NA") << '\n';
    return;
  }
  print_json(irscale::report::verdict_json(statement_text, verdict, opts));
}

void cmd_analyze(const GlobalOptions& g, const std::vector<std::string>& run_paths,
                 const std::string& qrels_path, double alpha) {
  if (run_paths.empty() || qrels_path.empty()) throw InputError("analyze needs --run and --qrels");
  const std::size_t k = require_k(g);
  const auto qrels = irscale::trec::parse_qrels_file(qrels_path);
  const auto m = build_measure(g, k);
  const auto raw = irscale::score_runs(load_runs(run_paths), qrels, m, k);
  irscale::IntervalizeOptions iopts;
  iopts.rb_constrained = g.rb_constrained;
  iopts.universe_cap = g.universe_cap;
  const auto iv =
      irscale::intervalize_matrix(raw, m, k, irscale::GradeSet::up_to(g.g_max), &qrels, iopts);
  const auto report = irscale::compare(raw, iv, alpha);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  if (resolve_format(g, Format::kJson) == Format::kCsv) {
    irscale::report::comparison_csv(std::cout, report);
  } else {
    print_json(irscale::report::comparison_json(report));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Measurement-scale analysis of IR evaluation measures"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  app.add_option("--measure", g.measure, "p, rr, ap, dcg, ndcg, rbp, err")->capture_default_str();
  app.add_option("--p", g.persistence, "RBP persistence")->capture_default_str();
  app.add_option("--k", g.k, "SERP length / cutoff");
  app.add_option("--gmax", g.g_max, "maximum relevance grade")->capture_default_str();
  app.add_option("--rb", g.recall_base, "recall base for RB-dependent measures");
  app.add_option("--tol", g.tol, "relative tolerance")->capture_default_str();
  app.add_option("--trials", g.trials, "random transformations to try")->capture_default_str();
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--universe-cap", g.universe_cap, "maximum universe size")->capture_default_str();
  app.add_flag("--rb-constrained", g.rb_constrained, "only SERPs with at most --rb relevant");
  app.add_option("--format", g.format, "auto, csv or json")
      ->check(CLI::IsMember({"auto", "csv", "json"}))
      ->capture_default_str();

  std::string serp_text;
  std::vector<std::string> run_paths;
  std::string qrels_path;
  auto* measure = app.add_subcommand("measure", "score one SERP or a set of runs");
  measure->add_option("--serp", serp_text, "comma-separated grades, e.g. 0,1,1");
  measure->add_option("--run", run_paths, "TREC run file(s)");
  measure->add_option("--qrels", qrels_path, "TREC qrels file");

  app.add_subcommand("points", "achievable measurement points");
  app.add_subcommand("check-scale", "equi-spacing and affine checks");

  bool normalize = false;
  auto* intervalize = app.add_subcommand("intervalize", "dense-rank mapping of the points");
  intervalize->add_flag("--normalize", normalize, "map ranks onto [0, 1]");

  std::string statement_text;
  std::string scale_name = "interval";
  std::vector<std::string> inline_samples;
  std::string samples_file;
  bool no_whitelist = false;
  bool exact = false;
  auto* meaningful = app.add_subcommand("meaningful", "meaningfulness of a statement");
  meaningful->add_option("--statement", statement_text, "e.g. 'mean(A) < mean(B)'")->required();
  meaningful->add_option("--scale", scale_name, "nominal, ordinal, interval or ratio")
      ->check(CLI::IsMember({"nominal", "ordinal", "interval", "ratio"}))
      ->capture_default_str();
  meaningful->add_option("--sample", inline_samples, "NAME=v1,v2,...");
  meaningful->add_option("--samples-file", samples_file, "lines of 'NAME v1 v2 ...'");
  meaningful->add_flag("--no-whitelist", no_whitelist, "always sample transformations");
  meaningful->add_flag("--exact", exact, "exact equality instead of relative tolerance");

  double alpha = 0.05;
  std::vector<std::string> analyze_runs;
  std::string analyze_qrels;
  auto* analyze = app.add_subcommand("analyze", "raw vs intervalized comparison");
  analyze->add_option("--run", analyze_runs, "TREC run files")->required();
  analyze->add_option("--qrels", analyze_qrels, "TREC qrels file")->required();
  analyze->add_option("--alpha", alpha, "significance level")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*measure) {
      cmd_measure(g, serp_text, run_paths, qrels_path);
    } else if (app.got_subcommand("points")) {
      cmd_points(g);
    } else if (app.got_subcommand("check-scale")) {
      cmd_check_scale(g);
    } else if (*intervalize) {
      cmd_intervalize(g, normalize);
    } else if (*meaningful) {
      cmd_meaningful(g, statement_text, scale_name, inline_samples, samples_file, no_whitelist,
                     exact);
    } else if (*analyze) {
      cmd_analyze(g, analyze_runs, analyze_qrels, alpha);
    }
  } catch (const irscale::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.exit_code();
  }
  return 0;
}
