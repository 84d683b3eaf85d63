#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "watson/error.hpp"
#include "watson/lattice.hpp"
#include "watson/report.hpp"
#include "watson/verify.hpp"

namespace {

using namespace watson;

constexpr int kExitPass = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

struct RunConfig {
  unsigned digits = 50;
  std::uint64_t seed = 0xC0FFEE;
  std::size_t samples = 100;
  double pole_guard = 0.05;
  std::string output;  // empty: per-command default
  std::string out_path;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PrecisionCtx make_context(const RunConfig& cfg) {
  try {
    return PrecisionCtx(cfg.digits, cfg.pole_guard);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

Rational parse_param(const std::string& name, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError("-" + name + ": " + e.what());
  }
}

std::string format_of(const RunConfig& cfg, const char* fallback) {
  return cfg.output.empty() ? fallback : cfg.output;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out_path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw std::ios_base::failure("cannot write " + cfg.out_path);
  }
}

int verdict_exit(Verdict v) {
  switch (v) {
    case Verdict::identity: return kExitPass;
    case Verdict::not_identity: return kExitRefuted;
    case Verdict::inconclusive: return kExitInconclusive;
  }
  return kExitInconclusive;
}

struct PointArgs {
  std::string a, b, c;
  int i = 0;
  int j = 0;
};

int cmd_eval(const RunConfig& cfg, const PointArgs& args) {
  const PrecisionCtx ctx = make_context(cfg);
  const WatsonPoint p{parse_param("a", args.a), parse_param("b", args.b), parse_param("c", args.c), args.i, args.j};
  EvalResult r;
  try {
    r = eval_point(p, ctx, EvalOptions::for_context(ctx));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::divergent_series) {
      std::cout << "divergent\n";
      std::cerr << e.what() << '\n';
      return kExitRefuted;
    }
    throw UsageError(e.what());
  }
  const std::string fmt = format_of(cfg, "text");
  if (fmt == "json") {
    emit(cfg, to_json(p, r, ctx.digits));
  } else if (fmt == "csv") {
    emit(cfg, "value,abs_err_bound,method,terms_used,converged\n" + r.value.to_string(ctx.digits) + "," +
                  r.abs_err_bound.to_string(6) + "," + std::string(to_string(r.method)) + "," +
                  std::to_string(r.terms_used) + "," + (r.converged ? "1" : "0") + "\n");
  } else {
    emit(cfg, to_text(r, ctx.digits));
  }
  return kExitPass;
}

int cmd_check(const RunConfig& cfg, const std::string& id) {
  const PrecisionCtx ctx = make_context(cfg);
  if (!is_relation(id)) throw UsageError("unknown relation '" + id + "'");
  const RunOptions run{cfg.seed, cfg.samples, cfg.threads};
  FormRegistry registry;
  const RelationReport report = check_relation(id, ctx, run, &registry);
  const std::string fmt = format_of(cfg, "text");
  if (fmt == "json") {
    emit(cfg, to_json(report));
  } else if (fmt == "csv") {
    emit(cfg, to_csv(report));
  } else {
    emit(cfg, to_text(report));
  }
  return verdict_exit(report.verdict);
}

int cmd_suite(const RunConfig& cfg) {
  const PrecisionCtx ctx = make_context(cfg);
  const RunOptions run{cfg.seed, cfg.samples, cfg.threads};
  const SuiteResult suite = run_suite(ctx, run);
  const std::string fmt = format_of(cfg, "json");
  if (fmt == "csv") {
    emit(cfg, to_csv(suite));
  } else if (fmt == "text") {
    emit(cfg, to_text(suite));
  } else {
    emit(cfg, to_json(suite));
  }
  int code = kExitPass;
  for (const auto& r : suite.relations) {
    if (!r.expected_identity || r.verdict == Verdict::identity) continue;
    code = r.verdict == Verdict::not_identity ? kExitRefuted : std::max(code, kExitInconclusive);
    if (code == kExitRefuted) break;
  }
  return code;
}

int cmd_reduce(const RunConfig& cfg, const PointArgs& args) {
  const PrecisionCtx ctx = make_context(cfg);
  if (args.j < 0) throw UsageError("reduce needs j >= 0");
  if (args.i != 0) throw UsageError("reduce supports only i = 0");
  const WatsonPoint p{parse_param("a", args.a), parse_param("b", args.b), parse_param("c", args.c), 0, args.j};
  ReductionPlan plan;
  try {
    plan = reduce_to_watson(p, ctx, EvalOptions::for_context(ctx));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::divergent_series) {
      std::cout << "divergent\n";
      return kExitRefuted;
    }
    throw UsageError(e.what());
  }
  const std::string fmt = format_of(cfg, "text");
  if (fmt == "json") {
    emit(cfg, to_json(plan, ctx.digits));
  } else if (fmt == "csv") {
    std::string csv = "k,weight\n";
    for (const auto& t : plan.terms) csv += std::to_string(t.shift) + "," + to_string(t.weight) + "\n";
    emit(cfg, csv);
  } else {
    emit(cfg, to_text(plan, ctx.digits));
  }
  return kExitPass;
}

void add_point_options(CLI::App* cmd, PointArgs& args, bool with_i) {
  cmd->add_option("-a", args.a, "parameter a (decimal or p/q)")->required();
  cmd->add_option("-b", args.b, "parameter b (decimal or p/q)")->required();
  cmd->add_option("-c", args.c, "parameter c (decimal or p/q)")->required();
  if (with_i) cmd->add_option("-i", args.i, "first lattice index");
  cmd->add_option("-j", args.j, "second lattice index");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Evaluate Watson-lattice 3F2(1) series and adjudicate the identities among them"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  app.add_option("--digits", cfg.digits, "decimal working precision (15..1000)")
      ->envname("WATSON_DIGITS")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "sampling seed")->capture_default_str();
  app.add_option("--samples", cfg.samples, "random samples per relation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--pole-guard", cfg.pole_guard, "minimum distance of gamma arguments from poles")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--output", cfg.output, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", cfg.out_path, "write the result to this file");
  app.add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();

  PointArgs eval_args;
  CLI::App* eval = app.add_subcommand("eval", "evaluate f_{i,j}(a,b,c)");
  add_point_options(eval, eval_args, true);

  std::string relation;
  CLI::App* check = app.add_subcommand("check", "adjudicate one relation");
  check->add_option("relation", relation, "relation id")->required();

  CLI::App* suite = app.add_subcommand("suite", "run every relation and write the report");

  PointArgs reduce_args;
  CLI::App* reduce = app.add_subcommand("reduce", "expand f_{0,j} into Watson base values");
  add_point_options(reduce, reduce_args, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kExitPass : kExitUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*eval) return cmd_eval(cfg, eval_args);
    if (*check) return cmd_check(cfg, relation);
    if (*suite) return cmd_suite(cfg);
    if (*reduce) return cmd_reduce(cfg, reduce_args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
