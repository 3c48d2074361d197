#include "engel/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "engel/error.hpp"
#include "engel/frontlang.hpp"
#include "engel/homotopy.hpp"
#include "engel/invariants.hpp"
#include "engel/lifting.hpp"
#include "engel/models.hpp"
#include "engel/render.hpp"

namespace engel {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::size_t samples = 4096;
  int frames = 64;
  Tolerances tol;
  std::string out_dir = ".";
  bool balance = false;
  bool svg = false;
};

bool usage_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::SyntaxError:
    case ErrorCode::DuplicateName:
    case ErrorCode::UnknownMoveKind:
    case ErrorCode::UnknownName:
    case ErrorCode::BadDescription:
    case ErrorCode::BadMove:
      return true;
    default:
      return false;
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ENGEL_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("ENGEL_SEED is not an unsigned integer: ") + env);
  }
  return 1;
}

Document load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  try {
    return parse(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ":" + e.detail());
  }
}

fs::path out_path(const Globals& g, const std::string& file) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / file;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw std::runtime_error("cannot write " + path.string());
}

void write_loop_csv(const fs::path& path, const HorizontalLoop& loop) {
  std::ostringstream s;
  write_csv(s, loop);
  write_text(path, s.str());
}

LegendrianGenerator generator_of(const Globals& g, const Document& doc, const std::string& name) {
  auto gen = sample_generator(doc.generator(name), g.samples);
  return g.balance ? balance_closure(gen) : gen;
}

json closure_json(const HorizontalLoop& loop) {
  return {{"dz", loop.legendrian().closure_defect_z()}, {"dw", loop.closure_defect_w()}};
}

int cmd_lift(const Globals& g, const std::string& doc_path, const std::string& name, std::ostream& out) {
  const auto doc = load(doc_path);
  const auto loop = lift_unchecked(generator_of(g, doc, name));
  write_loop_csv(out_path(g, name + ".csv"), loop);
  const bool closed = loop.closed(g.tol.closure);
  json j{{"name", name}, {"samples", g.samples}, {"closed", closed}, {"closure", closure_json(loop)}};
  const auto r = horizontality_residual(loop);
  j["residual"] = {{"z", r.z}, {"w", r.w}};
  j["invariants"] = nullptr;
  if (std::abs(loop.legendrian().closure_defect_z()) <= g.tol.closure) {
    j["invariants"] = to_json(invariant_report(loop.legendrian(), g.tol));
  }
  write_text(out_path(g, name + ".json"), j.dump(2) + "\n");
  out << j.dump() << "\n";
  return closed ? kExitOk : kExitCertificate;
}

int cmd_rot(const Globals& g, const std::string& doc_path, const std::string& name, std::ostream& out) {
  const auto doc = load(doc_path);
  const auto gen = generator_of(g, doc, name);
  json j{{"rot_winding", rot_winding(gen)}, {"rot_cusp", nullptr}, {"c_plus", nullptr}, {"c_minus", nullptr}};
  const LegendrianLoop loop(gen, 0.0);
  if (loop.closed(g.tol.closure)) {
    const auto front = front_of(loop, g.tol);
    const auto count = classify_cusps(front);
    j["rot_cusp"] = rot_cusp(front);
    j["c_plus"] = count.c_plus;
    j["c_minus"] = count.c_minus;
  }
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_check(const Globals& g, const std::string& doc_path, const std::string& name, std::ostream& out) {
  const auto doc = load(doc_path);
  const auto loop = lift_unchecked(generator_of(g, doc, name));
  const bool closed = loop.closed(g.tol.closure);
  json j{{"closed", closed}, {"closure", closure_json(loop)}};
  bool embedded = false;
  if (closed) {
    const auto report = embedding_check(loop, g.tol);
    embedded = report.embedded;
    j.update(to_json(report));
  } else {
    j["embedded"] = false;
    j["margin"] = nullptr;
    j["double_points"] = json::array();
  }
  out << j.dump() << "\n";
  return closed && embedded ? kExitOk : kExitCertificate;
}

int cmd_model(const Globals& g, int n, std::uint64_t seed, std::ostream& out) {
  const auto loop = model_front(n, seed, g.samples, g.tol);
  const auto front = front_of(loop.legendrian(), g.tol);
  const auto stem = "model_" + std::to_string(n) + "_" + std::to_string(seed);
  write_loop_csv(out_path(g, stem + ".csv"), loop);
  render_svg(front, out_path(g, stem + ".svg"));
  json j{{"n", n}, {"seed", seed}, {"samples", g.samples}};
  j.update(to_json(invariant_report(loop.legendrian(), g.tol)));
  j["closure"] = closure_json(loop);
  const auto r = horizontality_residual(loop);
  j["residual"] = {{"z", r.z}, {"w", r.w}};
  j["embedding"] = to_json(embedding_check(loop, g.tol));
  write_text(out_path(g, stem + ".json"), j.dump(2) + "\n");
  out << j.dump() << "\n";
  return kExitOk;
}

int cmd_homotopy(const Globals& g, const std::string& doc_path, const std::string& gen_name,
                 const std::string& script_name, std::ostream& out) {
  const auto doc = load(doc_path);
  const auto g0 = sample_generator(doc.generator(gen_name), g.samples);
  const auto& script = doc.script(script_name);
  const auto trace = run_script(g0, script, {g.frames, g.tol});
  const auto report = verify_isotopy(trace, g.tol);
  for (std::size_t i = 0; i < trace.frames.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "frame_%04zu", i);
    write_loop_csv(out_path(g, std::string(stem) + ".csv"), trace.frames[i]);
    if (g.svg && trace.frames[i].legendrian().closed(g.tol.closure)) {
      render_svg(front_of(trace.frames[i].legendrian(), g.tol), out_path(g, std::string(stem) + ".svg"));
    }
  }
  write_text(out_path(g, "events.json"), to_json(trace.events).dump(2) + "\n");
  const auto full = to_json(report);
  write_text(out_path(g, "verification.json"), full.dump(2) + "\n");
  json summary{{"verified", full["verified"]}, {"rot_constant", full["rot_constant"]},
               {"frames", full["frames"]},     {"margin", full["margin"]},
               {"failure", full["failure"]},   {"events", full["events"]}};
  out << summary.dump() << "\n";
  return report.verified ? kExitOk : kExitCertificate;
}

}  // namespace

int command_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Horizontal loops in the standard Engel structure"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--samples", g.samples, "Samples per loop (power of two)")->check(CLI::PositiveNumber);
  app.add_option("--tol-closure", g.tol.closure, "Closure tolerance")->check(CLI::PositiveNumber);
  app.add_option("--tol-embed", g.tol.embed, "Embedding margin tolerance")->check(CLI::PositiveNumber);
  app.add_option("--frames", g.frames, "Frames per homotopy move")->check(CLI::PositiveNumber);
  app.add_option("-o,--out", g.out_dir, "Output directory");

  std::string doc, name, script;
  int result = kExitOk;
  auto add_doc_command = [&](const char* cmd, const char* help) {
    auto* sub = app.add_subcommand(cmd, help);
    sub->add_option("doc", doc, "frontlang document")->required();
    sub->add_option("name", name, "Generator name")->required();
    sub->add_flag("--balance", g.balance, "Balance closure before lifting");
    return sub;
  };
  auto* lift_cmd = add_doc_command("lift", "Lift a generator: CSV and invariant JSON");
  auto* rot_cmd = add_doc_command("rot", "Rotation number JSON");
  auto* check_cmd = add_doc_command("check", "Closure and embedding certificate");

  int n = 0;
  std::uint64_t seed = 0;
  auto* model_cmd = app.add_subcommand("model", "Model loop with rotation number n");
  model_cmd->add_option("-n", n, "Rotation number")->required();
  auto* seed_opt = model_cmd->add_option("--seed", seed, "Perturbation seed");

  auto* homotopy_cmd = app.add_subcommand("homotopy", "Homotopy scripts");
  homotopy_cmd->require_subcommand(1);
  auto* run_cmd = homotopy_cmd->add_subcommand("run", "Run and verify a move script");
  run_cmd->add_option("doc", doc, "frontlang document")->required();
  run_cmd->add_option("generator", name, "Start generator")->required();
  run_cmd->add_option("script", script, "Move script")->required();
  run_cmd->add_flag("--svg", g.svg, "Render every frame");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "engel: " << e.what() << "\n";
    return kExitUsage;
  }
  if ((g.samples & (g.samples - 1)) != 0 || g.samples < 16) {
    err << "engel: --samples must be a power of two >= 16\n";
    return kExitUsage;
  }

  try {
    if (lift_cmd->parsed()) result = cmd_lift(g, doc, name, out);
    else if (rot_cmd->parsed()) result = cmd_rot(g, doc, name, out);
    else if (check_cmd->parsed()) result = cmd_check(g, doc, name, out);
    else if (model_cmd->parsed()) result = cmd_model(g, n, seed_opt->count() ? seed : default_seed(), out);
    else if (run_cmd->parsed()) result = cmd_homotopy(g, doc, name, script, out);
  } catch (const UsageError& e) {
    err << "engel: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "engel: " << e.what() << "\n";
    return usage_code(e.code()) ? kExitUsage : kExitCertificate;
  } catch (const std::exception& e) {
    err << "engel: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return result;
}

}  // namespace engel
