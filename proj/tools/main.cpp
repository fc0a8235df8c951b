// Command-line front end for the superlin shared library. Talks to the
// library exclusively through the C API so it doubles as a smoke test of the
// public ABI. Exit codes: 0 success, 1 validation failure, 2 usage or
// parse/IO error.
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "superlin/superlin.h"

namespace {

struct CliExit {
  int code;
};

[[noreturn]] void fail_cli(int code, const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  throw CliExit{code};
}

int exit_code_for(superlin_status st) {
  switch (st) {
    case SUPERLIN_OK:
      return 0;
    case SUPERLIN_ERR_VALIDATION:
    case SUPERLIN_ERR_PRECONDITION:
      return 1;
    default:
      return 2;
  }
}

void check(superlin_status st) {
  if (st != SUPERLIN_OK) fail_cli(exit_code_for(st), superlin_last_error());
}

struct SysPtr {
  superlin_system* ptr = nullptr;
  SysPtr() = default;
  explicit SysPtr(superlin_system* p) : ptr(p) {}
  SysPtr(SysPtr&& other) noexcept : ptr(other.ptr) { other.ptr = nullptr; }
  SysPtr& operator=(SysPtr&& other) noexcept {
    if (this != &other) {
      superlin_system_free(ptr);
      ptr = other.ptr;
      other.ptr = nullptr;
    }
    return *this;
  }
  SysPtr(const SysPtr&) = delete;
  SysPtr& operator=(const SysPtr&) = delete;
  ~SysPtr() { superlin_system_free(ptr); }
};

struct StrPtr {
  char* ptr = nullptr;
  StrPtr() = default;
  StrPtr(const StrPtr&) = delete;
  StrPtr& operator=(const StrPtr&) = delete;
  ~StrPtr() { superlin_string_free(ptr); }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_cli(2, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail_cli(2, "error while reading '" + path + "'");
  return ss.str();
}

void write_text(const std::string& path, const char* text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail_cli(2, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail_cli(2, "error while writing '" + path + "'");
}

SysPtr load_system(const std::string& path) {
  const std::string text = read_text(path);
  SysPtr sys;
  check(superlin_system_parse(text.c_str(), &sys.ptr));
  return sys;
}

void write_system(const std::string& path, const superlin_system* sys) {
  StrPtr text;
  check(superlin_system_emit(sys, &text.ptr));
  write_text(path, text.ptr);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koopman embeddings of polynomial control systems: validation, "
               "classification, reduction, and co-simulation"};
  app.require_subcommand(1);

  double tol = 1e-9;
  double poly_tol = 1e-9;
  app.add_option("--tol", tol, "relative rank / visibility tolerance")
      ->capture_default_str();
  app.add_option("--poly-tol", poly_tol, "relative polynomial identity tolerance")
      ->capture_default_str();

  std::string in_file, out_file, report_file;

  auto* validate = app.add_subcommand(
      "validate", "check the lifted-dynamics identities; report on stdout");
  validate->add_option("file", in_file, "system JSON document")->required();
  validate->callback([&] {
    SysPtr sys = load_system(in_file);
    int32_t pass = 0;
    StrPtr report;
    check(superlin_validate(sys.ptr, tol, poly_tol, &pass, &report.ptr));
    std::cout << report.ptr;
    if (!pass) throw CliExit{1};
  });

  auto* classify = app.add_subcommand(
      "classify", "split observables into visible and hidden; report on stdout");
  classify->add_option("file", in_file, "system JSON document")->required();
  classify->callback([&] {
    SysPtr sys = load_system(in_file);
    StrPtr report;
    check(superlin_classify(sys.ptr, tol, &report.ptr));
    std::cout << report.ptr;
  });

  auto* reduce = app.add_subcommand(
      "reduce", "compute the reduced visible form and a step report");
  reduce->add_option("file", in_file, "system JSON document")->required();
  reduce->add_option("--out", out_file, "output system document")->required();
  reduce->add_option("--report", report_file, "output step report")->required();
  reduce->callback([&] {
    SysPtr sys = load_system(in_file);
    SysPtr reduced;
    StrPtr report;
    check(superlin_reduce(sys.ptr, tol, poly_tol, &reduced.ptr, &report.ptr));
    write_system(out_file, reduced.ptr);
    write_text(report_file, report.ptr);
  });

  auto* min_visible = app.add_subcommand(
      "min-visible", "print the minimal visible-observable count");
  min_visible->add_option("file", in_file, "system JSON document")->required();
  min_visible->callback([&] {
    SysPtr sys = load_system(in_file);
    int32_t count = 0;
    check(superlin_min_visible(sys.ptr, tol, poly_tol, &count));
    std::cout << count << "\n";
  });

  auto* realize = app.add_subcommand(
      "realize-min", "emit an equivalent embedding with minimal visible count");
  realize->add_option("file", in_file, "system JSON document")->required();
  realize->add_option("--out", out_file, "output system document")->required();
  realize->callback([&] {
    SysPtr sys = load_system(in_file);
    SysPtr out;
    check(superlin_realize_min_visible(sys.ptr, tol, poly_tol, &out.ptr));
    write_system(out_file, out.ptr);
  });

  auto* prune = app.add_subcommand(
      "prune", "drop observable coordinates invisible to the state");
  prune->add_option("file", in_file, "system JSON document")->required();
  prune->add_option("--out", out_file, "output system document")->required();
  prune->callback([&] {
    SysPtr sys = load_system(in_file);
    SysPtr out;
    check(superlin_prune_unobservable(sys.ptr, tol, &out.ptr));
    write_system(out_file, out.ptr);
  });

  std::string conj_file, shift_file;
  auto* transform = app.add_subcommand(
      "transform", "apply a change of observable coordinates or an affine shift");
  transform->add_option("file", in_file, "system JSON document")->required();
  auto* conj_opt = transform->add_option(
      "--conjugate", conj_file, "JSON file {\"P\": [[...], ...]} with invertible P");
  auto* shift_opt = transform->add_option(
      "--shift", shift_file, "JSON file {\"R\": [[...], ...], \"S\": [...]}");
  conj_opt->excludes(shift_opt);
  transform->add_option("--out", out_file, "output system document")->required();
  transform->callback([&] {
    SysPtr sys = load_system(in_file);
    SysPtr out;
    if (!conj_file.empty()) {
      const std::string p_text = read_text(conj_file);
      check(superlin_conjugate(sys.ptr, p_text.c_str(), tol, &out.ptr));
    } else if (!shift_file.empty()) {
      const std::string rs_text = read_text(shift_file);
      check(superlin_shift(sys.ptr, rs_text.c_str(), &out.ptr));
    } else {
      fail_cli(2, "transform requires exactly one of --conjugate or --shift");
    }
    write_system(out_file, out.ptr);
  });

  std::string x0_csv, u_spec = "const:0", traj_file;
  double horizon = 0.0, step = 0.0;
  auto* simulate = app.add_subcommand(
      "simulate", "co-simulate the projected and lifted dynamics; summary on stdout");
  simulate->set_help_flag("--help", "print help");  // frees -h for the step size
  simulate->add_option("file", in_file, "system JSON document")->required();
  simulate->add_option("--x0", x0_csv, "initial state, comma-separated")->required();
  simulate->add_option("--u", u_spec, "control: const:<v> or pwc:t0,v0;t1,v1;...")
      ->capture_default_str();
  simulate->add_option("--T", horizon, "horizon")->required();
  simulate->add_option("--h", step, "step size")->required();
  simulate->add_option("--traj", traj_file, "write the sampled trajectories as CSV");
  simulate->callback([&] {
    SysPtr sys = load_system(in_file);
    StrPtr traj, summary;
    char** traj_out = traj_file.empty() ? nullptr : &traj.ptr;
    check(superlin_simulate(sys.ptr, x0_csv.c_str(), u_spec.c_str(), horizon, step,
                            tol, poly_tol, traj_out, &summary.ptr));
    if (!traj_file.empty()) write_text(traj_file, traj.ptr);
    std::cout << summary.ptr;
  });

  std::uint64_t seed = 0;
  int nx = 2, ny = 2, m = 3, deg = 3, rank = 1;
  bool scramble = false;
  auto* gen = app.add_subcommand(
      "gen", "generate a seeded random valid system document");
  gen->add_option("--seed", seed, "generator seed")->required();
  gen->add_option("--nx", nx, "driven state dimension")->capture_default_str();
  gen->add_option("--ny", ny, "autonomous state dimension")->capture_default_str();
  gen->add_option("--m", m, "observable count")->capture_default_str();
  gen->add_option("--deg", deg, "maximal observable degree")->capture_default_str();
  gen->add_option("--rank", rank, "rank of the generated coupling G")
      ->capture_default_str();
  gen->add_flag("--scramble", scramble,
                "apply a random conjugate and shift after construction");
  gen->add_option("--out", out_file, "output system document")->required();
  gen->callback([&] {
    SysPtr sys;
    check(superlin_generate(nx, ny, m, deg, rank, scramble ? 1 : 0, seed, &sys.ptr,
                            nullptr));
    write_system(out_file, sys.ptr);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const CliExit& e) {
    return e.code;
  }
  return 0;
}
