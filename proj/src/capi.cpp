#include "superlin/superlin.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>
#include <utility>

#include "superlin/embedding.hpp"
#include "superlin/error.hpp"
#include "superlin/io.hpp"
#include "superlin/transform.hpp"
#include "superlin/verify.hpp"

struct superlin_system {
  superlin::SuperLinearization value;
};

namespace {

thread_local std::string g_last_error = "no error";

superlin_status status_of(superlin::ErrorCode code) {
  using superlin::ErrorCode;
  switch (code) {
    case ErrorCode::Parse:
      return SUPERLIN_ERR_PARSE;
    case ErrorCode::Dimension:
      return SUPERLIN_ERR_DIMENSION;
    case ErrorCode::Singular:
      return SUPERLIN_ERR_SINGULAR;
    case ErrorCode::Infeasible:
      return SUPERLIN_ERR_INFEASIBLE;
    case ErrorCode::Precondition:
      return SUPERLIN_ERR_PRECONDITION;
    case ErrorCode::Validation:
      return SUPERLIN_ERR_VALIDATION;
    case ErrorCode::Io:
      return SUPERLIN_ERR_IO;
    case ErrorCode::Numeric:
      return SUPERLIN_ERR_INTERNAL;
  }
  return SUPERLIN_ERR_INTERNAL;
}

template <typename F>
superlin_status guarded(F&& body) {
  try {
    body();
    return SUPERLIN_OK;
  } catch (const superlin::Error& e) {
    g_last_error = e.what();
    return status_of(e.code());
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SUPERLIN_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown internal error";
    return SUPERLIN_ERR_INTERNAL;
  }
}

superlin_status null_argument(const char* name) {
  g_last_error = std::string(name) + " must not be NULL";
  return SUPERLIN_ERR_PRECONDITION;
}

using CString = std::unique_ptr<char, decltype(&std::free)>;

CString dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return CString(out, &std::free);
}

std::unique_ptr<superlin_system> wrap(superlin::SuperLinearization L) {
  return std::make_unique<superlin_system>(superlin_system{std::move(L)});
}

}  // namespace

extern "C" {

const char* superlin_last_error(void) { return g_last_error.c_str(); }

void superlin_string_free(char* s) { std::free(s); }

void superlin_system_free(superlin_system* sys) { delete sys; }

superlin_status superlin_system_parse(const char* json, superlin_system** out_sys) {
  if (!json) return null_argument("json");
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] { *out_sys = wrap(superlin::parse_system(json)).release(); });
}

superlin_status superlin_system_emit(const superlin_system* sys, char** out_json) {
  if (!sys) return null_argument("sys");
  if (!out_json) return null_argument("out_json");
  return guarded([&] { *out_json = dup_string(superlin::emit_system(sys->value)).release(); });
}

superlin_status superlin_system_dims(const superlin_system* sys, int32_t* out_n,
                                     int32_t* out_m) {
  if (!sys) return null_argument("sys");
  if (!out_n) return null_argument("out_n");
  if (!out_m) return null_argument("out_m");
  *out_n = sys->value.n;
  *out_m = sys->value.m;
  return SUPERLIN_OK;
}

superlin_status superlin_validate(const superlin_system* sys, double tol,
                                  double poly_tol, int32_t* out_pass,
                                  char** out_report_json) {
  if (!sys) return null_argument("sys");
  if (!out_pass) return null_argument("out_pass");
  return guarded([&] {
    const superlin::ValidationReport report =
        superlin::validate(sys->value, superlin::Tolerances{tol, poly_tol});
    CString text(nullptr, &std::free);
    if (out_report_json) text = dup_string(superlin::emit_validation_report(report));
    *out_pass = report.pass ? 1 : 0;
    if (out_report_json) *out_report_json = text.release();
  });
}

superlin_status superlin_classify(const superlin_system* sys, double tol,
                                  char** out_json) {
  if (!sys) return null_argument("sys");
  if (!out_json) return null_argument("out_json");
  return guarded([&] {
    const superlin::Classification c =
        superlin::classify(sys->value, superlin::Tolerances{tol, tol});
    *out_json = dup_string(superlin::emit_classification(c)).release();
  });
}

superlin_status superlin_min_visible(const superlin_system* sys, double tol,
                                     double poly_tol, int32_t* out_count) {
  if (!sys) return null_argument("sys");
  if (!out_count) return null_argument("out_count");
  return guarded([&] {
    *out_count =
        superlin::minimal_visible_count(sys->value, superlin::Tolerances{tol, poly_tol});
  });
}

superlin_status superlin_reduce(const superlin_system* sys, double tol,
                                double poly_tol, superlin_system** out_sys,
                                char** out_report_json) {
  if (!sys) return null_argument("sys");
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] {
    superlin::ReductionReport report;
    auto reduced = wrap(superlin::to_reduced_visible_form(
        sys->value, &report, superlin::Tolerances{tol, poly_tol}));
    CString text(nullptr, &std::free);
    if (out_report_json) text = dup_string(superlin::emit_reduction_report(report));
    *out_sys = reduced.release();
    if (out_report_json) *out_report_json = text.release();
  });
}

superlin_status superlin_realize_min_visible(const superlin_system* sys, double tol,
                                             double poly_tol,
                                             superlin_system** out_sys) {
  if (!sys) return null_argument("sys");
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] {
    *out_sys = wrap(superlin::realize_minimal_visible(sys->value,
                                                      superlin::Tolerances{tol, poly_tol}))
                   .release();
  });
}

superlin_status superlin_prune_unobservable(const superlin_system* sys, double tol,
                                            superlin_system** out_sys) {
  if (!sys) return null_argument("sys");
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] {
    *out_sys =
        wrap(superlin::prune_unobservable(sys->value, superlin::Tolerances{tol, tol}))
            .release();
  });
}

superlin_status superlin_conjugate(const superlin_system* sys, const char* p_json,
                                   double tol, superlin_system** out_sys) {
  if (!sys) return null_argument("sys");
  if (!p_json) return null_argument("p_json");
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] {
    const Eigen::MatrixXd P =
        superlin::parse_conjugation_matrix(p_json, sys->value.m);
    *out_sys =
        wrap(superlin::conjugate(sys->value, P, superlin::Tolerances{tol, tol}))
            .release();
  });
}

superlin_status superlin_shift(const superlin_system* sys, const char* rs_json,
                               superlin_system** out_sys) {
  if (!sys) return null_argument("sys");
  if (!rs_json) return null_argument("rs_json");
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] {
    const superlin::ShiftData rs =
        superlin::parse_shift(rs_json, sys->value.m, sys->value.n);
    *out_sys = wrap(superlin::shift_observables(sys->value, rs.R, rs.S)).release();
  });
}

superlin_status superlin_simulate(const superlin_system* sys, const char* x0_csv,
                                  const char* u_spec, double T, double h, double tol,
                                  double poly_tol, char** out_traj_csv,
                                  char** out_summary_json) {
  if (!sys) return null_argument("sys");
  if (!x0_csv) return null_argument("x0_csv");
  if (!u_spec) return null_argument("u_spec");
  if (!out_summary_json) return null_argument("out_summary_json");
  return guarded([&] {
    const Eigen::VectorXd x0 = superlin::parse_vector_csv(x0_csv);
    if (x0.size() != sys->value.n)
      superlin::fail(superlin::ErrorCode::Dimension,
                     "initial state has " + std::to_string(x0.size()) +
                         " entries, expected " + std::to_string(sys->value.n));
    const superlin::ControlSignal u = superlin::parse_control_spec(u_spec);
    const superlin::CosimResult result = superlin::cosimulate(
        sys->value, x0, u, T, h, superlin::Tolerances{tol, poly_tol});
    CString traj(nullptr, &std::free);
    if (out_traj_csv)
      traj = dup_string(superlin::trajectory_csv(result.nonlinear, &result.linear));
    CString summary = dup_string(superlin::emit_cosim_report(result.report));
    if (out_traj_csv) *out_traj_csv = traj.release();
    *out_summary_json = summary.release();
  });
}

superlin_status superlin_generate(int32_t n_x, int32_t n_y, int32_t m,
                                  int32_t deg_max, int32_t target_rank,
                                  int32_t scramble, uint64_t seed,
                                  superlin_system** out_sys,
                                  int32_t* out_true_min_visible) {
  if (!out_sys) return null_argument("out_sys");
  return guarded([&] {
    superlin::GeneratorSpec spec;
    spec.n_x = n_x;
    spec.n_y = n_y;
    spec.m = m;
    spec.deg_max = deg_max;
    spec.target_rank = target_rank;
    spec.scramble = scramble != 0;
    spec.seed = seed;
    superlin::GeneratedInstance inst = superlin::generate_instance(spec);
    auto handle = wrap(std::move(inst.system));
    if (out_true_min_visible) *out_true_min_visible = inst.true_minimal_visible;
    *out_sys = handle.release();
  });
}

}  // extern "C"
