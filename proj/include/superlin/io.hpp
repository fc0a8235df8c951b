#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "superlin/embedding.hpp"
#include "superlin/transform.hpp"
#include "superlin/verify.hpp"

namespace superlin {

/// Parses the JSON system format. Required fields: n, m, A, G, M, H,
/// observables; B, C, D, E default to zero. Shape mismatches raise
/// Error(Dimension), malformed JSON raises Error(Parse).
SuperLinearization parse_system(const std::string& text);

/// Canonical emission: fixed key order, 2-space indent, trailing newline,
/// terms in graded lexicographic order. parse -> emit is byte-stable on
/// canonical inputs.
std::string emit_system(const SuperLinearization& L);

std::string emit_validation_report(const ValidationReport& r);
std::string emit_classification(const Classification& c);
std::string emit_reduction_report(const ReductionReport& r);
std::string emit_cosim_report(const CosimReport& r);

/// Parses {"P": [[...], ...]} (square matrix) for conjugation.
Eigen::MatrixXd parse_conjugation_matrix(const std::string& text, int m);

struct ShiftData {
  Eigen::MatrixXd R;
  Eigen::VectorXd S;
};

/// Parses {"R": [[...], ...], "S": [...]} for observable shifts.
ShiftData parse_shift(const std::string& text, int m, int n);

/// Comma-separated reals, e.g. "1.5,0,-2".
Eigen::VectorXd parse_vector_csv(const std::string& text);

/// Control specs: "const:<v>" or "pwc:t0,v0;t1,v1;..." with t0 == 0 and
/// strictly increasing breakpoints.
ControlSignal parse_control_spec(const std::string& text);

/// CSV with header t,x1..xn (and z1..z{n+m} when the linear trajectory is
/// given) over the common prefix of the two trajectories.
std::string trajectory_csv(const Trajectory& nonlinear, const Trajectory* linear);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace superlin
