#pragma once

// File formats: matrices as {"n", "re", "im"} JSON objects, the critical
// catalog as a JSON array, optimizer traces as JSON lines and verifier
// reports as a JSON array of {test, n, status, details}.

#include <iosfwd>
#include <string>
#include <vector>

#include "sunland/critical_catalog.hpp"
#include "sunland/matrix.hpp"
#include "sunland/optimizer.hpp"
#include "sunland/sun_geometry.hpp"
#include "sunland/verifier.hpp"

namespace sunland::io {

/// Shortest decimal text that reads back to exactly `x` (17 significant digits).
std::string format_real(double x);

/// Row-major JSON object {"n": n, "re": [[...]], "im": [[...]]}.
std::string matrix_to_json(const ComplexMatrix& m);

/// Parses the matrix format. Throws ParseError on malformed input.
ComplexMatrix matrix_from_json(const std::string& text);

void write_matrix(const std::string& path, const ComplexMatrix& m);
ComplexMatrix read_matrix(const std::string& path);

/// Reads a matrix file and admits it as a unitary / special unitary point.
/// The expected dimension is checked when n > 0. Invariant failures are
/// reported with their residuals.
UnitaryPoint load_unitary(const std::string& path, int n = 0);
SpecialUnitaryPoint load_special_unitary(const std::string& path, int n = 0);

/// JSON array of {kplus, mu, value, nature, is_continuum, z_re, z_im}.
std::string catalog_to_json(const std::vector<CriticalFamily>& catalog);

/// One {iter, value, grad_norm, step} line per iterate. A non-negative
/// `start` is prefixed as a "start" field for multi-start files.
void write_trace_jsonl(std::ostream& out, const OptimizeTrace& trace, int start = -1);

/// JSON array of {test, n, status, details}; status is "pass" or "fail".
std::string report_to_json(const verify::Report& report);

}  // namespace sunland::io
